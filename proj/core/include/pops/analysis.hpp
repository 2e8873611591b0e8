// SPDX-License-Identifier: Apache-2.0
//
// pops: ping-pong optimized pulse shaping for multicarrier waveforms
// Copyright (C) 2026 The pops authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POPS_ANALYSIS_HPP
#define POPS_ANALYSIS_HPP

#include "pops/channel.hpp"
#include "pops/lattice.hpp"
#include "pops/optimizer.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace pops
{

// Tabular sweep output: one axis column and any number of named series.
struct SweepResult
{
    std::string name;
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> warnings;

    // Throws InvalidArgument if a series length differs from the axis length.
    void validate() const;
    const std::vector<double> &column(const std::string &series_name) const; // throws InvalidArgument
    void add_series(std::string series_name, std::vector<double> values);
};

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

// How the transmit initializer of a run is built for a given lattice.
struct InitSpec
{
    enum class Kind
    {
        automatic, // default_init
        conventional,
        hermite,
        gaussian,
        rrc
    };
    Kind kind = Kind::automatic;
    std::vector<double> hermite_coefficients{1.0};
    double gaussian_mean = -1.0;  // samples from the support start; negative means the midpoint
    double gaussian_sigma = -1.0; // samples; negative means the isotropic width
    double rrc_rolloff = 0.5;

    Waveform make(const LatticeConfig &cfg) const;
    std::string describe() const;
};

InitSpec::Kind init_kind_from_string(const std::string &name); // throws InvalidArgument
std::string to_string(InitSpec::Kind kind);

struct PopsOptions
{
    Solver approach = Solver::rayleigh;
    double epsilon = 1e-10;
    int max_iterations = 200;
    Acceleration acceleration = Acceleration::anderson;
    bool paper_literal_gep = false;
    InitSpec init;

    PopsConfig make(const LatticeConfig &cfg, double snr) const;
};

// Channel family used by sweeps that change the lattice: either a fixed channel
// or a spread product split by make_separable_balanced.
struct ChannelRecipe
{
    bool balanced = true;
    double spread_product = 0.01;
    int num_paths = 8;
    double decay = 0.5;
    ChannelSpec fixed = ideal_channel();

    ChannelSpec realize(const LatticeConfig &cfg) const;
    std::string describe() const;
};

// Normalized PSD of a waveform in dB (0 dB peak), on oversample * length points
// rounded up to a multiple of Q. The axis is the frequency in subcarrier
// spacings, centered on zero. With n_subcarriers > 1 the single-carrier PSD is
// summed over that many adjacent subcarriers before normalization.
SweepResult psd(const Waveform &w, const LatticeConfig &cfg, int oversample = 16, int n_subcarriers = 1);

// Largest PSD value at |f| >= min_offset subcarrier spacings.
double oob_peak_db(const SweepResult &spectrum, double min_offset);
// Fraction of the spectral power at |f| > beyond subcarrier spacings.
double oob_power_fraction(const SweepResult &spectrum, double beyond);

// SIR (or SINR at finite snr) in dB against FT = N/Q for each (Dphi, Dpsi) pair,
// plus the conventional closed form. FT values that are not k/Q produce NaN rows
// and a warning.
SweepResult sweep_ft(const LatticeConfig &base, const std::vector<double> &ft_values,
                     const std::vector<std::pair<int, int>> &durations, const ChannelRecipe &channel, double snr,
                     const PopsOptions &opts);

// Splits a fixed Bd*Tm between Doppler and delay. The axis is Bd/F; the delay
// spread is spread_product * Q / (Bd/F) samples, rounded and capped at
// max_delay_samples (the Bd = 0 point uses the cap). One POPS and one
// conventional series per CP length, on lattices N = Q + CP.
SweepResult sweep_doppler_delay(const LatticeConfig &base, double spread_product, const std::vector<double> &bd_over_f,
                                const std::vector<int> &cp_samples, long max_delay_samples, int num_paths,
                                double decay, double snr, const PopsOptions &opts);

enum class TimeUnit
{
    samples,
    symbols // fractions of T = N * Ts, rounded to whole samples
};
enum class FrequencyUnit
{
    subcarriers, // fractions of F
    hertz
};

// Receive waveform delayed (or modulated) without re-optimization, next to
// conventional pulses on lattices with the listed CP lengths.
SweepResult sweep_time_sync(const PopsResult &result, const LatticeConfig &cfg, const ChannelSpec &ch,
                            const std::vector<double> &offsets, TimeUnit unit, const std::vector<int> &cp_samples,
                            double snr);
SweepResult sweep_freq_sync(const PopsResult &result, const LatticeConfig &cfg, const ChannelSpec &ch,
                            const std::vector<double> &offsets, FrequencyUnit unit, const std::vector<int> &cp_samples,
                            double snr);

// Optimizes once per optimize_at product, then evaluates each fixed pair over
// the evaluation grid (balanced channels with the given K and b).
SweepResult sweep_mismatch(const LatticeConfig &cfg, const std::vector<double> &optimize_at,
                           const std::vector<double> &evaluate_over, int num_paths, double decay, double snr,
                           const PopsOptions &opts);

struct NamedInit
{
    std::string name;
    Waveform waveform;
};

// Hermite combinations, Gaussians of several positions and widths, and RRC pulses.
std::vector<NamedInit> standard_initializations(const LatticeConfig &cfg);

// One row per initializer: final SINR, the Kronecker bound on that run's windows
// (NaN when the lifted dimension exceeds bound_cap or the bound is unbounded),
// the conventional closed form, convergence flag and rounds used.
SweepResult initialization_study(const LatticeConfig &cfg, const ChannelSpec &ch, double snr,
                                 const std::vector<NamedInit> &inits, const PopsOptions &opts,
                                 std::size_t bound_cap = 4096);

} // namespace pops

#endif
