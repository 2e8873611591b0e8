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

#ifndef POPS_CHANNEL_HPP
#define POPS_CHANNEL_HPP

#include "pops/lattice.hpp"

#include <string>
#include <variant>
#include <vector>

namespace pops
{

// One discrete propagation path of the scattering function.
struct Path
{
    long delay = 0;          // samples, >= 0
    double doppler_hz = 0.0; // Hz
    double power = 0.0;      // mean power, >= 0
};

// Explicit path list. Powers sum to one, delays are nonnegative and nondecreasing.
struct PathList
{
    std::vector<Path> paths;

    void validate() const; // throws InvalidArgument
    long max_delay() const;
};

// Separable model: truncated exponential power profile times a Jakes Doppler density.
struct SeparableChannel
{
    int num_paths = 1;           // K
    double decay = 0.5;          // b, in (0,1)
    std::vector<long> delays;    // p_0 .. p_{K-1}
    double doppler_spread_hz = 0.0;
    double sample_period = 1.0;  // Ts

    void validate() const;
    double normalized_doppler() const { return doppler_spread_hz * sample_period; } // Bd*Ts
    long max_delay() const { return delays.empty() ? 0 : delays.back(); }
    // Bd*Tm with Tm taken as the largest delay.
    double spread_product() const { return normalized_doppler() * double(max_delay()); }
};

using ChannelSpec = std::variant<PathList, SeparableChannel>;

// pi_k = (1-b) b^k / (1-b^K).
std::vector<double> powers(const SeparableChannel &ch);

// J0(pi*Bd*Ts*lag), the autocorrelation of the Jakes density.
double doppler_autocorrelation(const SeparableChannel &ch, long lag);

// Discretizes the Doppler density into G equiprobable quantile points per delay.
PathList to_pathlist(const SeparableChannel &ch, int doppler_grid_size);

// K paths at rounded equally spaced delays 0..delay_spread_samples, Doppler spread
// given as Bd*Ts. When the span cannot host K distinct integer delays the path
// count is reduced to delay_spread_samples + 1.
SeparableChannel make_separable(long delay_spread_samples, double normalized_doppler, int num_paths, double decay,
                                double sample_period = 1.0);

// Splits a spread product Bd*Tm between delay and Doppler so that both are the
// same fraction of the lattice: Tm = round(sqrt(product) * Q) samples.
SeparableChannel make_separable_balanced(const LatticeConfig &cfg, double spread_product, int num_paths, double decay);

// Single static path with unit power at delay 0.
PathList ideal_channel();

long max_delay(const ChannelSpec &ch);
void validate(const ChannelSpec &ch);
std::string describe(const ChannelSpec &ch);

// Flattened per-path description used by the kernel and bound builders.
// rho_k(r) is either a complex exponential at the path's normalized Doppler or
// the common real J0 autocorrelation.
struct ChannelView
{
    struct Term
    {
        long delay;
        double power;
        double doppler_cycles; // nu_k * Ts, cycles per sample
    };
    std::vector<Term> terms;
    bool bessel = false;
    double bessel_arg = 0.0; // pi * Bd * Ts
    bool reversed_orientation = false;

    long min_delay() const;
    long max_delay() const;
    cplx rho(std::size_t term, long lag) const;

    // Opposite orientation S(-p,-nu): delays negated, correlations conjugated.
    ChannelView reversed() const;
};

// Ts is used for path lists (Doppler in Hz); separable channels carry their own.
ChannelView make_view(const ChannelSpec &ch, double sample_period);

} // namespace pops

#endif
