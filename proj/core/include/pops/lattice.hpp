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

#ifndef POPS_LATTICE_HPP
#define POPS_LATTICE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pops
{

using cplx = std::complex<double>;

// Time-frequency lattice. A symbol lasts symbol_len samples (T = N*Ts), the
// inverse subcarrier spacing is num_subcarriers samples (1/F = Q*Ts), and the
// number of subcarriers equals Q. Waveform supports are whole symbol periods.
struct LatticeConfig
{
    int symbol_len = 0;        // N
    int num_subcarriers = 0;   // Q
    double sample_period = 1.0; // Ts in seconds
    int tx_symbols = 1;        // transmit support, in symbol periods
    int rx_symbols = 1;        // receive support, in symbol periods

    // Throws InvalidArgument unless N >= Q >= 1, Ts > 0 and both durations >= 1.
    void validate() const;

    double ft() const { return double(symbol_len) / double(num_subcarriers); }
    double density() const { return double(num_subcarriers) / double(symbol_len); }
    int guard_len() const { return symbol_len - num_subcarriers; }
    long tx_length() const { return long(tx_symbols) * symbol_len; }
    long rx_length() const { return long(rx_symbols) * symbol_len; }
};

// Finite-support discrete-time waveform. Sample i sits at global index
// offset + i; everything outside the support is zero.
class Waveform
{
public:
    Waveform() = default;
    Waveform(std::vector<cplx> samples, long offset);

    std::span<const cplx> samples() const { return samples_; }
    long offset() const { return offset_; }
    long size() const { return long(samples_.size()); }
    long end() const { return offset_ + size(); } // one past the last sample
    bool empty() const { return samples_.empty(); }

    // Sample at a global index, zero outside the support.
    cplx at(long index) const
    {
        const long i = index - offset_;
        return (i >= 0 && i < size()) ? samples_[std::size_t(i)] : cplx{};
    }

    double norm_sq() const;
    double norm() const;

    bool operator==(const Waveform &other) const = default;

private:
    std::vector<cplx> samples_;
    long offset_ = 0;
};

// <a, b> = a^H b on the global axis.
cplx inner(const Waveform &a, const Waveform &b);

// Samples of w on [offset, offset + length), zero padded.
std::vector<cplx> restrict_to(const Waveform &w, long offset, long length);

// sigma_p: delays the waveform by p samples.
Waveform shift(const Waveform &w, long p);

// Multiplies the sample at global index q by exp(j*2*pi*m*q/Q).
Waveform modulate(const Waveform &w, long subcarrier, int num_subcarriers);

// Per-sample phase ramp exp(j*2*pi*df*q/Q) with df in units of the subcarrier spacing.
Waveform modulate_fractional(const Waveform &w, double df, int num_subcarriers);

// Temporal inversion: sample at q moves to -q.
Waveform time_reverse(const Waveform &w);

// Lattice translate: modulate(shift(w, n*N), m).
Waveform lattice_pulse(const Waveform &w, long subcarrier, long symbol, const LatticeConfig &cfg);

Waveform scaled(const Waveform &w, cplx factor);

// Unit norm, then rotated so the largest-magnitude sample is real positive.
Waveform normalize_phase_fixed(const Waveform &w);

// min over theta of ||a - exp(j theta) b|| on the global axis.
double aligned_distance(const Waveform &a, const Waveform &b);

// Short stable fingerprint of the samples and offset (hex).
std::string fingerprint(const Waveform &w);

// Conventional CP-OFDM pulses: 1/sqrt(N) on [-(N-Q), Q-1] and 1/sqrt(Q) on [0, Q-1].
Waveform make_conventional_tx(const LatticeConfig &cfg);
Waveform make_conventional_rx(const LatticeConfig &cfg);

// Dilation factor of the Hermite initializers: t = (q - center) * scale.
// The h0 Gaussian then has equal normalized time and frequency spread on the lattice.
double hermite_isotropic_scale(const LatticeConfig &cfg);

// Unit-norm combination of the first Hermite functions (at most 8 coefficients),
// sampled on [0, tx_length) around the support midpoint.
Waveform make_hermite_init(const LatticeConfig &cfg, std::span<const double> coefficients);
Waveform make_hermite_init(const LatticeConfig &cfg, std::span<const double> coefficients, double scale);

// Unit-norm Gaussian; mean measured in samples from the start of the support.
Waveform make_gaussian_init(const LatticeConfig &cfg, double mean_sample, double sigma_samples);

// Unit-norm root-raised cosine with the given rolloff, centered on the support.
// The symbol period defaults to Q samples (one inverse subcarrier spacing).
Waveform make_rrc_init(const LatticeConfig &cfg, double rolloff, double symbol_period_samples = 0.0);

} // namespace pops

#endif
