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

#ifndef POPS_MONTECARLO_HPP
#define POPS_MONTECARLO_HPP

#include "pops/channel.hpp"
#include "pops/lattice.hpp"

#include <cstdint>
#include <string>

namespace pops
{

enum class Alphabet
{
    gaussian, // unit-power circular complex Gaussian
    qpsk      // (+-1 +-j) / sqrt(2)
};

std::string to_string(Alphabet a);
Alphabet alphabet_from_string(const std::string &name); // throws InvalidArgument

struct McConfig
{
    long trials = 100000;
    // Symbols n in [-lattice_extent, lattice_extent] are transmitted on all Q
    // subcarriers. A negative value selects the smallest sufficient extent.
    int lattice_extent = -1;
    Alphabet alphabet = Alphabet::gaussian;
    int doppler_grid_size = 64; // quantile points per delay for separable channels
    std::uint64_t seed = 1;

    void validate() const;
};

struct McResult
{
    double sinr = 0.0;
    double standard_error = 0.0; // jackknife, of sinr
    double ps = 0.0, ps_se = 0.0;
    double pi = 0.0, pi_se = 0.0;
    double pn = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
    int lattice_extent = 0; // the extent actually simulated
};

// Smallest extent E such that no pulse outside [-E, E] reaches the receive support.
int required_lattice_extent(const Waveform &tx, const Waveform &rx, const LatticeConfig &cfg, const ChannelSpec &ch);

// Link-level simulation of the decision variable of symbol (0, 0). Each trial
// draws path gains and symbols, synthesizes the transmit signal, passes the
// (0, 0) term and the remaining terms through the channel separately, and
// correlates with the receive waveform. Powers are reported per unit transmit and
// receive energy, as in the SINR engine. Seeded per trial, so the result does not
// depend on the thread count.
McResult estimate_sinr(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg,
                       double snr, const McConfig &mc);

} // namespace pops

#endif
