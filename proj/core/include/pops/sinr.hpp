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

#ifndef POPS_SINR_HPP
#define POPS_SINR_HPP

#include "pops/channel.hpp"
#include "pops/kernel.hpp"
#include "pops/lattice.hpp"

#include <utility>
#include <vector>

namespace pops
{

// Power breakdown with unit symbol energy. Noise power is 1/snr.
struct SinrReport
{
    double ps = 0.0;
    double pi = 0.0;
    double pn = 0.0;
    double sinr = 0.0;
    double sir = 0.0;
    double snr = 0.0;
};

// Interference below this fraction of the total received power is treated as
// exactly zero (it is assembly round-off, not signal).
inline constexpr double interference_floor = 1e-12;

SinrReport make_report(double ps, double pi, double snr);

// Powers of the decision variable for the pair (tx, rx). Invariant to scaling
// of either waveform.
SinrReport sinr(const Waveform &tx, const Waveform &rx, const ChannelView &ch, const LatticeConfig &cfg, double snr);
SinrReport sinr(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg, double snr);

// Same quantity with the transmit waveform as the quadratic-form variable:
// the kernels of rx are built under the reversed scattering function.
SinrReport sinr_role_swapped(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg,
                             double snr);

// Same quantity for the time-reversed pair used the other way round.
SinrReport sinr_time_reversed(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg,
                              double snr);

// Closed form for the cyclic-prefix pulses. Each path contributes over the
// min(Q, N - delay) samples where its delayed prefix still covers the receive window.
SinrReport sinr_conventional(const LatticeConfig &cfg, const ChannelSpec &ch, double snr);

// Gram matrix of translated receive pulses: entry (i, j) = <rx_{k_i l_i}, rx_{k_j l_j}>
// with positions given as (subcarrier, symbol).
CMatrix noise_correlation(const Waveform &rx, const LatticeConfig &cfg,
                          const std::vector<std::pair<long, long>> &positions);

} // namespace pops

#endif
