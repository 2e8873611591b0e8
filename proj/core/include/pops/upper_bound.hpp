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

#ifndef POPS_UPPER_BOUND_HPP
#define POPS_UPPER_BOUND_HPP

#include "pops/channel.hpp"
#include "pops/kernel.hpp"
#include "pops/lattice.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pops
{

// Quadratic forms in the lifted variable x = conj(tx) (x) rx. For every pair of
// waveforms supported on the two windows,
//   x^H useful x = ps * |tx|^2 |rx|^2   and   x^H interference x = pi * |tx|^2 |rx|^2.
// Only entries x(t, r) with r - t congruent to a path delay modulo N enter
// either form, so the matrices are stored on those index pairs alone.
struct KroneckerSystem
{
    CMatrix useful;
    CMatrix interference;
    std::vector<std::pair<long, long>> pairs; // (transmit index, receive index), global axis
    long tx_offset = 0;
    long tx_length = 0;
    long rx_offset = 0;
    long rx_length = 0;

    long size() const { return long(pairs.size()); }
    long full_size() const { return tx_length * rx_length; }
};

inline constexpr std::size_t default_kronecker_cap = 4096;

// Windows of length Dphi*N and Dpsi*N starting at the given offsets. Throws
// InvalidArgument when the number of active index pairs exceeds the cap.
KroneckerSystem build_kronecker_system(const LatticeConfig &cfg, const ChannelSpec &ch, long tx_offset,
                                       long rx_offset, std::size_t cap = default_kronecker_cap);

CVector kronecker_vector(const KroneckerSystem &sys, const Waveform &tx, const Waveform &rx);

// x^H U x / (x^H I x + |x|^2 / snr) for the pair restricted to the windows.
double kronecker_quotient(const KroneckerSystem &sys, const Waveform &tx, const Waveform &rx, double snr);

// Largest generalized eigenvalue of (useful, interference + I/snr): no waveform
// pair on these windows reaches a higher SINR. With snr = inf and a singular
// interference form the bound is infinite; that case throws NumericalError.
double upper_bound(const KroneckerSystem &sys, double snr);

} // namespace pops

#endif
