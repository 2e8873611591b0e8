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

#ifndef POPS_KERNEL_HPP
#define POPS_KERNEL_HPP

#include "pops/channel.hpp"
#include "pops/lattice.hpp"

#include <Eigen/Dense>

#include <string>

namespace pops
{

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class KernelKind
{
    useful,
    interference,
    interference_plus_noise
};

enum class Orientation
{
    forward, // S(p, nu)
    reversed // S(-p, -nu)
};

// Hermitian PSD matrix whose quadratic form in the opposite waveform gives a
// power. Row/column i corresponds to global sample index offset + i.
struct KernelMatrix
{
    CMatrix data;
    long offset = 0;
    KernelKind kind = KernelKind::useful;
    std::string built_from; // fingerprint of the generating waveform
    Orientation sign = Orientation::forward;

    long size() const { return long(data.rows()); }
};

struct KernelPair
{
    KernelMatrix useful;
    KernelMatrix interference;
};

// Start of the length-out_len window that captures the most useful-kernel
// trace energy for waveform w. Earliest window wins near-ties.
long select_window(const Waveform &w, const ChannelView &ch, long out_len);

// Useful kernel over [out_offset, out_offset + out_len).
KernelMatrix build_ks(const Waveform &w, const ChannelView &ch, long out_offset, long out_len);

// Interference kernel: all lattice translates (m,n) != (0,0), the subcarrier
// sum folded into a mod-Q comb.
KernelMatrix build_ki(const Waveform &w, const ChannelView &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len);

// Both kernels at once; shares the useful part.
KernelPair build_kernels(const Waveform &w, const ChannelView &ch, const LatticeConfig &cfg, long out_offset,
                         long out_len);

// Same kernels from a channel specification.
KernelMatrix build_ks(const Waveform &w, const ChannelSpec &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len);
KernelMatrix build_ki(const Waveform &w, const ChannelSpec &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len);

// KI + (w_other_norm_sq / snr) I. snr may be +inf.
KernelMatrix build_kin(const KernelMatrix &ki, double w_other_norm_sq, double snr);

// x^H K x for a waveform placed on the global axis (zero outside the window).
double quadratic_form(const KernelMatrix &k, const Waveform &x);

// Samples of x in the kernel window as a column vector.
CVector window_vector(const KernelMatrix &k, const Waveform &x);

} // namespace pops

#endif
