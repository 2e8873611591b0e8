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

#ifndef POPS_OPTIMIZER_HPP
#define POPS_OPTIMIZER_HPP

#include "pops/channel.hpp"
#include "pops/kernel.hpp"
#include "pops/lattice.hpp"
#include "pops/sinr.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pops
{

enum class Solver
{
    rayleigh,  // dominant eigenvector of KIN^{-1} KS
    gep,       // generalized Hermitian eigenproblem (KS, KIN)
    whitening  // eigendecomposition of KIN, then a standard problem
};

std::string to_string(Solver s);
Solver solver_from_string(const std::string &name); // throws InvalidArgument

// Maximizer of x^H KS x / x^H KIN x.
struct HalfStepResult
{
    CVector vec;  // unit norm, largest-magnitude entry real positive
    double sinr = 0.0;
    std::vector<std::string> warnings;
};

// warm_start, when given, seeds the iterative solver; the answer does not depend on it
// beyond round-off.
HalfStepResult half_step_rayleigh(const CMatrix &ks, const CMatrix &kin, const CVector *warm_start = nullptr);
HalfStepResult half_step_gep(const CMatrix &ks, const CMatrix &kin);
HalfStepResult half_step_whitening(const CMatrix &ks, const CMatrix &kin);
HalfStepResult half_step(Solver s, const CMatrix &ks, const CMatrix &kin, const CVector *warm_start = nullptr);

enum class Acceleration
{
    none,   // plain alternation
    anderson // mixing of recent transmit iterates, kept only when it does not lower the SINR
};

std::string to_string(Acceleration a);
Acceleration acceleration_from_string(const std::string &name); // throws InvalidArgument

struct PopsConfig
{
    Solver approach = Solver::rayleigh;
    double epsilon = 1e-10;
    int max_iterations = 200;
    double snr = std::numeric_limits<double>::infinity();
    Waveform init; // transmit side, length Dphi * N
    // Solve the generalized problem against KI alone (no noise shift), as in
    // the textbook listing of the Lagrangian variant.
    bool paper_literal_gep = false;
    Acceleration acceleration = Acceleration::anderson;

    void validate(const LatticeConfig &cfg) const;
};

enum class HalfStepKind
{
    ping, // receive waveform update
    pong  // transmit waveform update
};

struct TrajectoryPoint
{
    int iteration = 0;
    HalfStepKind half = HalfStepKind::ping;
    double sinr = 0.0;
};

struct PopsResult
{
    Waveform tx_opt;
    Waveform rx_opt;
    std::vector<TrajectoryPoint> sinr_trajectory;
    bool converged = false;
    int iterations_used = 0; // ping-pong rounds, including rejected extrapolation trials
    int rejected_extrapolations = 0;
    double final_change = std::numeric_limits<double>::infinity();
    SinrReport report; // evaluated by the SINR engine for (tx_opt, rx_opt)
    std::vector<std::string> warnings;
};

// Alternating maximization. The transmit window is the support of the init
// waveform; the receive window is chosen once from the init and kept fixed.
PopsResult run_pops(const LatticeConfig &cfg, const ChannelSpec &ch, const PopsConfig &pcfg);

// Transmit initializer used when none is configured: the cyclic-prefix pulse for
// one-symbol supports, otherwise the isotropic Gaussian.
Waveform default_init(const LatticeConfig &cfg);

} // namespace pops

#endif
