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

#ifndef POPS_TOOLS_CHECKS_HPP
#define POPS_TOOLS_CHECKS_HPP

#include "pops/scenario.hpp"

#include <string>
#include <vector>

namespace pops::tools
{

struct CheckOutcome
{
    std::string name;
    bool passed = false;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

// Cross-checks on the scenario's lattice and channel: closed form against the
// kernel engine, the two duality identities, solver agreement on one half-step
// and a reduced Monte-Carlo run.
std::vector<CheckOutcome> run_checks(const Scenario &sc);

} // namespace pops::tools

#endif
