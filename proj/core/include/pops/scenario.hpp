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

#ifndef POPS_SCENARIO_HPP
#define POPS_SCENARIO_HPP

#include "pops/analysis.hpp"
#include "pops/montecarlo.hpp"
#include "pops/upper_bound.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pops
{

struct SweepSettings
{
    std::vector<double> ft_values{1.125, 1.25, 1.5, 1.75, 2.0};
    std::vector<std::pair<int, int>> durations{{1, 1}};
    std::vector<double> bd_over_f{0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
    std::vector<int> cp_samples{8, 32};
    long max_delay = -1; // -1: one inverse subcarrier spacing (Q samples)
    std::vector<int> sync_cp_samples{16, 32};
    std::vector<double> offsets; // empty: unit-dependent default grid
    TimeUnit time_unit = TimeUnit::samples;
    FrequencyUnit freq_unit = FrequencyUnit::subcarriers;
    std::vector<double> optimize_at{0.01, 0.001};
    std::vector<double> evaluate_over{0.0005, 0.001, 0.002, 0.005, 0.01, 0.02};
};

// Parsed and validated scenario file. Entries keep the effective key/value text
// (file plus overrides) so the scenario can be hashed and written back.
struct Scenario
{
    std::string name = "scenario";
    double snr = std::numeric_limits<double>::infinity();
    LatticeConfig lattice;
    ChannelRecipe channel;
    PopsOptions pops;
    std::size_t bound_cap = default_kronecker_cap;
    int psd_oversample = 16;
    int psd_subcarriers = 64;
    std::string psd_waveform = "pops_tx";
    SweepSettings sweep;
    McConfig montecarlo;
    std::string montecarlo_waveform = "pops";
    std::filesystem::path output_dir = "pops_out";

    std::map<std::string, std::string> entries;

    // FNV-1a over the sorted effective entries except output.dir, as 16 hex digits.
    std::string hash() const;

    // Scenario text that parses back to the same entries, plus an optional
    // [provenance] section that the parser ignores.
    std::string to_ini(const std::vector<std::pair<std::string, std::string>> &provenance = {}) const;

    // Grid used by the synchronization sweeps when sweep.offsets is not set.
    std::vector<double> time_offsets() const;
    std::vector<double> frequency_offsets() const;
};

// Parses scenario text and applies "section.key=value" overrides; an empty value
// removes the key so its default applies. Unknown
// sections or keys and malformed values throw InvalidArgument naming the key.
Scenario parse_scenario(const std::string &text, const std::vector<std::string> &overrides = {});
Scenario load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides = {});

// "inf" (any case, optional sign) or a finite decimal number.
double parse_real(const std::string &key, const std::string &text);

} // namespace pops

#endif
