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

#ifndef POPS_IO_HPP
#define POPS_IO_HPP

#include "pops/analysis.hpp"
#include "pops/montecarlo.hpp"
#include "pops/optimizer.hpp"

#include <filesystem>
#include <string>

namespace pops
{

// Full-precision text form of a double: %.17g, or inf / -inf / nan.
std::string format_double(double v);

// Header row (axis name, then series names) followed by one row per axis value.
// When scenario_hash is nonempty a "# scenario <hash>" line precedes the header.
std::string sweep_to_csv(const SweepResult &r, const std::string &scenario_hash = {});

// Columns: index (global sample index), re, im.
std::string waveform_to_csv(const Waveform &w, const std::string &scenario_hash = {});

// Reads the waveform_to_csv layout back. Comment lines and the header are
// skipped; indices must be consecutive. Throws InvalidArgument naming the file.
Waveform read_waveform_csv(const std::filesystem::path &path);

std::string mc_to_csv(const McResult &r, const std::string &scenario_hash = {});

// JSON record of an optimization run: flags, counters, final report, the SINR
// trajectory and waveform fingerprints. Infinite values are written as "inf".
std::string pops_result_to_json(const PopsResult &r, const std::string &scenario_hash = {});

// Writes the file, creating parent directories. Throws std::runtime_error.
void write_text_file(const std::filesystem::path &path, const std::string &content);

} // namespace pops

#endif
