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

#include "pops/io.hpp"

#include "pops/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pops
{

namespace
{

nlohmann::ordered_json json_real(double v)
{
    if (std::isfinite(v))
        return v;
    return format_double(v);
}

std::string hash_line(const std::string &h) { return h.empty() ? std::string{} : "# scenario " + h + "\n"; }

} // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_to_csv(const SweepResult &r, const std::string &scenario_hash)
{
    r.validate();
    std::string out = hash_line(scenario_hash) + r.axis_name;
    for (const auto &[name, values] : r.series)
        out += "," + name;
    out += "\n";
    for (std::size_t i = 0; i < r.axis_values.size(); ++i)
    {
        out += format_double(r.axis_values[i]);
        for (const auto &[name, values] : r.series)
            out += "," + format_double(values[i]);
        out += "\n";
    }
    return out;
}

std::string waveform_to_csv(const Waveform &w, const std::string &scenario_hash)
{
    std::string out = hash_line(scenario_hash) + "index,re,im\n";
    for (long i = 0; i < w.size(); ++i)
    {
        const cplx s = w.samples()[std::size_t(i)];
        out += std::to_string(w.offset() + i) + "," + format_double(s.real()) + "," + format_double(s.imag()) + "\n";
    }
    return out;
}

Waveform read_waveform_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot read waveform file '" + path.string() + "'");
    std::vector<cplx> samples;
    long first = 0, expected = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0)
            continue;
        std::istringstream row(line);
        std::string a, b, c;
        std::getline(row, a, ',');
        std::getline(row, b, ',');
        std::getline(row, c, ',');
        try
        {
            const long idx = std::stol(a);
            const double re = std::stod(b), im = std::stod(c);
            if (samples.empty())
                first = expected = idx;
            if (idx != expected)
                throw InvalidArgument("nonconsecutive index");
            samples.emplace_back(re, im);
            ++expected;
        }
        catch (const std::exception &e)
        {
            throw InvalidArgument(path.string() + ":" + std::to_string(line_no) + ": malformed waveform row '" + line +
                                  "'");
        }
    }
    if (samples.empty())
        throw InvalidArgument(path.string() + ": no waveform samples");
    return Waveform(std::move(samples), first);
}

std::string mc_to_csv(const McResult &r, const std::string &scenario_hash)
{
    return hash_line(scenario_hash) + "sinr,standard_error,ps,ps_se,pi,pi_se,pn,trials,seed,lattice_extent\n" +
           format_double(r.sinr) + "," + format_double(r.standard_error) + "," + format_double(r.ps) + "," +
           format_double(r.ps_se) + "," + format_double(r.pi) + "," + format_double(r.pi_se) + "," +
           format_double(r.pn) + "," + std::to_string(r.trials) + "," + std::to_string(r.seed) + "," +
           std::to_string(r.lattice_extent) + "\n";
}

std::string pops_result_to_json(const PopsResult &r, const std::string &scenario_hash)
{
    nlohmann::ordered_json j;
    if (!scenario_hash.empty())
        j["scenario_hash"] = scenario_hash;
    j["converged"] = r.converged;
    j["iterations_used"] = r.iterations_used;
    j["rejected_extrapolations"] = r.rejected_extrapolations;
    j["final_change"] = json_real(r.final_change);
    j["report"] = {{"ps", json_real(r.report.ps)},   {"pi", json_real(r.report.pi)},
                   {"pn", json_real(r.report.pn)},   {"sinr", json_real(r.report.sinr)},
                   {"sir", json_real(r.report.sir)}, {"snr", json_real(r.report.snr)},
                   {"sinr_db", json_real(to_db(r.report.sinr))}};
    auto traj = nlohmann::ordered_json::array();
    for (const auto &p : r.sinr_trajectory)
        traj.push_back({{"iteration", p.iteration},
                        {"half", p.half == HalfStepKind::ping ? "ping" : "pong"},
                        {"sinr", json_real(p.sinr)}});
    j["trajectory"] = std::move(traj);
    j["tx"] = {{"offset", r.tx_opt.offset()}, {"length", r.tx_opt.size()}, {"fingerprint", fingerprint(r.tx_opt)}};
    j["rx"] = {{"offset", r.rx_opt.offset()}, {"length", r.rx_opt.size()}, {"fingerprint", fingerprint(r.rx_opt)}};
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path &path, const std::string &content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace pops
