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

#include "checks.hpp"

#include "pops/analysis.hpp"
#include "pops/errors.hpp"
#include "pops/io.hpp"
#include "pops/kernel.hpp"
#include "pops/montecarlo.hpp"
#include "pops/scenario.hpp"
#include "pops/sinr.hpp"
#include "pops/upper_bound.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>

namespace
{

using namespace pops;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_numerical = 3;

struct Options
{
    std::string scenario;
    std::vector<std::string> overrides;
    std::string output_dir;
    int threads = 0;
    std::string sweep_kind;
    std::string tx_file;
    std::string rx_file;
};

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string db_text(double linear) { return format_double(to_db(linear)); }

// Shared state of one invocation: the scenario, where artifacts go and the
// provenance written next to each of them.
class Run
{
public:
    Run(std::string command, const Options &opts) : command_(std::move(command))
    {
        auto overrides = opts.overrides;
        if (!opts.output_dir.empty())
            overrides.push_back("output.dir=" + opts.output_dir);
        scenario_ = load_scenario(opts.scenario, overrides);
        hash_ = scenario_.hash();
        if (opts.threads > 0)
            setenv("POPS_THREADS", std::to_string(opts.threads).c_str(), 1);
    }

    const Scenario &scenario() const { return scenario_; }
    const std::string &hash() const { return hash_; }
    ChannelSpec channel() const { return scenario_.channel.realize(scenario_.lattice); }

    PopsResult optimize() const
    {
        const auto &s = scenario_;
        PopsResult r = run_pops(s.lattice, channel(), s.pops.make(s.lattice, s.snr));
        warn(r.warnings);
        return r;
    }

    // Writes an artifact and its metadata sidecar (<name>.meta.ini).
    void write(const std::string &name, const std::string &content,
               const std::vector<std::pair<std::string, std::string>> &extra = {}) const
    {
        const auto path = scenario_.output_dir / name;
        write_text_file(path, content);
        std::vector<std::pair<std::string, std::string>> prov = {{"scenario_hash", hash_},
                                                                 {"command", command_},
                                                                 {"artifact", name},
                                                                 {"version", POPS_VERSION},
                                                                 {"created", utc_timestamp()}};
        prov.insert(prov.end(), extra.begin(), extra.end());
        write_text_file(scenario_.output_dir / (name + ".meta.ini"), scenario_.to_ini(prov));
    }

    void summary(const std::string &metrics) const
    {
        std::printf("%s scenario=%s %s\n", command_.c_str(), hash_.c_str(), metrics.c_str());
    }

    static void warn(const std::vector<std::string> &warnings)
    {
        for (const auto &w : warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());
    }

private:
    std::string command_;
    Scenario scenario_;
    std::string hash_;
};

std::string report_csv(const SinrReport &r, const std::string &hash)
{
    return "# scenario " + hash + "\nps,pi,pn,sinr,sir,snr,sinr_db,sir_db\n" + format_double(r.ps) + "," +
           format_double(r.pi) + "," + format_double(r.pn) + "," + format_double(r.sinr) + "," +
           format_double(r.sir) + "," + format_double(r.snr) + "," + db_text(r.sinr) + "," + db_text(r.sir) + "\n";
}

int cmd_optimize(const Options &o)
{
    const Run run("optimize", o);
    const PopsResult r = run.optimize();
    run.write("optimize_result.json", pops_result_to_json(r, run.hash()));
    run.write("optimize_tx.csv", waveform_to_csv(r.tx_opt, run.hash()));
    run.write("optimize_rx.csv", waveform_to_csv(r.rx_opt, run.hash()));
    run.summary("sir_db=" + db_text(r.report.sir) + " sinr_db=" + db_text(r.report.sinr) +
                " converged=" + (r.converged ? "yes" : "no") + " rounds=" + std::to_string(r.iterations_used));
    return exit_ok;
}

int cmd_sinr(const Options &o)
{
    const Run run("sinr", o);
    const auto &s = run.scenario();
    LatticeConfig one = s.lattice;
    one.tx_symbols = one.rx_symbols = 1;
    const Waveform tx = o.tx_file.empty() ? make_conventional_tx(one) : read_waveform_csv(o.tx_file);
    const Waveform rx = o.rx_file.empty() ? make_conventional_rx(one) : read_waveform_csv(o.rx_file);
    const SinrReport r = sinr(tx, rx, run.channel(), s.lattice, s.snr);
    run.write("sinr.csv", report_csv(r, run.hash()),
              {{"tx", o.tx_file.empty() ? "conventional" : o.tx_file},
               {"rx", o.rx_file.empty() ? "conventional" : o.rx_file}});
    run.summary("sinr_db=" + db_text(r.sinr) + " sir_db=" + db_text(r.sir));
    return exit_ok;
}

int cmd_conventional(const Options &o)
{
    const Run run("conventional", o);
    const auto &s = run.scenario();
    const SinrReport r = sinr_conventional(s.lattice, run.channel(), s.snr);
    run.write("conventional.csv", report_csv(r, run.hash()));
    run.summary("sinr_db=" + db_text(r.sinr) + " sir_db=" + db_text(r.sir));
    return exit_ok;
}

int cmd_upperbound(const Options &o)
{
    const Run run("upperbound", o);
    const auto &s = run.scenario();
    const ChannelSpec ch = run.channel();
    const Waveform init = s.pops.init.make(s.lattice);
    const long rx_off = select_window(init, make_view(ch, s.lattice.sample_period), s.lattice.rx_length());
    const KroneckerSystem sys = build_kronecker_system(s.lattice, ch, init.offset(), rx_off, s.bound_cap);
    const double bound = upper_bound(sys, s.snr);
    run.write("upperbound.csv", "# scenario " + run.hash() +
                                    "\nbound,bound_db,active_dimension,full_dimension,tx_offset,rx_offset\n" +
                                    format_double(bound) + "," + db_text(bound) + "," + std::to_string(sys.size()) +
                                    "," + std::to_string(sys.full_size()) + "," + std::to_string(init.offset()) +
                                    "," + std::to_string(rx_off) + "\n");
    run.summary("bound_db=" + db_text(bound) + " dimension=" + std::to_string(sys.size()));
    return exit_ok;
}

int cmd_psd(const Options &o)
{
    const Run run("psd", o);
    const auto &s = run.scenario();
    LatticeConfig one = s.lattice;
    one.tx_symbols = one.rx_symbols = 1;
    Waveform w;
    if (s.psd_waveform == "conventional_tx")
        w = make_conventional_tx(one);
    else if (s.psd_waveform == "conventional_rx")
        w = make_conventional_rx(one);
    else
    {
        const PopsResult r = run.optimize();
        w = s.psd_waveform == "pops_tx" ? r.tx_opt : r.rx_opt;
    }
    const SweepResult single = psd(w, s.lattice, s.psd_oversample, 1);
    const double peak = oob_peak_db(single, 2.0), fraction = oob_power_fraction(single, 1.0);
    SweepResult table = single;
    table.series[0].first = "single_db";
    table.add_series("aggregate_db", psd(w, s.lattice, s.psd_oversample, s.psd_subcarriers).series[0].second);
    table.metadata.emplace_back("waveform", s.psd_waveform);
    run.write("psd.csv", sweep_to_csv(table, run.hash()), table.metadata);
    run.summary("oob_peak_2f_db=" + format_double(peak) + " oob_fraction=" + format_double(fraction));
    return exit_ok;
}

int cmd_sweep(const Options &o)
{
    const Run run("sweep", o);
    const auto &s = run.scenario();
    const auto &sw = s.sweep;
    const std::string &kind = o.sweep_kind;
    SweepResult r;
    if (kind == "ft")
        r = sweep_ft(s.lattice, sw.ft_values, sw.durations, s.channel, s.snr, s.pops);
    else if (kind == "doppler-delay")
        r = sweep_doppler_delay(s.lattice, s.channel.spread_product, sw.bd_over_f, sw.cp_samples, sw.max_delay,
                                s.channel.num_paths, s.channel.decay, s.snr, s.pops);
    else if (kind == "time-sync")
        r = sweep_time_sync(run.optimize(), s.lattice, run.channel(), s.time_offsets(), sw.time_unit,
                            sw.sync_cp_samples, s.snr);
    else if (kind == "freq-sync")
        r = sweep_freq_sync(run.optimize(), s.lattice, run.channel(), s.frequency_offsets(), sw.freq_unit,
                            sw.sync_cp_samples, s.snr);
    else if (kind == "mismatch")
        r = sweep_mismatch(s.lattice, sw.optimize_at, sw.evaluate_over, s.channel.num_paths, s.channel.decay, s.snr,
                           s.pops);
    else
        r = initialization_study(s.lattice, run.channel(), s.snr, standard_initializations(s.lattice), s.pops,
                                 s.bound_cap);
    Run::warn(r.warnings);
    auto meta = r.metadata;
    meta.emplace_back("warnings", std::to_string(r.warnings.size()));
    run.write("sweep_" + kind + ".csv", sweep_to_csv(r, run.hash()), meta);
    run.summary("kind=" + kind + " points=" + std::to_string(r.axis_values.size()) +
                " series=" + std::to_string(r.series.size()) + " warnings=" + std::to_string(r.warnings.size()));
    return exit_ok;
}

int cmd_montecarlo(const Options &o)
{
    const Run run("montecarlo", o);
    const auto &s = run.scenario();
    const ChannelSpec ch = run.channel();
    Waveform tx, rx;
    LatticeConfig cfg = s.lattice;
    if (s.montecarlo_waveform == "conventional")
    {
        cfg.tx_symbols = cfg.rx_symbols = 1;
        tx = make_conventional_tx(cfg);
        rx = make_conventional_rx(cfg);
    }
    else
    {
        const PopsResult r = run.optimize();
        tx = r.tx_opt;
        rx = r.rx_opt;
    }
    const McResult est = estimate_sinr(tx, rx, ch, cfg, s.snr, s.montecarlo);
    const double analytic = sinr(tx, rx, ch, cfg, s.snr).sinr;
    run.write("montecarlo.csv", mc_to_csv(est, run.hash()),
              {{"waveform", s.montecarlo_waveform}, {"analytic_sinr", format_double(analytic)}});
    run.summary("sinr_db=" + db_text(est.sinr) + " standard_error=" + format_double(est.standard_error) +
                " analytic_db=" + db_text(analytic));
    return exit_ok;
}

int cmd_validate(const Options &o)
{
    const Run run("validate", o);
    const auto checks = tools::run_checks(run.scenario());
    std::string csv = "# scenario " + run.hash() + "\ncheck,passed,value,reference,tolerance\n";
    int failed = 0;
    for (const auto &c : checks)
    {
        std::fprintf(stderr, "%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        csv += c.name + "," + (c.passed ? "1" : "0") + "," + format_double(c.value) + "," +
               format_double(c.reference) + "," + format_double(c.tolerance) + "\n";
        failed += c.passed ? 0 : 1;
    }
    run.write("validate.csv", csv);
    run.summary("passed=" + std::to_string(checks.size() - std::size_t(failed)) + " failed=" + std::to_string(failed));
    return failed == 0 ? exit_ok : exit_numerical;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"pops: ping-pong optimized pulse shaping for multicarrier waveforms"};
    app.set_version_flag("--version", POPS_VERSION);
    app.require_subcommand(1);
    Options opts;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("scenario", opts.scenario, "Scenario file (INI)")->required()->check(CLI::ExistingFile);
        sub->add_option("--set", opts.overrides, "Override a scenario key: section.key=value");
        sub->add_option("-o,--output-dir", opts.output_dir, "Directory for artifacts (overrides output.dir)");
        sub->add_option("--threads", opts.threads, "Worker threads (sets POPS_THREADS)")->check(CLI::PositiveNumber);
    };

    std::vector<std::pair<CLI::App *, int (*)(const Options &)>> commands;
    auto add = [&](const char *name, const char *help, int (*fn)(const Options &)) {
        CLI::App *sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, fn);
        return sub;
    };
    add_common(add("optimize", "Run the ping-pong optimization", cmd_optimize));
    CLI::App *sinr_cmd = add("sinr", "Evaluate the SINR of a waveform pair (conventional pulses by default)", cmd_sinr);
    add_common(sinr_cmd);
    sinr_cmd->add_option("--tx", opts.tx_file, "Transmit waveform CSV")->check(CLI::ExistingFile);
    sinr_cmd->add_option("--rx", opts.rx_file, "Receive waveform CSV")->check(CLI::ExistingFile);
    add_common(add("conventional", "Closed-form SINR of cyclic-prefix OFDM", cmd_conventional));
    add_common(add("upperbound", "Kronecker relaxation upper bound", cmd_upperbound));
    add_common(add("psd", "Power spectral density of a waveform", cmd_psd));
    CLI::App *sweep_cmd = add("sweep", "Parameter sweeps", cmd_sweep);
    sweep_cmd->add_option("kind", opts.sweep_kind, "Sweep kind")
        ->required()
        ->check(CLI::IsMember({"ft", "doppler-delay", "time-sync", "freq-sync", "mismatch", "init-study"}));
    add_common(sweep_cmd);
    add_common(add("montecarlo", "Monte-Carlo SINR estimate", cmd_montecarlo));
    add_common(add("validate", "Run the cross-check suite on the scenario", cmd_validate));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_invalid;
    }

    try
    {
        for (const auto &[sub, fn] : commands)
            if (sub->parsed())
                return fn(opts);
    }
    catch (const InvalidArgument &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_invalid;
    }
    catch (const NumericalError &e)
    {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return exit_numerical;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_ok;
}
