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

#include "pops/analysis.hpp"

#include "pops/errors.hpp"
#include "pops/parallel.hpp"
#include "pops/sinr.hpp"
#include "pops/upper_bound.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>

namespace pops
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string snr_text(double snr) { return std::isinf(snr) ? "inf" : num(snr); }

// FFTW planning is not thread-safe.
std::mutex &fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

void note_pops(std::vector<std::pair<std::string, std::string>> &md, const PopsOptions &opts)
{
    md.emplace_back("pops.approach", to_string(opts.approach));
    md.emplace_back("pops.epsilon", num(opts.epsilon));
    md.emplace_back("pops.max_iterations", std::to_string(opts.max_iterations));
    md.emplace_back("pops.acceleration", to_string(opts.acceleration));
    md.emplace_back("pops.init", opts.init.describe());
}

std::string convergence_warning(const std::string &where, const PopsResult &r)
{
    return where + ": not converged after " + std::to_string(r.iterations_used) + " rounds (last change " +
           short_num(r.final_change) + ")";
}

} // namespace

void SweepResult::validate() const
{
    for (const auto &[n, v] : series)
        if (v.size() != axis_values.size())
            throw InvalidArgument("sweep '" + name + "': series '" + n + "' has " + std::to_string(v.size()) +
                                  " values for an axis of " + std::to_string(axis_values.size()));
}

const std::vector<double> &SweepResult::column(const std::string &series_name) const
{
    for (const auto &[n, v] : series)
        if (n == series_name)
            return v;
    throw InvalidArgument("sweep '" + name + "' has no series '" + series_name + "'");
}

void SweepResult::add_series(std::string series_name, std::vector<double> values)
{
    series.emplace_back(std::move(series_name), std::move(values));
}

InitSpec::Kind init_kind_from_string(const std::string &name)
{
    if (name == "auto" || name == "automatic")
        return InitSpec::Kind::automatic;
    if (name == "conventional")
        return InitSpec::Kind::conventional;
    if (name == "hermite")
        return InitSpec::Kind::hermite;
    if (name == "gaussian")
        return InitSpec::Kind::gaussian;
    if (name == "rrc")
        return InitSpec::Kind::rrc;
    throw InvalidArgument("pops.init: unknown initializer '" + name +
                          "' (expected auto, conventional, hermite, gaussian or rrc)");
}

std::string to_string(InitSpec::Kind kind)
{
    switch (kind)
    {
    case InitSpec::Kind::automatic: return "auto";
    case InitSpec::Kind::conventional: return "conventional";
    case InitSpec::Kind::hermite: return "hermite";
    case InitSpec::Kind::gaussian: return "gaussian";
    case InitSpec::Kind::rrc: return "rrc";
    }
    return "auto";
}

Waveform InitSpec::make(const LatticeConfig &cfg) const
{
    switch (kind)
    {
    case Kind::automatic: return default_init(cfg);
    case Kind::conventional:
        if (cfg.tx_symbols != 1)
            throw InvalidArgument("pops.init: the conventional initializer needs lattice.Dphi = 1");
        return make_conventional_tx(cfg);
    case Kind::hermite: return make_hermite_init(cfg, hermite_coefficients);
    case Kind::gaussian:
    {
        const double mean = gaussian_mean >= 0.0 ? gaussian_mean : 0.5 * double(cfg.tx_length() - 1);
        const double sigma = gaussian_sigma > 0.0 ? gaussian_sigma : 1.0 / hermite_isotropic_scale(cfg);
        return make_gaussian_init(cfg, mean, sigma);
    }
    case Kind::rrc: return make_rrc_init(cfg, rrc_rolloff);
    }
    return default_init(cfg);
}

std::string InitSpec::describe() const
{
    std::string s = to_string(kind);
    if (kind == Kind::hermite)
    {
        s += "[";
        for (std::size_t i = 0; i < hermite_coefficients.size(); ++i)
            s += (i ? "," : "") + short_num(hermite_coefficients[i]);
        s += "]";
    }
    else if (kind == Kind::gaussian)
        s += "(mean=" + short_num(gaussian_mean) + ",sigma=" + short_num(gaussian_sigma) + ")";
    else if (kind == Kind::rrc)
        s += "(rolloff=" + short_num(rrc_rolloff) + ")";
    return s;
}

PopsConfig PopsOptions::make(const LatticeConfig &cfg, double snr) const
{
    PopsConfig pc;
    pc.approach = approach;
    pc.epsilon = epsilon;
    pc.max_iterations = max_iterations;
    pc.acceleration = acceleration;
    pc.paper_literal_gep = paper_literal_gep;
    pc.snr = snr;
    pc.init = init.make(cfg);
    return pc;
}

ChannelSpec ChannelRecipe::realize(const LatticeConfig &cfg) const
{
    if (balanced)
        return make_separable_balanced(cfg, spread_product, num_paths, decay);
    return fixed;
}

std::string ChannelRecipe::describe() const
{
    if (balanced)
        return "balanced(BdTm=" + short_num(spread_product) + ",K=" + std::to_string(num_paths) +
               ",b=" + short_num(decay) + ")";
    return pops::describe(fixed);
}

SweepResult psd(const Waveform &w, const LatticeConfig &cfg, int oversample, int n_subcarriers)
{
    cfg.validate();
    if (oversample < 2)
        throw InvalidArgument("psd.oversample must be >= 2");
    if (n_subcarriers < 1)
        throw InvalidArgument("psd.subcarriers must be >= 1");
    const long q = cfg.num_subcarriers;
    const long len = w.size();
    const long m = (oversample * len + q - 1) / q * q;

    std::vector<cplx> in(static_cast<std::size_t>(m)), out(static_cast<std::size_t>(m));
    std::copy(w.samples().begin(), w.samples().end(), in.begin());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(int(m), reinterpret_cast<fftw_complex *>(in.data()),
                                reinterpret_cast<fftw_complex *>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::vector<double> single(static_cast<std::size_t>(m));
    for (long k = 0; k < m; ++k)
        single[std::size_t(k)] = std::norm(out[std::size_t(k)]);
    std::vector<double> total(single.size(), 0.0);
    const long spacing = m / q;
    for (int j = 0; j < n_subcarriers; ++j)
    {
        const long shift = (long(j) - long(n_subcarriers - 1) / 2) * spacing;
        for (long k = 0; k < m; ++k)
            total[std::size_t(k)] += single[std::size_t((((k - shift) % m) + m) % m)];
    }
    const double peak = *std::max_element(total.begin(), total.end());

    SweepResult r;
    r.name = "psd";
    r.axis_name = "frequency_subcarriers";
    std::vector<double> db(single.size());
    r.axis_values.resize(single.size());
    for (long i = 0; i < m; ++i)
    {
        const long k = i - m / 2;
        const double v = total[std::size_t(((k % m) + m) % m)] / peak;
        r.axis_values[std::size_t(i)] = double(k) * double(q) / double(m);
        db[std::size_t(i)] = 10.0 * std::log10(std::max(v, 1e-300));
    }
    r.add_series("psd_db", std::move(db));
    r.metadata = {{"sweep", "psd"},
                  {"oversample", std::to_string(oversample)},
                  {"points", std::to_string(m)},
                  {"subcarriers", std::to_string(n_subcarriers)},
                  {"waveform_length", std::to_string(len)},
                  {"waveform_fingerprint", fingerprint(w)}};
    return r;
}

double oob_peak_db(const SweepResult &spectrum, double min_offset)
{
    const auto &v = spectrum.column("psd_db");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(spectrum.axis_values[i]) >= min_offset)
            best = std::max(best, v[i]);
    return best;
}

double oob_power_fraction(const SweepResult &spectrum, double beyond)
{
    const auto &v = spectrum.column("psd_db");
    double all = 0.0, out = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        const double p = std::pow(10.0, v[i] / 10.0);
        all += p;
        if (std::abs(spectrum.axis_values[i]) > beyond)
            out += p;
    }
    return out / all;
}

SweepResult sweep_ft(const LatticeConfig &base, const std::vector<double> &ft_values,
                     const std::vector<std::pair<int, int>> &durations, const ChannelRecipe &channel, double snr,
                     const PopsOptions &opts)
{
    if (ft_values.empty() || durations.empty())
        throw InvalidArgument("sweep.ft: the FT grid and the duration list must be nonempty");
    const long q = base.num_subcarriers;
    const std::size_t nf = ft_values.size(), nd = durations.size();

    std::vector<long> n_of(nf, -1);
    SweepResult r;
    r.name = "ft";
    r.axis_name = "ft";
    r.axis_values = ft_values;
    for (std::size_t i = 0; i < nf; ++i)
    {
        const double target = ft_values[i] * double(q);
        const long n = std::lround(target);
        if (std::abs(double(n) - target) <= 1e-9 * std::max(1.0, target) && n >= q)
            n_of[i] = n;
        else
            r.warnings.push_back("sweep.ft: FT = " + short_num(ft_values[i]) + " is not N/Q with integer N >= Q = " +
                                 std::to_string(q) + "; row left empty");
    }

    std::vector<double> conv(nf, nan);
    std::vector<double> values(nf * nd, nan), converged(nf * nd, nan);
    std::vector<std::string> notes(nf * nd);
    parallel_for(long(nf * nd), [&](long idx) {
        const std::size_t i = std::size_t(idx) / nd, j = std::size_t(idx) % nd;
        if (n_of[i] < 0)
            return;
        LatticeConfig cfg = base;
        cfg.symbol_len = int(n_of[i]);
        cfg.tx_symbols = durations[j].first;
        cfg.rx_symbols = durations[j].second;
        const ChannelSpec ch = channel.realize(cfg);
        const PopsResult res = run_pops(cfg, ch, opts.make(cfg, snr));
        values[std::size_t(idx)] = to_db(res.report.sinr);
        converged[std::size_t(idx)] = res.converged ? 1.0 : 0.0;
        if (!res.converged)
            notes[std::size_t(idx)] = convergence_warning("FT=" + short_num(ft_values[i]) + " D=(" +
                                                              std::to_string(cfg.tx_symbols) + "," +
                                                              std::to_string(cfg.rx_symbols) + ")",
                                                          res);
        if (j == 0)
        {
            LatticeConfig one = cfg;
            one.tx_symbols = one.rx_symbols = 1;
            conv[i] = to_db(sinr_conventional(one, channel.realize(one), snr).sinr);
        }
    });

    r.add_series("conventional_db", conv);
    for (std::size_t j = 0; j < nd; ++j)
    {
        const std::string tag = "pops_dphi" + std::to_string(durations[j].first) + "_dpsi" +
                                std::to_string(durations[j].second);
        std::vector<double> v(nf), c(nf);
        for (std::size_t i = 0; i < nf; ++i)
        {
            v[i] = values[i * nd + j];
            c[i] = converged[i * nd + j];
        }
        r.add_series(tag + "_db", std::move(v));
        r.add_series(tag + "_converged", std::move(c));
    }
    for (const auto &n : notes)
        if (!n.empty())
            r.warnings.push_back(n);
    r.metadata = {{"sweep", "ft"},
                  {"Q", std::to_string(q)},
                  {"Ts", num(base.sample_period)},
                  {"snr", snr_text(snr)},
                  {"channel", channel.describe()}};
    note_pops(r.metadata, opts);
    return r;
}

SweepResult sweep_doppler_delay(const LatticeConfig &base, double spread_product, const std::vector<double> &bd_over_f,
                                const std::vector<int> &cp_samples, long max_delay_samples, int num_paths,
                                double decay, double snr, const PopsOptions &opts)
{
    if (!(spread_product > 0.0))
        throw InvalidArgument("sweep.spread_product must be positive");
    if (bd_over_f.empty() || cp_samples.empty())
        throw InvalidArgument("sweep.doppler_delay: the Doppler grid and the CP list must be nonempty");
    if (max_delay_samples < 0)
        throw InvalidArgument("sweep.max_delay must be nonnegative");
    const long q = base.num_subcarriers;
    const std::size_t nx = bd_over_f.size(), nc = cp_samples.size();

    std::vector<long> tm(nx);
    std::vector<double> eff(nx);
    for (std::size_t i = 0; i < nx; ++i)
    {
        const double x = bd_over_f[i];
        if (x < 0.0)
            throw InvalidArgument("sweep.doppler_grid: Bd/F values must be nonnegative");
        tm[i] = x > 0.0 ? std::min(max_delay_samples, std::lround(spread_product * double(q) / x)) : max_delay_samples;
        eff[i] = x / double(q) * double(tm[i]);
    }
    auto channel_at = [&](std::size_t i) {
        return ChannelSpec{make_separable(tm[i], bd_over_f[i] / double(q), num_paths, decay, base.sample_period)};
    };

    std::vector<double> pops_v(nx * nc, nan), conv_v(nx * nc, nan);
    std::vector<std::string> notes(nx * nc);
    parallel_for(long(nx * nc), [&](long idx) {
        const std::size_t i = std::size_t(idx) / nc, j = std::size_t(idx) % nc;
        LatticeConfig cfg = base;
        cfg.symbol_len = int(q + cp_samples[j]);
        const ChannelSpec ch = channel_at(i);
        const PopsResult res = run_pops(cfg, ch, opts.make(cfg, snr));
        pops_v[std::size_t(idx)] = to_db(res.report.sinr);
        if (!res.converged)
            notes[std::size_t(idx)] =
                convergence_warning("Bd/F=" + short_num(bd_over_f[i]) + " CP=" + std::to_string(cp_samples[j]), res);
        LatticeConfig one = cfg;
        one.tx_symbols = one.rx_symbols = 1;
        conv_v[std::size_t(idx)] = to_db(sinr_conventional(one, ch, snr).sinr);
    });

    SweepResult r;
    r.name = "doppler-delay";
    r.axis_name = "bd_over_f";
    r.axis_values = bd_over_f;
    std::vector<double> tm_d(tm.begin(), tm.end());
    r.add_series("delay_spread_samples", tm_d);
    r.add_series("effective_spread_product", eff);
    for (std::size_t j = 0; j < nc; ++j)
    {
        std::vector<double> p(nx), c(nx);
        for (std::size_t i = 0; i < nx; ++i)
        {
            p[i] = pops_v[i * nc + j];
            c[i] = conv_v[i * nc + j];
        }
        const std::string cp = std::to_string(cp_samples[j]);
        r.add_series("pops_cp" + cp + "_db", std::move(p));
        r.add_series("conventional_cp" + cp + "_db", std::move(c));
    }
    for (const auto &n : notes)
        if (!n.empty())
            r.warnings.push_back(n);
    r.metadata = {{"sweep", "doppler-delay"},
                  {"Q", std::to_string(q)},
                  {"Dphi", std::to_string(base.tx_symbols)},
                  {"Dpsi", std::to_string(base.rx_symbols)},
                  {"spread_product", num(spread_product)},
                  {"max_delay", std::to_string(max_delay_samples)},
                  {"K", std::to_string(num_paths)},
                  {"b", num(decay)},
                  {"snr", snr_text(snr)}};
    note_pops(r.metadata, opts);
    return r;
}

namespace
{

// Shared body of the two synchronization sweeps; perturb maps (rx, lattice, axis
// value) to the perturbed receive waveform.
template <typename Perturb>
SweepResult sync_sweep(const std::string &name, const std::string &axis, const PopsResult &result,
                       const LatticeConfig &cfg, const ChannelSpec &ch, const std::vector<double> &offsets,
                       const std::vector<int> &cp_samples, double snr, Perturb perturb)
{
    cfg.validate();
    const std::size_t nx = offsets.size(), nc = cp_samples.size();
    std::vector<double> pops_v(nx), conv_v(nx * nc);
    parallel_for(long(nx * (nc + 1)), [&](long idx) {
        const std::size_t i = std::size_t(idx) / (nc + 1), j = std::size_t(idx) % (nc + 1);
        if (j == 0)
        {
            pops_v[i] = to_db(sinr(result.tx_opt, perturb(result.rx_opt, cfg, offsets[i]), ch, cfg, snr).sinr);
            return;
        }
        LatticeConfig c = cfg;
        c.symbol_len = cfg.num_subcarriers + cp_samples[j - 1];
        c.tx_symbols = c.rx_symbols = 1;
        conv_v[i * nc + (j - 1)] =
            to_db(sinr(make_conventional_tx(c), perturb(make_conventional_rx(c), c, offsets[i]), ch, c, snr).sinr);
    });
    SweepResult r;
    r.name = name;
    r.axis_name = axis;
    r.axis_values = offsets;
    r.add_series("pops_db", pops_v);
    for (std::size_t j = 0; j < nc; ++j)
    {
        std::vector<double> c(nx);
        for (std::size_t i = 0; i < nx; ++i)
            c[i] = conv_v[i * nc + j];
        r.add_series("conventional_cp" + std::to_string(cp_samples[j]) + "_db", std::move(c));
    }
    r.metadata = {{"sweep", name},
                  {"Q", std::to_string(cfg.num_subcarriers)},
                  {"N", std::to_string(cfg.symbol_len)},
                  {"Dphi", std::to_string(cfg.tx_symbols)},
                  {"Dpsi", std::to_string(cfg.rx_symbols)},
                  {"channel", describe(ch)},
                  {"snr", snr_text(snr)},
                  {"tx_fingerprint", fingerprint(result.tx_opt)},
                  {"rx_fingerprint", fingerprint(result.rx_opt)}};
    return r;
}

} // namespace

SweepResult sweep_time_sync(const PopsResult &result, const LatticeConfig &cfg, const ChannelSpec &ch,
                            const std::vector<double> &offsets, TimeUnit unit, const std::vector<int> &cp_samples,
                            double snr)
{
    auto perturb = [unit](const Waveform &rx, const LatticeConfig &c, double x) {
        const long tau = unit == TimeUnit::samples ? std::lround(x) : std::lround(x * double(c.symbol_len));
        return shift(rx, tau);
    };
    SweepResult r = sync_sweep("time-sync", unit == TimeUnit::samples ? "offset_samples" : "offset_symbols", result,
                               cfg, ch, offsets, cp_samples, snr, perturb);
    std::vector<double> applied(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i)
        applied[i] = double(unit == TimeUnit::samples ? std::lround(offsets[i])
                                                      : std::lround(offsets[i] * double(cfg.symbol_len)));
    r.add_series("offset_applied_samples", applied);
    return r;
}

SweepResult sweep_freq_sync(const PopsResult &result, const LatticeConfig &cfg, const ChannelSpec &ch,
                            const std::vector<double> &offsets, FrequencyUnit unit, const std::vector<int> &cp_samples,
                            double snr)
{
    auto perturb = [unit](const Waveform &rx, const LatticeConfig &c, double x) {
        const double df = unit == FrequencyUnit::subcarriers ? x : x * double(c.num_subcarriers) * c.sample_period;
        return modulate_fractional(rx, df, c.num_subcarriers);
    };
    return sync_sweep("freq-sync", unit == FrequencyUnit::subcarriers ? "offset_subcarriers" : "offset_hz", result,
                      cfg, ch, offsets, cp_samples, snr, perturb);
}

SweepResult sweep_mismatch(const LatticeConfig &cfg, const std::vector<double> &optimize_at,
                           const std::vector<double> &evaluate_over, int num_paths, double decay, double snr,
                           const PopsOptions &opts)
{
    if (optimize_at.empty() || evaluate_over.empty())
        throw InvalidArgument("sweep.mismatch: both grids must be nonempty");
    cfg.validate();
    const std::size_t no = optimize_at.size(), ne = evaluate_over.size();
    std::vector<PopsResult> runs(no);
    parallel_for(long(no), [&](long i) {
        const ChannelSpec ch = make_separable_balanced(cfg, optimize_at[std::size_t(i)], num_paths, decay);
        runs[std::size_t(i)] = run_pops(cfg, ch, opts.make(cfg, snr));
    });
    std::vector<double> vals(no * ne);
    parallel_for(long(no * ne), [&](long idx) {
        const std::size_t i = std::size_t(idx) / ne, j = std::size_t(idx) % ne;
        const ChannelSpec ch = make_separable_balanced(cfg, evaluate_over[j], num_paths, decay);
        vals[std::size_t(idx)] = to_db(sinr(runs[i].tx_opt, runs[i].rx_opt, ch, cfg, snr).sinr);
    });
    SweepResult r;
    r.name = "mismatch";
    r.axis_name = "evaluated_spread_product";
    r.axis_values = evaluate_over;
    for (std::size_t i = 0; i < no; ++i)
    {
        r.add_series("optimized_at_" + short_num(optimize_at[i]) + "_db",
                     std::vector<double>(vals.begin() + long(i * ne), vals.begin() + long((i + 1) * ne)));
        if (!runs[i].converged)
            r.warnings.push_back(convergence_warning("optimize_at=" + short_num(optimize_at[i]), runs[i]));
    }
    r.metadata = {{"sweep", "mismatch"},
                  {"Q", std::to_string(cfg.num_subcarriers)},
                  {"N", std::to_string(cfg.symbol_len)},
                  {"Dphi", std::to_string(cfg.tx_symbols)},
                  {"Dpsi", std::to_string(cfg.rx_symbols)},
                  {"K", std::to_string(num_paths)},
                  {"b", num(decay)},
                  {"snr", snr_text(snr)}};
    note_pops(r.metadata, opts);
    return r;
}

std::vector<NamedInit> standard_initializations(const LatticeConfig &cfg)
{
    cfg.validate();
    std::vector<NamedInit> out;
    if (cfg.tx_symbols == 1)
        out.push_back({"conventional", make_conventional_tx(cfg)});
    const std::vector<std::pair<std::string, std::vector<double>>> hermite = {
        {"hermite_h0", {1.0}},
        {"hermite_h0_h2", {1.0, 0.0, 0.5}},
        {"hermite_h0_h4", {1.0, 0.0, 0.0, 0.0, 0.5}},
        {"hermite_h0_h2_h4", {1.0, 0.0, 0.4, 0.0, 0.2}},
        {"hermite_h0_h6", {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5}},
        {"hermite_h0_h1", {1.0, 0.5}},
        {"hermite_h1", {0.0, 1.0}},
        {"hermite_mix8", {1.0, 0.1, 0.3, 0.05, 0.1, 0.02, 0.05, 0.01}},
    };
    for (const auto &[name, c] : hermite)
        out.push_back({name, make_hermite_init(cfg, c)});
    const double mid = 0.5 * double(cfg.tx_length() - 1);
    const double iso = 1.0 / hermite_isotropic_scale(cfg);
    const double step = double(cfg.tx_length()) / 8.0;
    out.push_back({"gaussian_center", make_gaussian_init(cfg, mid, iso)});
    out.push_back({"gaussian_early", make_gaussian_init(cfg, mid - step, iso)});
    out.push_back({"gaussian_late", make_gaussian_init(cfg, mid + step, iso)});
    out.push_back({"gaussian_narrow", make_gaussian_init(cfg, mid, 0.5 * iso)});
    out.push_back({"gaussian_wide", make_gaussian_init(cfg, mid, 2.0 * iso)});
    for (double beta : {0.1, 0.5, 0.9})
        out.push_back({"rrc_" + short_num(beta), make_rrc_init(cfg, beta)});
    return out;
}

SweepResult initialization_study(const LatticeConfig &cfg, const ChannelSpec &ch, double snr,
                                 const std::vector<NamedInit> &inits, const PopsOptions &opts, std::size_t bound_cap)
{
    if (inits.size() < 2)
        throw InvalidArgument("sweep.init_study needs at least two initializations");
    cfg.validate();
    const std::size_t n = inits.size();
    std::vector<PopsResult> runs(n);
    parallel_for(long(n), [&](long i) {
        PopsConfig pc = opts.make(cfg, snr);
        pc.init = inits[std::size_t(i)].waveform;
        runs[std::size_t(i)] = run_pops(cfg, ch, pc);
    });

    SweepResult r;
    r.name = "init-study";
    r.axis_name = "init_index";
    std::vector<double> sinr_db(n), bound_db(n, nan), conv_db(n), conv_flag(n), rounds(n);
    std::map<std::pair<long, long>, double> bounds;
    const double conventional = to_db(sinr_conventional(cfg, ch, snr).sinr);
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto &res = runs[i];
        r.axis_values.push_back(double(i));
        sinr_db[i] = to_db(res.report.sinr);
        conv_db[i] = conventional;
        conv_flag[i] = res.converged ? 1.0 : 0.0;
        rounds[i] = double(res.iterations_used);
        const std::pair<long, long> key{res.tx_opt.offset(), res.rx_opt.offset()};
        auto it = bounds.find(key);
        if (it == bounds.end())
        {
            double b = nan;
            try
            {
                b = to_db(upper_bound(build_kronecker_system(cfg, ch, key.first, key.second, bound_cap), snr));
            }
            catch (const std::exception &e)
            {
                r.warnings.push_back(std::string("upper bound skipped: ") + e.what());
            }
            it = bounds.emplace(key, b).first;
        }
        bound_db[i] = it->second;
        r.metadata.emplace_back("init." + std::to_string(i), inits[i].name);
        if (!res.converged)
            r.warnings.push_back(convergence_warning(inits[i].name, res));
    }
    r.add_series("pops_db", sinr_db);
    r.add_series("upper_bound_db", bound_db);
    r.add_series("conventional_db", conv_db);
    r.add_series("converged", conv_flag);
    r.add_series("rounds", rounds);
    r.metadata.insert(r.metadata.begin(), {{"sweep", "init-study"},
                                           {"Q", std::to_string(cfg.num_subcarriers)},
                                           {"N", std::to_string(cfg.symbol_len)},
                                           {"Dphi", std::to_string(cfg.tx_symbols)},
                                           {"Dpsi", std::to_string(cfg.rx_symbols)},
                                           {"channel", describe(ch)},
                                           {"snr", snr_text(snr)}});
    note_pops(r.metadata, opts);
    return r;
}

} // namespace pops
