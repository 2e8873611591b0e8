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

// Acceptance runner. Prints one PASS/FAIL line per criterion; with arguments it
// runs only the listed criteria. The exit status is nonzero when any selected
// criterion fails, including by exceeding its time budget.

#include "oracles.hpp"

#include "pops/analysis.hpp"
#include "pops/errors.hpp"
#include "pops/kernel.hpp"
#include "pops/montecarlo.hpp"
#include "pops/optimizer.hpp"
#include "pops/sinr.hpp"
#include "pops/upper_bound.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <string>

using namespace pops;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok)
        {
            pass = false;
            note("FAILED " + what);
        }
    }
    void note(const std::string &s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Relative difference with infinities compared exactly.
double rel(double a, double b)
{
    if (a == b)
        return 0.0;
    if (std::isinf(a) || std::isinf(b))
        return inf;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

PopsOptions default_options() { return PopsOptions{}; }

const LatticeConfig headline{160, 128, 1.0, 1, 1};

ChannelSpec balanced(const LatticeConfig &cfg, double product)
{
    return ChannelSpec{make_separable_balanced(cfg, product, 8, 0.5)};
}

Outcome closed_form_equivalence()
{
    Outcome o;
    double worst = 0.0;
    int cases = 0, beyond_guard = 0;
    for (const auto &[n, q] : {std::pair{20, 16}, std::pair{72, 64}, std::pair{144, 128}})
    {
        const LatticeConfig cfg{n, q};
        const long guard = n - q;
        for (double product : {0.0, 0.001, 0.005, 0.01, 0.05})
            for (long spread : {guard / 2, 2 * guard + 1})
            {
                const double bd_ts = product > 0.0 ? product / double(std::max(1L, spread)) : 0.0;
                const ChannelSpec ch{make_separable(spread, bd_ts, 6, 0.5)};
                beyond_guard += max_delay(ch) > guard ? 1 : 0;
                for (double snr : {inf, 100.0})
                {
                    const double closed = sinr_conventional(cfg, ch, snr).sinr;
                    const double kernel = sinr(make_conventional_tx(cfg), make_conventional_rx(cfg), ch, cfg, snr).sinr;
                    worst = std::max(worst, rel(closed, kernel));
                    ++cases;
                }
            }
    }
    o.note(std::to_string(cases) + " cases, " + std::to_string(beyond_guard / 2) +
           " channels with delays beyond the guard, worst relative gap " + fmt("%.2e", worst));
    o.require(worst <= 1e-8, "closed form differs from the kernel engine");
    return o;
}

Outcome interference_free_baseline()
{
    Outcome o;
    const LatticeConfig cfg{20, 16};
    PathList pl;
    pl.paths = {{0, 0.0, 0.6}, {2, 0.0, 0.3}, {4, 0.0, 0.1}};
    const ChannelSpec ch{pl};
    const double expected = 10.0 * 16.0 / 20.0;
    const Waveform tx = make_conventional_tx(cfg), rx = make_conventional_rx(cfg);
    const double analytic = sinr(tx, rx, ch, cfg, 10.0).sinr;
    const double closed = sinr_conventional(cfg, ch, 10.0).sinr;
    McConfig mc;
    mc.trials = 100000;
    mc.seed = 2024;
    const McResult est = estimate_sinr(tx, rx, ch, cfg, 10.0, mc);
    o.note("analytic " + fmt("%.12f", analytic) + ", closed form " + fmt("%.12f", closed) + ", MC " +
           fmt("%.4f", est.sinr) + " +- " + fmt("%.4f", est.standard_error));
    o.require(std::abs(analytic - expected) <= 1e-9, "analytic SINR is not snr*Q/N");
    o.require(std::abs(closed - expected) <= 1e-9, "closed form SINR is not snr*Q/N");
    o.require(std::abs(est.sinr - expected) <= 3.0 * est.standard_error, "Monte-Carlo estimate outside 3 SE");
    return o;
}

Outcome solver_agreement()
{
    Outcome o;
    std::mt19937_64 rng(31);
    const std::pair<int, int> lattices[] = {{10, 8}, {20, 16}, {40, 32}, {64, 48}, {64, 64}};
    double worst = 0.0;
    long largest = 0;
    for (int t = 0; t < 20; ++t)
    {
        const auto [n, q] = lattices[t % 5];
        const LatticeConfig cfg{n, q};
        const Waveform tx = oracle::random_waveform(rng, n, -(t % 4));
        const ChannelSpec ch{oracle::random_pathlist(rng, 1 + t % 5, n / 2 + 2, 0.01)};
        const KernelPair k = build_kernels(tx, make_view(ch, 1.0), cfg, 0, n);
        CMatrix kin = k.interference.data;
        kin.diagonal().array() += tx.norm_sq() / 30.0;
        const double a = half_step(Solver::rayleigh, k.useful.data, kin).sinr;
        const double b = half_step(Solver::gep, k.useful.data, kin).sinr;
        const double c = half_step(Solver::whitening, k.useful.data, kin).sinr;
        worst = std::max({worst, rel(a, b), rel(a, c), rel(b, c)});
        largest = std::max(largest, k.useful.size());
    }
    o.note("20 kernel pairs up to L=" + std::to_string(largest) + ", worst relative spread " + fmt("%.2e", worst));
    o.require(worst <= 1e-6, "solvers disagree");
    return o;
}

Outcome monotone_ping_pong()
{
    Outcome o;
    bool monotone = true;
    for (int q : {16, 64, 128})
    {
        const LatticeConfig cfg{q * 5 / 4, q};
        const ChannelSpec ch = balanced(cfg, 0.01);
        for (double snr : {inf, 1000.0, 100.0, 10.0})
        {
            const PopsResult r = run_pops(cfg, ch, default_options().make(cfg, snr));
            const auto &tr = r.sinr_trajectory;
            for (std::size_t i = 1; i < tr.size(); ++i)
                if (tr[i].sinr < tr[i - 1].sinr - 1e-9 * std::abs(tr[i - 1].sinr))
                    monotone = false;
            const std::string tag = "Q=" + std::to_string(q) + " snr=" + (std::isinf(snr) ? "inf" : fmt("%g", snr));
            o.note(tag + ": " + (r.converged ? "converged" : "NOT converged") + " in " +
                   std::to_string(r.iterations_used) + " rounds, " + fmt("%.3f", to_db(r.report.sinr)) + " dB");
            if (!r.converged)
                o.pass = false;
        }
    }
    o.require(monotone, "a trajectory decreased");
    if (!o.pass && monotone)
        o.note("FAILED convergence within 200 rounds");
    return o;
}

Outcome duality_identities()
{
    Outcome o;
    std::mt19937_64 rng(5);
    double worst_form = 0.0, worst_reversal = 0.0;
    for (int t = 0; t < 10; ++t)
    {
        const LatticeConfig cfg{14, 12};
        const Waveform phi = oracle::random_waveform(rng, 14 + 3 * (t % 3), -(t % 4));
        const Waveform psi = oracle::random_waveform(rng, 14 + 2 * (t % 2), t % 3 - 1);
        const ChannelSpec ch{oracle::random_pathlist(rng, 1 + t % 4, 10, 0.02)};
        const ChannelView fwd = make_view(ch, 1.0);
        const KernelPair a = build_kernels(phi, fwd, cfg, psi.offset(), psi.size());
        const KernelPair b = build_kernels(psi, fwd.reversed(), cfg, phi.offset(), phi.size());
        worst_form = std::max({worst_form, rel(quadratic_form(a.useful, psi), quadratic_form(b.useful, phi)),
                               rel(quadratic_form(a.interference, psi), quadratic_form(b.interference, phi))});
        const SinrReport base = sinr(phi, psi, ch, cfg, 4.0);
        worst_reversal = std::max({worst_reversal, rel(sinr_time_reversed(phi, psi, ch, cfg, 4.0).sinr, base.sinr),
                                   rel(sinr_time_reversed(phi, psi, ch, cfg, inf).sir, base.sir)});
    }
    o.note("quadratic forms " + fmt("%.2e", worst_form) + ", time reversal " + fmt("%.2e", worst_reversal));
    o.require(worst_form <= 1e-10, "role-swap quadratic forms differ");
    o.require(worst_reversal <= 1e-10, "time-reversal identity violated");
    return o;
}

Outcome kronecker_identity_and_dominance()
{
    Outcome o;
    std::mt19937_64 rng(9);
    double worst = 0.0;
    for (int t = 0; t < 25; ++t)
    {
        const LatticeConfig cfg{8, 4 + t % 5};
        const ChannelSpec ch{oracle::random_pathlist(rng, 1 + t % 4, 6, 0.03)};
        const Waveform tx = oracle::random_waveform(rng, 8, -(t % 3));
        const Waveform rx = oracle::random_waveform(rng, 8, t % 2);
        const KroneckerSystem sys = build_kronecker_system(cfg, ch, tx.offset(), rx.offset());
        worst = std::max(worst, rel(kronecker_quotient(sys, tx, rx, inf), sinr(tx, rx, ch, cfg, inf).sir));
    }
    o.note("identity worst relative gap " + fmt("%.2e", worst));
    o.require(worst <= 1e-10, "Kronecker quotient differs from the direct SIR");

    const LatticeConfig cfg{10, 8};
    const ChannelSpec ch = balanced(cfg, 0.02);
    std::map<std::pair<long, long>, double> bounds;
    double best = -inf, margin = inf;
    for (int t = 0; t < 10; ++t)
    {
        PopsConfig pc = default_options().make(cfg, inf);
        pc.init = oracle::random_waveform(rng, 10, 0);
        const PopsResult r = run_pops(cfg, ch, pc);
        const std::pair<long, long> key{r.tx_opt.offset(), r.rx_opt.offset()};
        if (!bounds.count(key))
            bounds[key] = upper_bound(build_kronecker_system(cfg, ch, key.first, key.second), inf);
        best = std::max(best, r.report.sir);
        margin = std::min(margin, bounds[key] - r.report.sir);
    }
    double top = 0.0;
    for (const auto &[k, v] : bounds)
        top = std::max(top, v);
    o.note("best of 10 POPS " + fmt("%.3f", to_db(best)) + " dB, bound " + fmt("%.3f", to_db(top)) + " dB");
    o.require(margin >= -1e-9 * best, "a POPS run exceeds the bound");
    return o;
}

Outcome headline_ft()
{
    Outcome o;
    std::vector<double> ft{135.0 / 128.0};
    for (int n = 136; n <= 256; n += 8)
        ft.push_back(double(n) / 128.0);
    const SweepResult s = sweep_ft(headline, ft, {{1, 1}}, ChannelRecipe{}, inf, default_options());
    const auto &pops_db = s.column("pops_dphi1_dpsi1_db");
    const auto &conv = s.column("conventional_db");
    double at_125 = -inf, worst_gain = inf;
    for (std::size_t i = 0; i < ft.size(); ++i)
    {
        if (ft[i] == 1.25)
            at_125 = pops_db[i];
        worst_gain = std::min(worst_gain, pops_db[i] - conv[i]);
    }
    o.note("SIR at FT=1.25 " + fmt("%.3f", at_125) + " dB; " + std::to_string(ft.size()) +
           " FT points in [" + fmt("%.4f", ft.front()) + ", 2], smallest gain over conventional " + fmt("%.3f", worst_gain) + " dB");
    o.require(at_125 >= 20.0, "headline SIR below 20 dB");
    o.require(worst_gain > 0.0, "POPS does not beat conventional everywhere");
    return o;
}

Outcome out_of_band()
{
    Outcome o;
    const LatticeConfig cfg{160, 128, 1.0, 3, 3};
    const PopsResult r = run_pops(cfg, balanced(cfg, 0.01), default_options().make(cfg, inf));
    const SweepResult ps = psd(r.tx_opt, cfg, 16, 1);
    const SweepResult cs = psd(make_conventional_tx(headline), headline, 16, 1);
    const double pops_peak = oob_peak_db(ps, 2.0), conv_peak = oob_peak_db(cs, 2.0);
    const double pops_frac = oob_power_fraction(ps, 1.0), conv_frac = oob_power_fraction(cs, 1.0);
    o.note("SIR " + fmt("%.2f", to_db(r.report.sir)) + " dB; peak PSD beyond 2F: POPS " + fmt("%.2f", pops_peak) +
           " dB, conventional " + fmt("%.2f", conv_peak) + " dB; power beyond F: " + fmt("%.4f", pops_frac) + " vs " +
           fmt("%.4f", conv_frac));
    o.require(pops_peak <= conv_peak - 20.0, "PSD beyond 2F is not 20 dB below conventional");
    o.require(pops_frac < conv_frac, "out-of-band power fraction not smaller");
    return o;
}

Outcome robustness()
{
    Outcome o;
    const ChannelSpec ch = balanced(headline, 0.01);
    const PopsResult r = run_pops(headline, ch, default_options().make(headline, inf));
    std::vector<double> taus;
    for (int t = -40; t <= 40; ++t)
        taus.push_back(t);
    const SweepResult ts = sweep_time_sync(r, headline, ch, taus, TimeUnit::samples, {16, 32}, inf);
    const auto &p = ts.column("pops_db");
    for (int cp : {16, 32})
    {
        const auto &c = ts.column("conventional_cp" + std::to_string(cp) + "_db");
        int bad = 0;
        double worst = inf;
        for (std::size_t i = 0; i < taus.size(); ++i)
        {
            bad += p[i] < c[i] ? 1 : 0;
            worst = std::min(worst, p[i] - c[i]);
        }
        o.note("CP=" + std::to_string(cp) + ": POPS below conventional at " + std::to_string(bad) + "/" +
               std::to_string(taus.size()) + " offsets, worst margin " + fmt("%.2f", worst) + " dB");
        o.require(bad == 0, "time-sync dominance for CP=" + std::to_string(cp));
    }

    const SweepResult ms = sweep_mismatch(headline, {0.01, 0.001}, {0.001, 0.01}, 8, 0.5, inf, default_options());
    const auto &a = ms.column("optimized_at_0.01_db");
    const auto &b = ms.column("optimized_at_0.001_db");
    const double loss_a = b[0] - a[0], loss_b = a[1] - b[1];
    o.note("mismatch loss of the 0.01 design at 0.001: " + fmt("%.3f", loss_a) + " dB, of the 0.001 design at 0.01: " +
           fmt("%.3f", loss_b) + " dB");
    o.require(loss_a < loss_b, "mismatch ordering");
    return o;
}

Outcome mc_grid()
{
    Outcome o;
    const LatticeConfig cfg{20, 16};
    const double snr = 100.0;
    const std::pair<std::string, ChannelSpec> channels[] = {
        {"Bd=0", ChannelSpec{make_separable(6, 0.0, 4, 0.5)}},
        {"BdTm=0.005", ChannelSpec{make_separable_balanced(cfg, 0.005, 4, 0.5)}},
        {"BdTm=0.01", ChannelSpec{make_separable_balanced(cfg, 0.01, 4, 0.5)}}};
    McConfig mc;
    mc.trials = 100000;
    int idx = 0;
    for (const auto &[label, ch] : channels)
    {
        const PopsResult r = run_pops(cfg, ch, default_options().make(cfg, snr));
        const std::pair<std::string, std::pair<Waveform, Waveform>> pairs[] = {
            {"CP-OFDM", {make_conventional_tx(cfg), make_conventional_rx(cfg)}}, {"POPS", {r.tx_opt, r.rx_opt}}};
        for (const auto &[name, w] : pairs)
        {
            mc.seed = 100 + std::uint64_t(idx++);
            const McResult est = estimate_sinr(w.first, w.second, ch, cfg, snr, mc);
            const double analytic = sinr(w.first, w.second, ch, cfg, snr).sinr;
            const double z = (est.sinr - analytic) / est.standard_error;
            o.note(name + " " + label + ": z=" + fmt("%+.2f", z));
            o.require(std::abs(z) <= 3.0, name + " " + label + " outside 3 SE");
        }
    }
    return o;
}

Outcome noise_correlation_contrast()
{
    Outcome o;
    const LatticeConfig cfg{20, 16};
    std::vector<std::pair<long, long>> pos;
    for (long n = -1; n <= 1; ++n)
        for (long m = 0; m < 16; ++m)
            pos.emplace_back(m, n);
    const Waveform cp_rx = make_conventional_rx(cfg);
    const CMatrix cp = noise_correlation(cp_rx, cfg, pos);
    double cp_off = 0.0;
    for (long i = 0; i < cp.rows(); ++i)
        for (long j = 0; j < cp.cols(); ++j)
            if (i != j)
                cp_off = std::max(cp_off, std::abs(cp(i, j)) / cp_rx.norm_sq());
    const Waveform zp_rx = time_reverse(make_conventional_tx(cfg));
    const CMatrix zp = noise_correlation(zp_rx, cfg, pos);
    double zp_same = 0.0;
    for (long i = 16; i < 32; ++i)
        for (long j = 16; j < 32; ++j)
            if (i != j)
                zp_same = std::max(zp_same, std::abs(zp(i, j)) / zp_rx.norm_sq());
    o.note("cyclic prefix largest off-diagonal " + fmt("%.2e", cp_off) + ", zero padding largest same-symbol " +
           fmt("%.4f", zp_same));
    o.require(cp_off < 1e-12, "cyclic-prefix receiver noise is correlated");
    o.require(zp_same > 0.01, "zero-padding receiver noise is uncorrelated");
    return o;
}

struct Criterion
{
    int id;
    const char *title;
    double budget_seconds; // 0: no limit stated
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char **argv)
{
    const std::vector<Criterion> all = {
        {1, "closed-form equivalence", 10.0, closed_form_equivalence},
        {2, "interference-free baseline", 30.0, interference_free_baseline},
        {3, "solver agreement", 10.0, solver_agreement},
        {4, "monotone ping-pong and convergence", 0.0, monotone_ping_pong},
        {5, "duality identities", 0.0, duality_identities},
        {6, "Kronecker identity and bound dominance", 60.0, kronecker_identity_and_dominance},
        {7, "FT sweep headline", 300.0, headline_ft},
        {8, "out-of-band emission", 60.0, out_of_band},
        {9, "synchronization and mismatch robustness", 300.0, robustness},
        {10, "Monte-Carlo cross-validation grid", 600.0, mc_grid},
        {11, "noise correlation contrast", 0.0, noise_correlation_contrast},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        char *end = nullptr;
        const long id = std::strtol(argv[i], &end, 10);
        if (*end != '\0' || id < 1 || id > long(all.size()))
        {
            std::fprintf(stderr, "usage: %s [criterion number 1-%zu]...\n", argv[0], all.size());
            return 2;
        }
        selected.push_back(int(id));
    }
    if (selected.empty())
        for (const auto &c : all)
            selected.push_back(c.id);

    int failures = 0;
    for (int id : selected)
    {
        const Criterion &c = all[std::size_t(id - 1)];
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            out = c.run();
        }
        catch (const std::exception &e)
        {
            out.pass = false;
            out.note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && secs > c.budget_seconds)
            out.require(false, "time budget of " + fmt("%g", c.budget_seconds) + " s");
        failures += out.pass ? 0 : 1;
        std::printf("criterion %2d %s  %s [%.1f s]: %s\n", c.id, out.pass ? "PASS" : "FAIL", c.title, secs,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
