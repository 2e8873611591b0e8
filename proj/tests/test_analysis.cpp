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

#include "oracles.hpp"

#include "pops/analysis.hpp"
#include "pops/errors.hpp"
#include "pops/sinr.hpp"

#include <doctest.h>

#include <cstdlib>
#include <limits>

using namespace pops;

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

// Direct evaluation of |sum_q w[q] exp(-j 2 pi f q / Q)|^2 at f in units of F.
double dtft_power(const Waveform &w, double f, int q)
{
    cplx acc{};
    for (long i = 0; i < w.size(); ++i)
        acc += w.samples()[std::size_t(i)] * std::polar(1.0, -oracle::two_pi * f * double(w.offset() + i) / double(q));
    return std::norm(acc);
}

PopsOptions quick_options()
{
    PopsOptions o;
    o.max_iterations = 60;
    return o;
}
} // namespace

TEST_SUITE("analysis")
{
    TEST_CASE("rectangular pulse spectrum")
    {
        const LatticeConfig cfg{256, 256};
        const auto s = psd(make_conventional_rx(cfg), cfg, 32, 1);
        const auto &v = s.column("psd_db");
        double peak = -inf, side = -inf, at_null = -inf;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            peak = std::max(peak, v[i]);
            const double f = s.axis_values[i];
            if (f > 1.0 && f < 2.0)
                side = std::max(side, v[i]);
            if (f == 1.0)
                at_null = v[i];
        }
        CHECK(peak == 0.0);
        CHECK(side == doctest::Approx(-13.26).epsilon(0.002));
        CHECK(at_null < -150.0);
        CHECK(s.axis_values.size() == 32 * 256);
        CHECK(s.axis_values.front() == -128.0);
    }

    TEST_CASE("spectrum matches a direct transform")
    {
        std::mt19937_64 rng(11);
        const LatticeConfig cfg{10, 8};
        const Waveform w = oracle::random_waveform(rng, 13, -3);
        for (int subcarriers : {1, 3, 4})
        {
            CAPTURE(subcarriers);
            const auto s = psd(w, cfg, 4, subcarriers);
            const auto &v = s.column("psd_db");
            std::vector<double> direct(v.size(), 0.0);
            for (std::size_t i = 0; i < v.size(); ++i)
                for (int j = 0; j < subcarriers; ++j)
                    direct[i] += dtft_power(w, s.axis_values[i] - double(j - (subcarriers - 1) / 2), cfg.num_subcarriers);
            const double top = *std::max_element(direct.begin(), direct.end());
            for (std::size_t i = 0; i < v.size(); ++i)
                CHECK(std::pow(10.0, v[i] / 10.0) == doctest::Approx(direct[i] / top).epsilon(1e-9).scale(1e-12));
        }
        CHECK_THROWS_AS(psd(w, cfg, 1, 1), InvalidArgument);
        CHECK_THROWS_AS(psd(w, cfg, 4, 0), InvalidArgument);
    }

    TEST_CASE("out-of-band helpers")
    {
        SweepResult s;
        s.name = "t";
        s.axis_values = {-3.0, -1.0, 0.0, 1.0, 2.0, 3.0};
        s.add_series("psd_db", {-40.0, -10.0, 0.0, -10.0, -30.0, -50.0});
        CHECK(oob_peak_db(s, 2.0) == -30.0);
        CHECK(oob_peak_db(s, 3.0) == -40.0);
        const double total = 1e-4 + 0.1 + 1.0 + 0.1 + 1e-3 + 1e-5;
        CHECK(oob_power_fraction(s, 1.0) == doctest::Approx((1e-4 + 1e-3 + 1e-5) / total));
        s.series[0].second.pop_back();
        CHECK_THROWS_AS(s.validate(), InvalidArgument);
        CHECK_THROWS_AS(s.column("missing"), InvalidArgument);
    }

    TEST_CASE("FT sweep")
    {
        const LatticeConfig base{10, 8};
        ChannelRecipe rc;
        rc.spread_product = 0.02;
        rc.num_paths = 4;
        const auto s = sweep_ft(base, {1.25, 1.3, 1.5}, {{1, 1}, {1, 3}}, rc, 100.0, quick_options());
        s.validate();
        REQUIRE(s.warnings.size() >= 1);
        CHECK(s.warnings[0].find("1.3") != std::string::npos);
        const auto &conv = s.column("conventional_db");
        const auto &eq = s.column("pops_dphi1_dpsi1_db");
        const auto &uneq = s.column("pops_dphi1_dpsi3_db");
        CHECK(std::isnan(eq[1]));
        CHECK(std::isnan(conv[1]));
        for (std::size_t i : {0u, 2u})
        {
            CAPTURE(i);
            LatticeConfig cfg = base;
            cfg.symbol_len = int(std::lround(s.axis_values[i] * 8));
            const ChannelSpec ch = rc.realize(cfg);
            const double direct = to_db(sinr(make_conventional_tx(cfg), make_conventional_rx(cfg), ch, cfg, 100.0).sinr);
            CHECK(conv[i] == doctest::Approx(direct).epsilon(1e-8));
            CHECK(eq[i] >= conv[i]);
            CHECK(uneq[i] >= eq[i] - 1e-9);
        }
    }

    TEST_CASE("sweeps do not depend on the worker count")
    {
        const LatticeConfig base{10, 8};
        ChannelRecipe rc;
        auto run = [&] { return sweep_ft(base, {1.25, 1.5, 2.0}, {{1, 1}}, rc, 50.0, quick_options()); };
        setenv("POPS_THREADS", "1", 1);
        const auto a = run();
        setenv("POPS_THREADS", "3", 1);
        const auto b = run();
        unsetenv("POPS_THREADS");
        CHECK(a.series == b.series);
    }

    TEST_CASE("Doppler-delay sweep")
    {
        const LatticeConfig base{20, 16};
        const auto s = sweep_doppler_delay(base, 0.01, {0.0, 0.05, 0.2, 1.0}, {4, 8}, 10, 4, 0.5, 100.0,
                                           quick_options());
        s.validate();
        const auto &tm = s.column("delay_spread_samples");
        CHECK(tm == std::vector<double>{10.0, 3.0, 1.0, 0.0});
        for (int cp : {4, 8})
        {
            CAPTURE(cp);
            LatticeConfig cfg = base;
            cfg.symbol_len = 16 + cp;
            const auto &pops_v = s.column("pops_cp" + std::to_string(cp) + "_db");
            const auto &conv = s.column("conventional_cp" + std::to_string(cp) + "_db");
            for (std::size_t i = 0; i < tm.size(); ++i)
            {
                const ChannelSpec ch{make_separable(long(tm[i]), s.axis_values[i] / 16.0, 4, 0.5)};
                const double direct =
                    to_db(sinr(make_conventional_tx(cfg), make_conventional_rx(cfg), ch, cfg, 100.0).sinr);
                CHECK(conv[i] == doctest::Approx(direct).epsilon(1e-8));
                CHECK(pops_v[i] >= conv[i] - 1e-9);
            }
            // The Bd = 0 endpoint is a pure delay-spread channel.
            const ChannelSpec pure{make_separable(10, 0.0, 4, 0.5)};
            const auto r = run_pops(cfg, pure, quick_options().make(cfg, 100.0));
            CHECK(pops_v[0] == doctest::Approx(to_db(r.report.sinr)).epsilon(1e-12));
        }
        CHECK_THROWS_AS(sweep_doppler_delay(base, 0.0, {0.1}, {4}, 10, 4, 0.5, 100.0, quick_options()),
                        InvalidArgument);
    }

    TEST_CASE("synchronization sweeps")
    {
        const LatticeConfig cfg{20, 16};
        const ChannelSpec ch{make_separable_balanced(cfg, 0.01, 4, 0.5)};
        const auto res = run_pops(cfg, ch, quick_options().make(cfg, 100.0));

        const auto ts = sweep_time_sync(res, cfg, ch, {-0.25, 0.0, 0.1}, TimeUnit::symbols, {2, 4}, 100.0);
        ts.validate();
        CHECK(ts.column("offset_applied_samples") == std::vector<double>{-5.0, 0.0, 2.0});
        CHECK(ts.column("pops_db")[1] == doctest::Approx(to_db(res.report.sinr)).epsilon(1e-12));
        const auto &shifted = ts.column("pops_db");
        CHECK(shifted[0] == doctest::Approx(to_db(sinr(res.tx_opt, shift(res.rx_opt, -5), ch, cfg, 100.0).sinr)));
        for (int cp : {2, 4})
        {
            const LatticeConfig c{16 + cp, 16};
            CHECK(ts.column("conventional_cp" + std::to_string(cp) + "_db")[1] ==
                  doctest::Approx(to_db(sinr_conventional(c, ch, 100.0).sinr)).epsilon(1e-8));
        }

        const auto fs = sweep_freq_sync(res, cfg, ch, {0.0, 0.05}, FrequencyUnit::subcarriers, {4}, 100.0);
        CHECK(fs.column("pops_db")[0] == doctest::Approx(to_db(res.report.sinr)).epsilon(1e-12));
        CHECK(fs.column("pops_db")[1] < fs.column("pops_db")[0]);
        // Hertz axis: with Ts = 1, an offset of 0.05/Q Hz is 0.05 subcarrier spacings.
        const auto fh = sweep_freq_sync(res, cfg, ch, {0.05 / 16.0}, FrequencyUnit::hertz, {4}, 100.0);
        CHECK(fh.column("pops_db")[0] == doctest::Approx(fs.column("pops_db")[1]).epsilon(1e-12));
    }

    TEST_CASE("mismatch sweep diagonal")
    {
        const LatticeConfig cfg{20, 16};
        const auto s = sweep_mismatch(cfg, {0.01, 0.001}, {0.001, 0.005, 0.01}, 4, 0.5, 100.0, quick_options());
        s.validate();
        const auto &a = s.column("optimized_at_0.01_db");
        const auto &b = s.column("optimized_at_0.001_db");
        auto direct = [&](double product) {
            const ChannelSpec ch{make_separable_balanced(cfg, product, 4, 0.5)};
            return to_db(run_pops(cfg, ch, quick_options().make(cfg, 100.0)).report.sinr);
        };
        CHECK(a[2] == doctest::Approx(direct(0.01)).epsilon(1e-12));
        CHECK(b[0] == doctest::Approx(direct(0.001)).epsilon(1e-12));
        CHECK_THROWS_AS(sweep_mismatch(cfg, {}, {0.01}, 4, 0.5, 100.0, quick_options()), InvalidArgument);
    }

    TEST_CASE("initialization study")
    {
        const LatticeConfig cfg{10, 8};
        const ChannelSpec ch{make_separable_balanced(cfg, 0.02, 4, 0.5)};
        const auto inits = standard_initializations(cfg);
        REQUIRE(inits.size() >= 10);
        for (const auto &i : inits)
        {
            CAPTURE(i.name);
            CHECK(i.waveform.norm() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(i.waveform.size() == cfg.tx_length());
        }
        const auto a = initialization_study(cfg, ch, 100.0, inits, quick_options());
        const auto b = initialization_study(cfg, ch, 100.0, inits, quick_options());
        a.validate();
        CHECK(a.series == b.series);
        const auto &final_db = a.column("pops_db");
        const auto &bound = a.column("upper_bound_db");
        for (std::size_t i = 0; i < final_db.size(); ++i)
        {
            CAPTURE(inits[i].name);
            REQUIRE(std::isfinite(bound[i]));
            CHECK(final_db[i] <= bound[i] + 1e-9);
        }
        CHECK_THROWS_AS(initialization_study(cfg, ch, 100.0, {inits[0]}, quick_options()), InvalidArgument);

        // A cap below the active dimension leaves the bound column empty with a warning.
        const auto capped = initialization_study(cfg, ch, 100.0, {inits[0], inits[1]}, quick_options(), 4);
        CHECK(std::isnan(capped.column("upper_bound_db")[0]));
        CHECK(!capped.warnings.empty());
    }

    TEST_CASE("initializer and channel recipes")
    {
        const LatticeConfig cfg{20, 16, 1.0, 2, 1};
        InitSpec spec;
        CHECK(spec.make(cfg) == default_init(cfg));
        spec.kind = InitSpec::Kind::conventional;
        CHECK_THROWS_AS(spec.make(cfg), InvalidArgument);
        spec.kind = InitSpec::Kind::hermite;
        spec.hermite_coefficients = {1.0, 0.0, 0.5};
        CHECK(spec.make(cfg) == make_hermite_init(cfg, spec.hermite_coefficients));
        CHECK(spec.describe() == "hermite[1,0,0.5]");
        spec.kind = InitSpec::Kind::gaussian;
        CHECK(spec.make(cfg) == make_gaussian_init(cfg, 19.5, 1.0 / hermite_isotropic_scale(cfg)));
        spec.kind = InitSpec::Kind::rrc;
        CHECK(spec.make(cfg) == make_rrc_init(cfg, 0.5));
        CHECK(init_kind_from_string("gaussian") == InitSpec::Kind::gaussian);
        CHECK_THROWS_WITH_AS(init_kind_from_string("sinc"), doctest::Contains("pops.init"), InvalidArgument);

        ChannelRecipe rc;
        CHECK(std::holds_alternative<SeparableChannel>(rc.realize(cfg)));
        rc.balanced = false;
        CHECK(describe(rc.realize(cfg)) == describe(ChannelSpec{ideal_channel()}));
    }
}
