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

#include "pops/errors.hpp"
#include "pops/kernel.hpp"
#include "pops/montecarlo.hpp"
#include "pops/optimizer.hpp"
#include "pops/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pops::tools
{

namespace
{

std::string short_text(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double relative_gap(double a, double b)
{
    if (a == b)
        return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

CheckOutcome compare(std::string name, double value, double reference, double tolerance)
{
    CheckOutcome c{std::move(name), false, value, reference, tolerance, {}};
    const double gap = relative_gap(value, reference);
    c.passed = gap <= tolerance;
    c.detail = "relative gap " + short_text(gap);
    return c;
}

// Finite stand-in used where an identity is checked on the noise-free quotient
// but a solver needs an invertible denominator.
double working_snr(double snr) { return std::isinf(snr) ? 1e6 : snr; }

} // namespace

std::vector<CheckOutcome> run_checks(const Scenario &sc)
{
    std::vector<CheckOutcome> out;
    const LatticeConfig &lat = sc.lattice;
    const ChannelSpec ch = sc.channel.realize(lat);
    const double snr = working_snr(sc.snr);

    LatticeConfig one = lat;
    one.tx_symbols = one.rx_symbols = 1;
    {
        const SinrReport closed = sinr_conventional(one, ch, snr);
        const SinrReport kernel = sinr(make_conventional_tx(one), make_conventional_rx(one), ch, one, snr);
        const double ps_gap = relative_gap(closed.ps, kernel.ps);
        const double pi_gap = std::abs(closed.pi - kernel.pi);
        CheckOutcome c{"closed_form_vs_kernel", false, closed.sinr, kernel.sinr, 1e-8, {}};
        c.passed = ps_gap <= 1e-8 && pi_gap <= std::max(1e-8 * kernel.pi, 1e-12 * kernel.ps);
        c.detail = "useful power gap " + short_text(ps_gap) + ", interference gap " + short_text(pi_gap);
        out.push_back(c);
    }

    const Waveform tx = sc.pops.init.make(lat);
    LatticeConfig swapped = lat;
    std::swap(swapped.tx_symbols, swapped.rx_symbols);
    const Waveform rx = make_gaussian_init(swapped, 0.5 * double(lat.rx_length() - 1),
                                           0.8 / hermite_isotropic_scale(lat));
    {
        const SinrReport direct = sinr(tx, rx, ch, lat, snr);
        out.push_back(compare("duality_role_swapped", sinr_role_swapped(tx, rx, ch, lat, snr).sinr, direct.sinr, 1e-10));
        out.push_back(
            compare("duality_time_reversed", sinr_time_reversed(tx, rx, ch, lat, snr).sinr, direct.sinr, 1e-10));
    }

    {
        const ChannelView view = make_view(ch, lat.sample_period);
        const long rx_off = select_window(tx, view, lat.rx_length());
        const KernelPair k = build_kernels(tx, view, lat, rx_off, lat.rx_length());
        CMatrix kin = k.interference.data;
        kin.diagonal().array() += tx.norm_sq() / snr;
        std::vector<double> values;
        CheckOutcome c{"solver_agreement", true, 0.0, 0.0, 1e-6, {}};
        for (Solver s : {Solver::rayleigh, Solver::gep, Solver::whitening})
        {
            try
            {
                values.push_back(half_step(s, k.useful.data, kin).sinr);
            }
            catch (const NumericalError &e)
            {
                c.passed = false;
                c.detail = to_string(s) + ": " + e.what();
            }
        }
        if (values.size() == 3)
        {
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            c.value = *lo;
            c.reference = *hi;
            const double gap = relative_gap(*lo, *hi);
            c.passed = gap <= c.tolerance;
            c.detail = "relative spread " + short_text(gap);
        }
        out.push_back(c);
    }

    {
        McConfig mc = sc.montecarlo;
        mc.trials = std::min<long>(mc.trials, 4000);
        const Waveform ctx = make_conventional_tx(one), crx = make_conventional_rx(one);
        const McResult est = estimate_sinr(ctx, crx, ch, one, sc.snr, mc);
        const double analytic = sinr(ctx, crx, ch, one, sc.snr).sinr;
        CheckOutcome c{"montecarlo_reduced", false, est.sinr, analytic, 3.0 * est.standard_error, {}};
        c.passed = (std::isinf(analytic) && std::isinf(est.sinr)) ||
                   std::abs(est.sinr - analytic) <= 3.0 * est.standard_error + 1e-12 * analytic;
        c.detail = std::to_string(mc.trials) + " trials, |difference| / SE = " +
                   short_text(std::abs(est.sinr - analytic) / est.standard_error);
        out.push_back(c);
    }
    return out;
}

} // namespace pops::tools
