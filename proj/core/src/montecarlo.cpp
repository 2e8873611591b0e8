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

#include "pops/montecarlo.hpp"

#include "pops/errors.hpp"
#include "pops/hash.hpp"
#include "pops/parallel.hpp"
#include "pops/sinr.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace pops
{

namespace
{

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

// Paths with positive power and the sample period their Doppler refers to.
PathList simulated_paths(const ChannelSpec &ch, const LatticeConfig &cfg, int grid, double &ts)
{
    PathList out;
    if (const auto *pl = std::get_if<PathList>(&ch))
    {
        ts = cfg.sample_period;
        out = *pl;
    }
    else
    {
        const auto &sep = std::get<SeparableChannel>(ch);
        ts = sep.sample_period;
        out = to_pathlist(sep, grid);
    }
    std::erase_if(out.paths, [](const Path &p) { return !(p.power > 0.0); });
    return out;
}

struct DelayGroup
{
    long delay = 0;
    std::vector<std::size_t> paths;
};

} // namespace

std::string to_string(Alphabet a) { return a == Alphabet::qpsk ? "qpsk" : "gaussian"; }

Alphabet alphabet_from_string(const std::string &name)
{
    if (name == "gaussian")
        return Alphabet::gaussian;
    if (name == "qpsk")
        return Alphabet::qpsk;
    throw InvalidArgument("montecarlo.alphabet: unknown value '" + name + "' (expected gaussian or qpsk)");
}

void McConfig::validate() const
{
    if (trials < 1)
        throw InvalidArgument("montecarlo.trials must be >= 1");
    if (doppler_grid_size < 1)
        throw InvalidArgument("montecarlo.doppler_grid must be >= 1");
}

int required_lattice_extent(const Waveform &tx, const Waveform &rx, const LatticeConfig &cfg, const ChannelSpec &ch)
{
    cfg.validate();
    double ts = 0.0;
    const PathList pl = simulated_paths(ch, cfg, 1, ts);
    if (pl.paths.empty())
        return 0;
    long dmin = pl.paths.front().delay, dmax = dmin;
    for (const auto &p : pl.paths)
    {
        dmin = std::min(dmin, p.delay);
        dmax = std::max(dmax, p.delay);
    }
    const long n_len = cfg.symbol_len;
    // Pulse n covers [tx.offset + nN + dmin, tx.end - 1 + nN + dmax] after the channel.
    const long hi = floor_div(rx.end() - 1 - tx.offset() - dmin, n_len);
    const long lo = ceil_div(rx.offset() - (tx.end() - 1) - dmax, n_len);
    if (lo > hi)
        return 0;
    return int(std::max({std::abs(lo), std::abs(hi), 0L}));
}

McResult estimate_sinr(const Waveform &tx_in, const Waveform &rx_in, const ChannelSpec &ch, const LatticeConfig &cfg,
                       double snr, const McConfig &mc)
{
    cfg.validate();
    validate(ch);
    mc.validate();
    if (!(snr > 0.0))
        throw InvalidArgument("snr must be positive");
    const Waveform tx = scaled(tx_in, 1.0 / tx_in.norm());
    const Waveform rx = scaled(rx_in, 1.0 / rx_in.norm());

    const int needed = required_lattice_extent(tx, rx, cfg, ch);
    if (mc.lattice_extent >= 0 && mc.lattice_extent < needed)
        throw InvalidArgument("montecarlo.extent: " + std::to_string(mc.lattice_extent) +
                              " symbols on each side is too small, these waveforms and delays need " +
                              std::to_string(needed));
    const int extent = mc.lattice_extent >= 0 ? mc.lattice_extent : needed;

    double ts = 0.0;
    const PathList pl = simulated_paths(ch, cfg, mc.doppler_grid_size, ts);
    const std::size_t num_paths = pl.paths.size();
    const long q_len = cfg.num_subcarriers, n_len = cfg.symbol_len;
    const long r0 = rx.offset(), lr = rx.size();

    // Paths sharing a delay act through one time-varying gain.
    std::map<long, DelayGroup> by_delay;
    for (std::size_t k = 0; k < num_paths; ++k)
    {
        auto &g = by_delay[pl.paths[k].delay];
        g.delay = pl.paths[k].delay;
        g.paths.push_back(k);
    }
    std::vector<DelayGroup> groups;
    for (auto &[d, g] : by_delay)
        groups.push_back(g);
    const long dmin = groups.empty() ? 0 : groups.front().delay;
    const long dmax = groups.empty() ? 0 : groups.back().delay;

    // Doppler rotation exp(j 2 pi nu Ts q) over the receive support, per path.
    std::vector<std::vector<cplx>> rotation(num_paths, std::vector<cplx>(static_cast<std::size_t>(lr)));
    for (std::size_t k = 0; k < num_paths; ++k)
        for (long i = 0; i < lr; ++i)
            rotation[k][std::size_t(i)] =
                std::polar(1.0, 2.0 * std::numbers::pi * pl.paths[k].doppler_hz * ts * double(r0 + i));
    std::vector<cplx> root(static_cast<std::size_t>(q_len));
    for (long r = 0; r < q_len; ++r)
        root[std::size_t(r)] = r == 0 ? cplx{1.0, 0.0} : std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(q_len));

    // Transmit signal is needed on [e_lo, e_lo + e_len).
    const long e_lo = r0 - dmax;
    const long e_len = lr + dmax - dmin;
    const long n_syms = 2L * extent + 1;
    const bool noisy = !std::isinf(snr);
    const double noise_sd = noisy ? std::sqrt(0.5 / snr) : 0.0;

    std::vector<double> u(static_cast<std::size_t>(mc.trials)), in(u.size()), z(u.size());
    parallel_for(mc.trials, [&](long t) {
        std::mt19937_64 rng(mix_seed(mc.seed, std::uint64_t(t)));
        std::normal_distribution<double> gauss;
        std::uniform_int_distribution<int> bit(0, 1);
        const double half = std::sqrt(0.5);

        std::vector<cplx> gain(num_paths);
        for (std::size_t k = 0; k < num_paths; ++k)
        {
            const double sd = std::sqrt(0.5 * pl.paths[k].power);
            const double re = gauss(rng);
            gain[k] = cplx(sd * re, sd * gauss(rng));
        }
        std::vector<cplx> sym(static_cast<std::size_t>(n_syms * q_len));
        for (auto &a : sym)
        {
            if (mc.alphabet == Alphabet::gaussian)
            {
                const double re = gauss(rng);
                a = cplx(half * re, half * gauss(rng));
            }
            else
            {
                const int b0 = bit(rng);
                a = cplx(b0 ? half : -half, bit(rng) ? half : -half);
            }
        }
        auto symbol = [&](long m, long n) { return sym[std::size_t((n + extent) * q_len + m)]; };

        // Useful and interfering parts of the transmit signal.
        std::vector<cplx> e_use(static_cast<std::size_t>(e_len)), e_int(static_cast<std::size_t>(e_len));
        const cplx a00 = symbol(0, 0);
        for (long i = 0; i < e_len; ++i)
        {
            const long q = e_lo + i;
            const long qm = ((q % q_len) + q_len) % q_len;
            cplx acc{};
            for (long n = -extent; n <= extent; ++n)
            {
                const cplx p = tx.at(q - n * n_len);
                if (p == cplx{})
                    continue;
                cplx s{};
                long idx = 0;
                for (long m = 0; m < q_len; ++m)
                {
                    s += symbol(m, n) * root[std::size_t(idx)];
                    idx += qm;
                    if (idx >= q_len)
                        idx -= q_len;
                }
                if (n == 0)
                    s -= a00;
                acc += p * s;
            }
            e_int[std::size_t(i)] = acc;
            e_use[std::size_t(i)] = a00 * tx.at(q);
        }

        // h(p, q) applied to both parts, then the receive correlation.
        cplx lam_u{}, lam_i{};
        for (long i = 0; i < lr; ++i)
        {
            const long q = r0 + i;
            cplx yu{}, yi{};
            for (const auto &g : groups)
            {
                cplx c{};
                for (std::size_t k : g.paths)
                    c += gain[k] * rotation[k][std::size_t(i)];
                const std::size_t j = std::size_t(q - g.delay - e_lo);
                yu += c * e_use[j];
                yi += c * e_int[j];
            }
            const cplx w = std::conj(rx.samples()[std::size_t(i)]);
            lam_u += w * yu;
            lam_i += w * yi;
        }
        cplx lam_n{};
        if (noisy)
            for (long i = 0; i < lr; ++i)
            {
                const double re = gauss(rng);
                lam_n += std::conj(rx.samples()[std::size_t(i)]) * cplx(noise_sd * re, noise_sd * gauss(rng));
            }
        u[std::size_t(t)] = std::norm(lam_u);
        in[std::size_t(t)] = std::norm(lam_i);
        z[std::size_t(t)] = std::norm(lam_n);
    });

    const double n_trials = double(mc.trials);
    double su = 0.0, si = 0.0, sz = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t)
    {
        su += u[t];
        si += in[t];
        sz += z[t];
    }
    McResult res;
    res.trials = mc.trials;
    res.seed = mc.seed;
    res.lattice_extent = extent;
    res.ps = su / n_trials;
    res.pi = si / n_trials;
    res.pn = sz / n_trials;
    auto mean_se = [&](const std::vector<double> &v, double mean) {
        if (v.size() < 2)
            return std::numeric_limits<double>::infinity();
        double acc = 0.0;
        for (double x : v)
            acc += (x - mean) * (x - mean);
        return std::sqrt(acc / (n_trials - 1.0) / n_trials);
    };
    res.ps_se = mean_se(u, res.ps);
    res.pi_se = mean_se(in, res.pi);

    const double pi_eff = res.pi <= interference_floor * (res.ps + res.pi) ? 0.0 : res.pi;
    const double den = pi_eff + res.pn;
    if (!(den > 0.0))
    {
        res.sinr = std::numeric_limits<double>::infinity();
        res.standard_error = 0.0;
        return res;
    }
    res.sinr = res.ps / den;
    if (mc.trials < 2)
    {
        res.standard_error = std::numeric_limits<double>::infinity();
        return res;
    }
    // Jackknife over trials for the ratio of means.
    const double si_eff = pi_eff > 0.0 ? si : 0.0;
    std::vector<double> loo(u.size());
    double mean = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t)
    {
        loo[t] = (su - u[t]) / ((si_eff > 0.0 ? si_eff - in[t] : 0.0) + (sz - z[t]));
        mean += loo[t];
    }
    mean /= n_trials;
    double acc = 0.0;
    for (double v : loo)
        acc += (v - mean) * (v - mean);
    res.standard_error = std::sqrt((n_trials - 1.0) / n_trials * acc);
    return res;
}

} // namespace pops
