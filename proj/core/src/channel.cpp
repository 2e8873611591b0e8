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

#include "pops/channel.hpp"

#include "pops/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pops
{

void PathList::validate() const
{
    if (paths.empty())
        throw InvalidArgument("channel.paths: at least one path is required");
    double total = 0.0;
    long prev = 0;
    for (std::size_t k = 0; k < paths.size(); ++k)
    {
        const auto &p = paths[k];
        if (p.delay < 0)
            throw InvalidArgument("channel.paths: delays must be nonnegative");
        if (k > 0 && p.delay < prev)
            throw InvalidArgument("channel.paths: delays must be sorted in increasing order");
        if (!(p.power >= 0.0) || !std::isfinite(p.power))
            throw InvalidArgument("channel.paths: powers must be nonnegative and finite");
        if (!std::isfinite(p.doppler_hz))
            throw InvalidArgument("channel.paths: Doppler frequencies must be finite");
        prev = p.delay;
        total += p.power;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidArgument("channel.paths: powers must sum to 1 (got " + std::to_string(total) + ")");
}

long PathList::max_delay() const
{
    long m = 0;
    for (const auto &p : paths)
        m = std::max(m, p.delay);
    return m;
}

void SeparableChannel::validate() const
{
    if (num_paths < 1)
        throw InvalidArgument("channel.K must be >= 1");
    if (!(decay > 0.0 && decay < 1.0))
        throw InvalidArgument("channel.b must lie in (0, 1)");
    if (delays.size() != std::size_t(num_paths))
        throw InvalidArgument("channel.delays: expected K entries");
    for (std::size_t k = 0; k < delays.size(); ++k)
    {
        if (delays[k] < 0)
            throw InvalidArgument("channel.delays must be nonnegative");
        if (k > 0 && delays[k] <= delays[k - 1])
            throw InvalidArgument("channel.delays must be strictly increasing");
    }
    if (!(sample_period > 0.0))
        throw InvalidArgument("lattice.Ts must be positive");
    if (!(doppler_spread_hz >= 0.0) || !std::isfinite(doppler_spread_hz))
        throw InvalidArgument("channel.doppler_spread must be nonnegative");
    if (!(normalized_doppler() < 1.0))
        throw InvalidArgument("channel.doppler_spread: Bd*Ts must be below 1");
}

std::vector<double> powers(const SeparableChannel &ch)
{
    if (ch.num_paths < 1)
        throw InvalidArgument("channel.K must be >= 1");
    if (!(ch.decay > 0.0 && ch.decay < 1.0))
        throw InvalidArgument("channel.b must lie in (0, 1)");
    const int k_total = ch.num_paths;
    const double denom = 1.0 - std::pow(ch.decay, k_total);
    std::vector<double> out(static_cast<std::size_t>(k_total));
    double bk = 1.0;
    for (int k = 0; k < k_total; ++k)
    {
        out[std::size_t(k)] = (1.0 - ch.decay) * bk / denom;
        bk *= ch.decay;
    }
    return out;
}

double doppler_autocorrelation(const SeparableChannel &ch, long lag)
{
    const double x = std::numbers::pi * ch.normalized_doppler() * std::abs(double(lag));
    if (x == 0.0)
        return 1.0;
    return std::cyl_bessel_j(0.0, x);
}

PathList to_pathlist(const SeparableChannel &ch, int doppler_grid_size)
{
    ch.validate();
    if (doppler_grid_size < 1)
        throw InvalidArgument("doppler grid size must be >= 1");
    const auto pw = powers(ch);
    const int g = doppler_grid_size;
    std::vector<double> nu(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i)
    {
        const int num = 2 * i + 1 - g;
        nu[std::size_t(i)] =
            num == 0 ? 0.0 : 0.5 * ch.doppler_spread_hz * std::sin(std::numbers::pi * double(num) / (2.0 * g));
    }
    PathList out;
    out.paths.reserve(pw.size() * std::size_t(g));
    for (std::size_t k = 0; k < pw.size(); ++k)
        for (int i = 0; i < g; ++i)
            out.paths.push_back({ch.delays[k], nu[std::size_t(i)], pw[k] / double(g)});
    return out;
}

SeparableChannel make_separable(long delay_spread_samples, double normalized_doppler, int num_paths, double decay,
                                double sample_period)
{
    if (delay_spread_samples < 0)
        throw InvalidArgument("channel.delay_spread must be nonnegative");
    if (num_paths < 1)
        throw InvalidArgument("channel.K must be >= 1");
    SeparableChannel ch;
    ch.decay = decay;
    ch.sample_period = sample_period;
    ch.doppler_spread_hz = normalized_doppler / sample_period;
    const long k_eff = std::min<long>(num_paths, delay_spread_samples + 1);
    ch.num_paths = int(k_eff);
    ch.delays.resize(std::size_t(k_eff));
    for (long k = 0; k < k_eff; ++k)
        ch.delays[std::size_t(k)] =
            k_eff == 1 ? 0 : std::lround(double(k) * double(delay_spread_samples) / double(k_eff - 1));
    ch.validate();
    return ch;
}

SeparableChannel make_separable_balanced(const LatticeConfig &cfg, double spread_product, int num_paths, double decay)
{
    cfg.validate();
    if (!(spread_product >= 0.0))
        throw InvalidArgument("channel.spread_product must be nonnegative");
    if (spread_product == 0.0)
        return make_separable(0, 0.0, 1, decay, cfg.sample_period);
    const long tm = std::max(1L, std::lround(std::sqrt(spread_product) * double(cfg.num_subcarriers)));
    return make_separable(tm, spread_product / double(tm), num_paths, decay, cfg.sample_period);
}

PathList ideal_channel() { return PathList{{Path{0, 0.0, 1.0}}}; }

long max_delay(const ChannelSpec &ch)
{
    return std::visit([](const auto &c) { return c.max_delay(); }, ch);
}

void validate(const ChannelSpec &ch)
{
    std::visit([](const auto &c) { c.validate(); }, ch);
}

std::string describe(const ChannelSpec &ch)
{
    std::ostringstream os;
    os.precision(17);
    if (const auto *pl = std::get_if<PathList>(&ch))
    {
        os << "paths:";
        for (const auto &p : pl->paths)
            os << ' ' << p.delay << ':' << p.doppler_hz << ':' << p.power;
    }
    else
    {
        const auto &s = std::get<SeparableChannel>(ch);
        os << "separable: K=" << s.num_paths << " b=" << s.decay << " BdTs=" << s.normalized_doppler() << " delays=";
        for (std::size_t k = 0; k < s.delays.size(); ++k)
            os << (k ? "," : "") << s.delays[k];
    }
    return os.str();
}

long ChannelView::min_delay() const
{
    long m = terms.empty() ? 0 : terms.front().delay;
    for (const auto &t : terms)
        m = std::min(m, t.delay);
    return m;
}

long ChannelView::max_delay() const
{
    long m = terms.empty() ? 0 : terms.front().delay;
    for (const auto &t : terms)
        m = std::max(m, t.delay);
    return m;
}

cplx ChannelView::rho(std::size_t term, long lag) const
{
    if (bessel)
    {
        const double x = bessel_arg * std::abs(double(lag));
        return x == 0.0 ? cplx{1.0, 0.0} : cplx{std::cyl_bessel_j(0.0, x), 0.0};
    }
    const double f = terms[term].doppler_cycles;
    if (f == 0.0 || lag == 0)
        return {1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * f * double(lag));
}

ChannelView ChannelView::reversed() const
{
    ChannelView out = *this;
    out.reversed_orientation = !reversed_orientation;
    for (auto &t : out.terms)
    {
        t.delay = -t.delay;
        t.doppler_cycles = -t.doppler_cycles;
    }
    return out;
}

ChannelView make_view(const ChannelSpec &ch, double sample_period)
{
    validate(ch);
    ChannelView v;
    if (const auto *pl = std::get_if<PathList>(&ch))
    {
        for (const auto &p : pl->paths)
            if (p.power > 0.0)
                v.terms.push_back({p.delay, p.power, p.doppler_hz * sample_period});
    }
    else
    {
        const auto &s = std::get<SeparableChannel>(ch);
        const auto pw = powers(s);
        for (std::size_t k = 0; k < pw.size(); ++k)
            v.terms.push_back({s.delays[k], pw[k], 0.0});
        v.bessel = true;
        v.bessel_arg = std::numbers::pi * s.normalized_doppler();
    }
    if (v.terms.empty())
        throw InvalidArgument("channel has no path with positive power");
    return v;
}

} // namespace pops
