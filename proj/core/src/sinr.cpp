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

#include "pops/sinr.hpp"

#include "pops/errors.hpp"

#include <cmath>
#include <limits>

namespace pops
{

SinrReport make_report(double ps, double pi, double snr)
{
    if (!(snr > 0.0))
        throw InvalidArgument("snr must be positive");
    SinrReport r;
    r.snr = snr;
    r.ps = std::max(ps, 0.0);
    r.pi = std::max(pi, 0.0);
    if (r.pi <= interference_floor * (r.ps + r.pi))
        r.pi = 0.0;
    r.pn = std::isinf(snr) ? 0.0 : 1.0 / snr;
    const double inf = std::numeric_limits<double>::infinity();
    const double den = r.pi + r.pn;
    r.sinr = den > 0.0 ? r.ps / den : (r.ps > 0.0 ? inf : 0.0);
    r.sir = r.pi > 0.0 ? r.ps / r.pi : (r.ps > 0.0 ? inf : 0.0);
    return r;
}

SinrReport sinr(const Waveform &tx, const Waveform &rx, const ChannelView &ch, const LatticeConfig &cfg, double snr)
{
    const double etx = tx.norm_sq();
    const double erx = rx.norm_sq();
    if (!(etx > 0.0) || !(erx > 0.0))
        throw InvalidArgument("sinr: waveforms must be nonzero");
    const auto k = build_kernels(tx, ch, cfg, rx.offset(), rx.size());
    const double scale = etx * erx;
    return make_report(quadratic_form(k.useful, rx) / scale, quadratic_form(k.interference, rx) / scale, snr);
}

SinrReport sinr(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg, double snr)
{
    return sinr(tx, rx, make_view(ch, cfg.sample_period), cfg, snr);
}

SinrReport sinr_role_swapped(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg,
                             double snr)
{
    const double etx = tx.norm_sq();
    const double erx = rx.norm_sq();
    if (!(etx > 0.0) || !(erx > 0.0))
        throw InvalidArgument("sinr: waveforms must be nonzero");
    const auto view = make_view(ch, cfg.sample_period).reversed();
    const auto k = build_kernels(rx, view, cfg, tx.offset(), tx.size());
    const double scale = etx * erx;
    return make_report(quadratic_form(k.useful, tx) / scale, quadratic_form(k.interference, tx) / scale, snr);
}

SinrReport sinr_time_reversed(const Waveform &tx, const Waveform &rx, const ChannelSpec &ch, const LatticeConfig &cfg,
                              double snr)
{
    return sinr(time_reverse(rx), time_reverse(tx), ch, cfg, snr);
}

SinrReport sinr_conventional(const LatticeConfig &cfg, const ChannelSpec &ch, double snr)
{
    cfg.validate();
    const auto view = make_view(ch, cfg.sample_period);
    const long n_len = cfg.symbol_len;
    const long q_len = cfg.num_subcarriers;
    double ps = 0.0;
    for (std::size_t k = 0; k < view.terms.size(); ++k)
    {
        const auto &t = view.terms[k];
        const long overlap = std::clamp(std::min(q_len, n_len - t.delay), 0L, q_len);
        if (overlap == 0)
            continue;
        double acc = double(overlap);
        for (long r = 1; r < overlap; ++r)
            acc += 2.0 * double(overlap - r) * view.rho(k, r).real();
        ps += t.power * acc / (double(n_len) * double(q_len));
    }
    // The receive pulse is no longer than Q, so the comb leaves only its diagonal
    // and useful plus interference power is Q/N for every unit-power channel.
    return make_report(ps, cfg.density() - ps, snr);
}

CMatrix noise_correlation(const Waveform &rx, const LatticeConfig &cfg,
                          const std::vector<std::pair<long, long>> &positions)
{
    cfg.validate();
    std::vector<Waveform> pulses;
    pulses.reserve(positions.size());
    for (const auto &[m, n] : positions)
        pulses.push_back(lattice_pulse(rx, m, n, cfg));
    const long count = long(pulses.size());
    CMatrix out(count, count);
    for (long i = 0; i < count; ++i)
        for (long j = i; j < count; ++j)
        {
            const cplx v = inner(pulses[std::size_t(i)], pulses[std::size_t(j)]);
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    return out;
}

} // namespace pops
