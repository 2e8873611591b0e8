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

#include "pops/kernel.hpp"

#include "pops/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

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

void check_window(long out_len)
{
    if (out_len < 1)
        throw InvalidArgument("kernel window length must be >= 1");
}

// Table of rho(lag) for lag in [-(len-1), len-1] when rho is path independent.
std::vector<cplx> bessel_table(const ChannelView &ch, long len)
{
    std::vector<cplx> t(std::size_t(2 * len - 1));
    for (long r = -(len - 1); r <= len - 1; ++r)
        t[std::size_t(r + len - 1)] = ch.rho(0, r);
    return t;
}

CMatrix assemble_useful(const Waveform &w, const ChannelView &ch, long out_offset, long out_len)
{
    CMatrix ks = CMatrix::Zero(out_len, out_len);
    if (ch.bessel)
    {
        // Power-weighted sum of shifted outer products, then the Toeplitz J0 mask.
        for (const auto &t : ch.terms)
        {
            CVector u(out_len);
            for (long i = 0; i < out_len; ++i)
                u(i) = w.at(out_offset + i - t.delay);
            if (u.squaredNorm() == 0.0)
                continue;
            ks.selfadjointView<Eigen::Lower>().rankUpdate(u, t.power);
        }
        CMatrix full = ks.selfadjointView<Eigen::Lower>();
        ks.swap(full);
        const auto tab = bessel_table(ch, out_len);
        for (long b = 0; b < out_len; ++b)
            for (long a = 0; a < out_len; ++a)
                ks(a, b) *= tab[std::size_t(a - b + out_len - 1)];
        return ks;
    }
    // Path list: rho_k(a-b) factors as e_k(a) conj(e_k(b)), one rank-1 term per path.
    for (std::size_t k = 0; k < ch.terms.size(); ++k)
    {
        const auto &t = ch.terms[k];
        CVector u(out_len);
        for (long i = 0; i < out_len; ++i)
        {
            const long a = out_offset + i;
            const cplx s = w.at(a - t.delay);
            u(i) = s == cplx{} ? s : s * ch.rho(k, a);
        }
        if (u.squaredNorm() == 0.0)
            continue;
        ks.selfadjointView<Eigen::Lower>().rankUpdate(u, t.power);
    }
    CMatrix full = ks.selfadjointView<Eigen::Lower>();
    return full;
}

// Sum over all symbol shifts n and all subcarriers of the translated outer
// products. Only entries with a = b (mod Q) survive the subcarrier sum.
CMatrix assemble_comb(const Waveform &w, const ChannelView &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len)
{
    const long n_len = cfg.symbol_len;
    const long q_len = cfg.num_subcarriers;
    CMatrix g = CMatrix::Zero(out_len, out_len);
    std::vector<cplx> tab;
    if (ch.bessel)
        tab = bessel_table(ch, out_len);

    for (long i = 0; i < out_len; ++i)
    {
        const long a = out_offset + i;
        for (long j = i; j < out_len; j += q_len)
        {
            const long b = out_offset + j;
            cplx acc{};
            for (std::size_t k = 0; k < ch.terms.size(); ++k)
            {
                const auto &t = ch.terms[k];
                // Shifts n for which both a - d - nN and b - d - nN fall in the support.
                const long lo_a = ceil_div(a - t.delay - (w.end() - 1), n_len);
                const long hi_a = floor_div(a - t.delay - w.offset(), n_len);
                const long lo_b = ceil_div(b - t.delay - (w.end() - 1), n_len);
                const long hi_b = floor_div(b - t.delay - w.offset(), n_len);
                const long lo = std::max(lo_a, lo_b);
                const long hi = std::min(hi_a, hi_b);
                if (lo > hi)
                    continue;
                cplx s{};
                for (long n = lo; n <= hi; ++n)
                    s += w.at(a - t.delay - n * n_len) * std::conj(w.at(b - t.delay - n * n_len));
                const cplx r = ch.bessel ? tab[std::size_t(i - j + out_len - 1)] : ch.rho(k, a - b);
                acc += t.power * s * r;
            }
            acc *= double(q_len);
            g(i, j) = acc;
            g(j, i) = std::conj(acc);
        }
        g(i, i) = g(i, i).real();
    }
    return g;
}

Orientation orientation_of(const ChannelView &ch)
{
    return ch.reversed_orientation ? Orientation::reversed : Orientation::forward;
}

} // namespace

long select_window(const Waveform &w, const ChannelView &ch, long out_len)
{
    check_window(out_len);
    const long first = w.offset() + ch.min_delay();
    const long last = w.end() - 1 + ch.max_delay();
    // Diagonal of the useful kernel on [first, last].
    const long span = last - first + 1;
    std::vector<double> diag(std::size_t(span), 0.0);
    for (const auto &t : ch.terms)
        for (long q = w.offset(); q < w.end(); ++q)
            diag[std::size_t(q + t.delay - first)] += t.power * std::norm(w.at(q));

    // Sliding sums over every window that intersects [first, last].
    const long o_lo = first - out_len + 1;
    const long o_hi = last;
    auto energy = [&](long o) {
        double e = 0.0;
        const long lo = std::max(o, first);
        const long hi = std::min(o + out_len - 1, last);
        for (long q = lo; q <= hi; ++q)
            e += diag[std::size_t(q - first)];
        return e;
    };
    std::vector<double> e(std::size_t(o_hi - o_lo + 1));
    double best = -1.0;
    for (long o = o_lo; o <= o_hi; ++o)
    {
        e[std::size_t(o - o_lo)] = energy(o);
        best = std::max(best, e[std::size_t(o - o_lo)]);
    }
    for (long o = o_lo; o <= o_hi; ++o)
        if (e[std::size_t(o - o_lo)] >= best * (1.0 - 1e-12))
            return o;
    return o_lo;
}

KernelMatrix build_ks(const Waveform &w, const ChannelView &ch, long out_offset, long out_len)
{
    check_window(out_len);
    if (ch.terms.empty())
        throw InvalidArgument("channel has no paths");
    KernelMatrix k;
    k.data = assemble_useful(w, ch, out_offset, out_len);
    k.offset = out_offset;
    k.kind = KernelKind::useful;
    k.built_from = fingerprint(w);
    k.sign = orientation_of(ch);
    return k;
}

KernelPair build_kernels(const Waveform &w, const ChannelView &ch, const LatticeConfig &cfg, long out_offset,
                         long out_len)
{
    cfg.validate();
    KernelPair p;
    p.useful = build_ks(w, ch, out_offset, out_len);
    p.interference = p.useful;
    p.interference.kind = KernelKind::interference;
    p.interference.data = assemble_comb(w, ch, cfg, out_offset, out_len) - p.useful.data;
    return p;
}

KernelMatrix build_ki(const Waveform &w, const ChannelView &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len)
{
    return build_kernels(w, ch, cfg, out_offset, out_len).interference;
}

KernelMatrix build_ks(const Waveform &w, const ChannelSpec &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len)
{
    return build_ks(w, make_view(ch, cfg.sample_period), out_offset, out_len);
}

KernelMatrix build_ki(const Waveform &w, const ChannelSpec &ch, const LatticeConfig &cfg, long out_offset,
                      long out_len)
{
    return build_ki(w, make_view(ch, cfg.sample_period), cfg, out_offset, out_len);
}

KernelMatrix build_kin(const KernelMatrix &ki, double w_other_norm_sq, double snr)
{
    if (!(snr > 0.0))
        throw InvalidArgument("snr must be positive");
    KernelMatrix out = ki;
    out.kind = KernelKind::interference_plus_noise;
    if (std::isinf(snr))
        return out;
    out.data.diagonal().array() += w_other_norm_sq / snr;
    return out;
}

CVector window_vector(const KernelMatrix &k, const Waveform &x)
{
    CVector v(k.size());
    for (long i = 0; i < k.size(); ++i)
        v(i) = x.at(k.offset + i);
    return v;
}

double quadratic_form(const KernelMatrix &k, const Waveform &x)
{
    const CVector v = window_vector(k, x);
    return v.dot(k.data * v).real();
}

} // namespace pops
