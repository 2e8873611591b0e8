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

#include "pops/lattice.hpp"

#include "pops/errors.hpp"
#include "pops/hash.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pops
{

namespace
{

// exp(j*2*pi*k/period) with k reduced first, so integer multiples of the
// period give exactly 1.
cplx unit_root(long k, long period)
{
    long r = k % period;
    if (r < 0)
        r += period;
    if (r == 0)
        return {1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(period));
}

Waveform unit_normalized(std::vector<cplx> samples, long offset)
{
    double e = 0.0;
    for (const auto &s : samples)
        e += std::norm(s);
    if (!(e > 0.0) || !std::isfinite(e))
        throw InvalidArgument("waveform has zero or non-finite energy");
    const double g = 1.0 / std::sqrt(e);
    for (auto &s : samples)
        s *= g;
    return Waveform(std::move(samples), offset);
}

} // namespace

void LatticeConfig::validate() const
{
    if (num_subcarriers < 1)
        throw InvalidArgument("lattice.Q must be >= 1");
    if (symbol_len < num_subcarriers)
        throw InvalidArgument("lattice.N must be >= lattice.Q (density Q/N <= 1)");
    if (!(sample_period > 0.0) || !std::isfinite(sample_period))
        throw InvalidArgument("lattice.Ts must be positive");
    if (tx_symbols < 1)
        throw InvalidArgument("lattice.Dphi must be >= 1");
    if (rx_symbols < 1)
        throw InvalidArgument("lattice.Dpsi must be >= 1");
}

Waveform::Waveform(std::vector<cplx> samples, long offset)
    : samples_(std::move(samples)), offset_(offset)
{
    if (samples_.empty())
        throw InvalidArgument("waveform must have at least one sample");
    for (const auto &s : samples_)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw InvalidArgument("waveform samples must be finite");
}

double Waveform::norm_sq() const
{
    double e = 0.0;
    for (const auto &s : samples_)
        e += std::norm(s);
    return e;
}

double Waveform::norm() const { return std::sqrt(norm_sq()); }

cplx inner(const Waveform &a, const Waveform &b)
{
    const long lo = std::max(a.offset(), b.offset());
    const long hi = std::min(a.end(), b.end());
    cplx acc{};
    for (long q = lo; q < hi; ++q)
        acc += std::conj(a.at(q)) * b.at(q);
    return acc;
}

std::vector<cplx> restrict_to(const Waveform &w, long offset, long length)
{
    std::vector<cplx> out(std::size_t(std::max(0L, length)));
    const long lo = std::max(offset, w.offset());
    const long hi = std::min(offset + length, w.end());
    for (long q = lo; q < hi; ++q)
        out[std::size_t(q - offset)] = w.at(q);
    return out;
}

Waveform shift(const Waveform &w, long p)
{
    return Waveform(std::vector<cplx>(w.samples().begin(), w.samples().end()), w.offset() + p);
}

Waveform modulate(const Waveform &w, long subcarrier, int num_subcarriers)
{
    if (num_subcarriers < 1)
        throw InvalidArgument("modulate: number of subcarriers must be >= 1");
    std::vector<cplx> out(w.samples().begin(), w.samples().end());
    for (long i = 0; i < w.size(); ++i)
        out[std::size_t(i)] *= unit_root(subcarrier * (w.offset() + i), num_subcarriers);
    return Waveform(std::move(out), w.offset());
}

Waveform modulate_fractional(const Waveform &w, double df, int num_subcarriers)
{
    if (num_subcarriers < 1)
        throw InvalidArgument("modulate_fractional: number of subcarriers must be >= 1");
    std::vector<cplx> out(w.samples().begin(), w.samples().end());
    if (df == 0.0)
        return Waveform(std::move(out), w.offset());
    for (long i = 0; i < w.size(); ++i)
    {
        const double q = double(w.offset() + i);
        out[std::size_t(i)] *= std::polar(1.0, 2.0 * std::numbers::pi * df * q / double(num_subcarriers));
    }
    return Waveform(std::move(out), w.offset());
}

Waveform time_reverse(const Waveform &w)
{
    std::vector<cplx> out(w.samples().rbegin(), w.samples().rend());
    return Waveform(std::move(out), -(w.offset() + w.size() - 1));
}

Waveform lattice_pulse(const Waveform &w, long subcarrier, long symbol, const LatticeConfig &cfg)
{
    return modulate(shift(w, symbol * cfg.symbol_len), subcarrier, cfg.num_subcarriers);
}

Waveform scaled(const Waveform &w, cplx factor)
{
    std::vector<cplx> out(w.samples().begin(), w.samples().end());
    for (auto &s : out)
        s *= factor;
    return Waveform(std::move(out), w.offset());
}

Waveform normalize_phase_fixed(const Waveform &w)
{
    const auto s = w.samples();
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        const double a = std::abs(s[i]);
        if (a > amax)
        {
            amax = a;
            imax = i;
        }
    }
    const double e = w.norm_sq();
    if (!(e > 0.0))
        throw InvalidArgument("cannot normalize a zero waveform");
    const cplx rot = std::conj(s[imax]) / amax / std::sqrt(e);
    std::vector<cplx> out(s.begin(), s.end());
    for (auto &x : out)
        x *= rot;
    out[imax] = cplx(std::abs(out[imax]), 0.0);
    return Waveform(std::move(out), w.offset());
}

double aligned_distance(const Waveform &a, const Waveform &b)
{
    // ||a - e^{jt} b||^2 = |a|^2 + |b|^2 - 2|<b,a>| at the optimal t.
    const double d2 = a.norm_sq() + b.norm_sq() - 2.0 * std::abs(inner(b, a));
    if (d2 > 1e-20)
        return std::sqrt(d2);
    // Cancellation-prone regime: evaluate the aligned difference directly.
    const cplx c = inner(b, a);
    const cplx rot = std::abs(c) > 0.0 ? c / std::abs(c) : cplx{1.0, 0.0};
    const long lo = std::min(a.offset(), b.offset());
    const long hi = std::max(a.end(), b.end());
    double acc = 0.0;
    for (long q = lo; q < hi; ++q)
        acc += std::norm(a.at(q) - rot * b.at(q));
    return std::sqrt(acc);
}

std::string fingerprint(const Waveform &w)
{
    const long off = w.offset();
    std::uint64_t h = fnv1a64(&off, sizeof off);
    h = fnv1a64(w.samples().data(), w.samples().size() * sizeof(cplx), h);
    return to_hex(h);
}

Waveform make_conventional_tx(const LatticeConfig &cfg)
{
    cfg.validate();
    const int n = cfg.symbol_len;
    return Waveform(std::vector<cplx>(std::size_t(n), cplx(1.0 / std::sqrt(double(n)), 0.0)), -long(cfg.guard_len()));
}

Waveform make_conventional_rx(const LatticeConfig &cfg)
{
    cfg.validate();
    const int q = cfg.num_subcarriers;
    return Waveform(std::vector<cplx>(std::size_t(q), cplx(1.0 / std::sqrt(double(q)), 0.0)), 0);
}

double hermite_isotropic_scale(const LatticeConfig &cfg)
{
    return std::sqrt(2.0 * std::numbers::pi / (double(cfg.symbol_len) * double(cfg.num_subcarriers)));
}

Waveform make_hermite_init(const LatticeConfig &cfg, std::span<const double> coefficients)
{
    return make_hermite_init(cfg, coefficients, hermite_isotropic_scale(cfg));
}

Waveform make_hermite_init(const LatticeConfig &cfg, std::span<const double> coefficients, double scale)
{
    cfg.validate();
    if (coefficients.empty() || coefficients.size() > 8)
        throw InvalidArgument("hermite init takes between 1 and 8 coefficients");
    if (std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return c == 0.0; }))
        throw InvalidArgument("hermite init needs at least one nonzero coefficient");
    if (!(scale > 0.0))
        throw InvalidArgument("hermite dilation must be positive");

    const long len = cfg.tx_length();
    const double center = 0.5 * double(len - 1);
    const double h0_norm = std::pow(std::numbers::pi, -0.25);
    std::vector<cplx> out(static_cast<std::size_t>(len));
    for (long i = 0; i < len; ++i)
    {
        const double t = (double(i) - center) * scale;
        // Orthonormal Hermite functions by the three-term recurrence.
        double prev = 0.0;
        double cur = h0_norm * std::exp(-0.5 * t * t);
        double acc = coefficients[0] * cur;
        for (std::size_t n = 1; n < coefficients.size(); ++n)
        {
            const double next = std::sqrt(2.0 / double(n)) * t * cur - std::sqrt(double(n - 1) / double(n)) * prev;
            prev = cur;
            cur = next;
            acc += coefficients[n] * cur;
        }
        out[std::size_t(i)] = acc;
    }
    return unit_normalized(std::move(out), 0);
}

Waveform make_gaussian_init(const LatticeConfig &cfg, double mean_sample, double sigma_samples)
{
    cfg.validate();
    if (!(sigma_samples > 0.0))
        throw InvalidArgument("gaussian init: sigma must be positive");
    const long len = cfg.tx_length();
    std::vector<cplx> out(static_cast<std::size_t>(len));
    for (long i = 0; i < len; ++i)
    {
        const double d = (double(i) - mean_sample) / sigma_samples;
        out[std::size_t(i)] = std::exp(-0.5 * d * d);
    }
    return unit_normalized(std::move(out), 0);
}

Waveform make_rrc_init(const LatticeConfig &cfg, double rolloff, double symbol_period_samples)
{
    cfg.validate();
    if (!(rolloff >= 0.0 && rolloff <= 1.0))
        throw InvalidArgument("rrc init: rolloff must lie in [0, 1]");
    const double period = symbol_period_samples > 0.0 ? symbol_period_samples : double(cfg.num_subcarriers);
    const double pi = std::numbers::pi;
    const long len = cfg.tx_length();
    const double center = 0.5 * double(len - 1);
    std::vector<cplx> out(static_cast<std::size_t>(len));
    for (long i = 0; i < len; ++i)
    {
        const double x = (double(i) - center) / period;
        double v;
        if (std::abs(x) < 1e-12)
            v = 1.0 - rolloff + 4.0 * rolloff / pi;
        else if (rolloff > 0.0 && std::abs(std::abs(x) - 0.25 / rolloff) < 1e-12)
            v = rolloff / std::sqrt(2.0) *
                ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * rolloff)) + (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * rolloff)));
        else
            v = (std::sin(pi * x * (1.0 - rolloff)) + 4.0 * rolloff * x * std::cos(pi * x * (1.0 + rolloff))) /
                (pi * x * (1.0 - 16.0 * rolloff * rolloff * x * x));
        out[std::size_t(i)] = v;
    }
    return unit_normalized(std::move(out), 0);
}

} // namespace pops
