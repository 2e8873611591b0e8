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

#include "pops/optimizer.hpp"

#include "pops/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace pops
{

namespace
{

// Unit norm with the largest-magnitude entry rotated onto the positive real axis.
CVector phase_fixed(const CVector &v)
{
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const double a = std::abs(v(imax));
    if (!(a > 0.0))
        throw NumericalError("solver returned a zero eigenvector");
    CVector out = v * (std::conj(v(imax)) / a);
    out /= out.norm();
    out(imax) = cplx(out(imax).real(), 0.0);
    return out;
}

double quotient(const CMatrix &ks, const CMatrix &kin, const CVector &x)
{
    const double num = x.dot(ks * x).real();
    const double den = x.dot(kin * x).real();
    if (!(den > 0.0))
        return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return num / den;
}

HalfStepResult finish(const CMatrix &ks, const CMatrix &kin, const CVector &v, std::vector<std::string> warnings = {})
{
    HalfStepResult r;
    r.vec = phase_fixed(v);
    r.sinr = quotient(ks, kin, r.vec);
    r.warnings = std::move(warnings);
    return r;
}

void check_pair(const CMatrix &ks, const CMatrix &kin)
{
    if (ks.rows() != ks.cols() || kin.rows() != kin.cols() || ks.rows() != kin.rows() || ks.rows() == 0)
        throw InvalidArgument("half step: kernels must be square and of equal size");
}

// Distance between unit vectors modulo a global phase.
double aligned_change(const CVector &a, const CVector &b)
{
    const double d2 = 2.0 - 2.0 * std::abs(a.dot(b));
    return std::sqrt(std::max(d2, 0.0));
}

} // namespace

std::string to_string(Solver s)
{
    switch (s)
    {
    case Solver::rayleigh:
        return "rayleigh";
    case Solver::gep:
        return "gep";
    case Solver::whitening:
        return "whitening";
    }
    return "?";
}

Solver solver_from_string(const std::string &name)
{
    if (name == "rayleigh")
        return Solver::rayleigh;
    if (name == "gep" || name == "lagrange-gep" || name == "lagrange")
        return Solver::gep;
    if (name == "whitening")
        return Solver::whitening;
    throw InvalidArgument("pops.approach: unknown solver '" + name + "' (expected rayleigh, gep or whitening)");
}

HalfStepResult half_step_rayleigh(const CMatrix &ks, const CMatrix &kin, const CVector *warm_start)
{
    check_pair(ks, kin);
    const Eigen::Index n = ks.rows();
    Eigen::LLT<CMatrix> llt(kin);
    if (llt.info() != Eigen::Success)
        throw NumericalError("rayleigh half step: KIN is not positive definite (use a finite snr, gep or whitening)");

    // Power iteration on KIN^{-1} KS. Near a ping-pong fixed point the warm
    // start is already accurate and a handful of steps suffice.
    CVector x;
    if (warm_start && warm_start->size() == n && warm_start->norm() > 0.0)
        x = *warm_start / warm_start->norm();
    else
    {
        Eigen::Index imax = 0;
        ks.diagonal().real().maxCoeff(&imax);
        x = ks.col(imax);
        if (!(x.norm() > 0.0))
            x = CVector::Ones(n);
        x /= x.norm();
    }
    const int cap = 400;
    double prev_change = -1.0;
    for (int it = 0; it < cap; ++it)
    {
        CVector y = llt.solve(ks * x);
        const double ny = y.norm();
        if (!(ny > 0.0) || !std::isfinite(ny))
            break;
        y /= ny;
        const double change = aligned_change(x, y);
        x = std::move(y);
        if (change <= 1e-14)
            return finish(ks, kin, x);
        if (prev_change > 0.0)
        {
            const double ratio = change / prev_change;
            if (ratio < 0.95 && change * ratio / (1.0 - ratio) <= 1e-13)
                return finish(ks, kin, x);
        }
        prev_change = change;
    }

    // Slow or stalled: solve the whitened Hermitian problem directly.
    CMatrix m = llt.matrixL().solve(ks);
    m = llt.matrixL().solve(m.adjoint().eval()).adjoint().eval();
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success)
        throw NumericalError("rayleigh half step: eigensolver failed");
    const CVector y = es.eigenvectors().col(n - 1);
    const CVector v = llt.matrixU().solve(y);
    return finish(ks, kin, v);
}

HalfStepResult half_step_gep(const CMatrix &ks, const CMatrix &kin)
{
    check_pair(ks, kin);
    const Eigen::Index n = ks.rows();
    Eigen::LLT<CMatrix> llt(kin);
    if (llt.info() == Eigen::Success)
    {
        Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(ks, kin);
        if (es.info() != Eigen::Success)
            throw NumericalError("gep half step: generalized eigensolver failed");
        return finish(ks, kin, es.eigenvectors().col(n - 1));
    }
    // Singular KIN: KS x = mu KIN x is equivalent to KS x = mu' (KS + KIN) x
    // with mu' = mu / (1 + mu), and KS + KIN is definite whenever the pair is regular.
    const CMatrix total = ks + kin;
    Eigen::LLT<CMatrix> llt2(total);
    if (llt2.info() != Eigen::Success)
        throw NumericalError("gep half step: KS + KIN is singular, the quotient is undefined");
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(ks, total);
    if (es.info() != Eigen::Success)
        throw NumericalError("gep half step: generalized eigensolver failed");
    return finish(ks, kin, es.eigenvectors().col(n - 1), {"gep: KIN singular, solved against KS + KIN"});
}

HalfStepResult half_step_whitening(const CMatrix &ks, const CMatrix &kin)
{
    check_pair(ks, kin);
    const Eigen::Index n = ks.rows();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(kin);
    if (es.info() != Eigen::Success)
        throw NumericalError("whitening half step: eigensolver failed");
    Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    if (!(lmax > 0.0))
        throw NumericalError("whitening half step: KIN has no positive eigenvalue");
    std::vector<std::string> warnings;
    const double floor = 1e-14 * lmax;
    int clamped = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (lam(i) < floor)
        {
            lam(i) = floor;
            ++clamped;
        }
    if (clamped > 0)
    {
        std::ostringstream os;
        os << "whitening: " << clamped << " eigenvalue(s) of KIN clamped to 1e-14 * max (ill-conditioned)";
        warnings.push_back(os.str());
    }
    const Eigen::VectorXd inv_sqrt = lam.array().rsqrt();
    const CMatrix t = es.eigenvectors() * inv_sqrt.asDiagonal();
    CMatrix phi = t.adjoint() * ks * t;
    phi = 0.5 * (phi + phi.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es2(phi);
    if (es2.info() != Eigen::Success)
        throw NumericalError("whitening half step: eigensolver failed");
    const CVector v = t * es2.eigenvectors().col(n - 1);
    return finish(ks, kin, v, std::move(warnings));
}

HalfStepResult half_step(Solver s, const CMatrix &ks, const CMatrix &kin, const CVector *warm_start)
{
    switch (s)
    {
    case Solver::rayleigh:
        return half_step_rayleigh(ks, kin, warm_start);
    case Solver::gep:
        return half_step_gep(ks, kin);
    case Solver::whitening:
        return half_step_whitening(ks, kin);
    }
    throw InvalidArgument("unknown solver");
}

std::string to_string(Acceleration a) { return a == Acceleration::none ? "none" : "anderson"; }

Acceleration acceleration_from_string(const std::string &name)
{
    if (name == "none")
        return Acceleration::none;
    if (name == "anderson")
        return Acceleration::anderson;
    throw InvalidArgument("pops.acceleration: unknown value '" + name + "' (expected none or anderson)");
}

void PopsConfig::validate(const LatticeConfig &cfg) const
{
    cfg.validate();
    if (!(epsilon > 0.0))
        throw InvalidArgument("pops.epsilon must be positive");
    if (max_iterations < 1)
        throw InvalidArgument("pops.max_iterations must be >= 1");
    if (!(snr > 0.0))
        throw InvalidArgument("snr must be positive");
    if (init.empty())
        throw InvalidArgument("pops.init: no initial transmit waveform");
    if (init.size() != cfg.tx_length())
        throw InvalidArgument("pops.init: length must equal Dphi * N = " + std::to_string(cfg.tx_length()));
}

Waveform default_init(const LatticeConfig &cfg)
{
    cfg.validate();
    if (cfg.tx_symbols == 1)
        return make_conventional_tx(cfg);
    const std::array<double, 1> h0{1.0};
    return make_hermite_init(cfg, h0);
}

namespace
{

struct Side
{
    long offset;
    long length;
};

// One half step: optimize the receive side of (tx, rx) over the window for the
// fixed transmit waveform under the forward channel.
HalfStepResult solve_receive(const Waveform &tx, const ChannelView &view, const LatticeConfig &cfg, const Side &win,
                             const PopsConfig &pcfg, const CVector *warm, std::vector<std::string> &warnings,
                             bool &fell_back)
{
    const auto k = build_kernels(tx, view, cfg, win.offset, win.length);
    const double shift = std::isinf(pcfg.snr) ? 0.0 : tx.norm_sq() / pcfg.snr;
    CMatrix kin = k.interference.data;
    kin.diagonal().array() += shift;

    if (pcfg.paper_literal_gep && pcfg.approach == Solver::gep)
    {
        auto r = half_step_gep(k.useful.data, k.interference.data);
        r.sinr = quotient(k.useful.data, kin, r.vec);
        return r;
    }
    Solver s = fell_back ? Solver::gep : pcfg.approach;
    try
    {
        auto r = half_step(s, k.useful.data, kin, warm);
        for (auto &w : r.warnings)
            warnings.push_back(std::move(w));
        return r;
    }
    catch (const NumericalError &e)
    {
        if (s != Solver::rayleigh)
            throw;
        fell_back = true;
        warnings.push_back(std::string("rayleigh solver unavailable (") + e.what() + "); continuing with gep");
        auto r = half_step_gep(k.useful.data, kin);
        for (auto &w : r.warnings)
            warnings.push_back(std::move(w));
        return r;
    }
}

Waveform as_waveform(const CVector &v, long offset)
{
    return Waveform(std::vector<cplx>(v.data(), v.data() + v.size()), offset);
}

CVector as_vector(const Waveform &w)
{
    CVector v(w.size());
    for (long i = 0; i < w.size(); ++i)
        v(i) = w.samples()[std::size_t(i)];
    return v;
}

} // namespace

PopsResult run_pops(const LatticeConfig &cfg, const ChannelSpec &ch, const PopsConfig &pcfg)
{
    pcfg.validate(cfg);
    const ChannelView view = make_view(ch, cfg.sample_period);

    PopsResult res;
    Waveform tx = normalize_phase_fixed(pcfg.init);
    const Side tx_win{tx.offset(), tx.size()};
    const Side rx_win{select_window(tx, view, cfg.rx_length()), cfg.rx_length()};
    // Time-reversed transmit window used by the pong half step.
    const Side tx_rev{-(tx_win.offset + tx_win.length - 1), tx_win.length};

    Waveform rx;
    bool have_rx = false;
    bool fell_back = false;
    double current = -std::numeric_limits<double>::infinity();

    struct Round
    {
        Waveform rx, tx;
        double ping = 0.0, pong = 0.0;
    };
    // Ping: receive waveform for tx_in. Pong: the reversed receive waveform acts
    // as a transmitter and the reversed transmit waveform is optimized as its receiver.
    auto round = [&](const Waveform &tx_in) {
        Round r;
        CVector warm_rx;
        if (have_rx)
            warm_rx = as_vector(rx);
        const auto ping =
            solve_receive(tx_in, view, cfg, rx_win, pcfg, have_rx ? &warm_rx : nullptr, res.warnings, fell_back);
        r.rx = as_waveform(ping.vec, rx_win.offset);
        r.ping = ping.sinr;
        const CVector warm_tx = as_vector(time_reverse(tx_in));
        const auto pong = solve_receive(time_reverse(r.rx), view, cfg, tx_rev, pcfg, &warm_tx, res.warnings, fell_back);
        r.tx = normalize_phase_fixed(time_reverse(as_waveform(pong.vec, tx_rev.offset)));
        r.pong = pong.sinr;
        ++res.iterations_used;
        return r;
    };
    // Adopts a round started from tx_in; returns true once both waveforms have settled.
    auto accept = [&](const Round &r, const Waveform &tx_in) {
        res.sinr_trajectory.push_back({res.iterations_used, HalfStepKind::ping, r.ping});
        res.sinr_trajectory.push_back({res.iterations_used, HalfStepKind::pong, r.pong});
        const double e_tx = aligned_distance(r.tx, tx_in);
        const double e_rx = have_rx ? aligned_distance(r.rx, rx) : std::numeric_limits<double>::infinity();
        tx = r.tx;
        rx = r.rx;
        have_rx = true;
        current = r.pong;
        res.final_change = std::max(e_tx, e_rx);
        res.converged = e_tx <= pcfg.epsilon && e_rx <= pcfg.epsilon;
        return res.converged;
    };
    auto budget_left = [&] { return res.iterations_used < pcfg.max_iterations; };

    if (pcfg.acceleration == Acceleration::none)
    {
        while (budget_left())
        {
            const Waveform x0 = tx;
            if (accept(round(x0), x0))
                break;
        }
    }
    else
    {
        // Anderson mixing on the map x -> G(x) (one ping-pong round, output phase
        // aligned to the input). The extrapolation beyond the plain output is
        // limited to a trust radius that grows after adopted trials and shrinks
        // after rejected ones; a trial is adopted only if its ping does not lower
        // the SINR, so the recorded trajectory stays monotone.
        const int depth = 10;
        // SINR differences below this relative size are evaluation round-off.
        const double roundoff = 1e-12;
        auto wave = [&](const CVector &v) { return as_waveform(v, tx_win.offset); };
        auto aligned_to = [](const CVector &v, const CVector &ref) {
            const cplx c = v.dot(ref);
            return std::abs(c) > 0.0 ? CVector(v * (c / std::abs(c))) : v;
        };
        std::vector<CVector> xs, gs;
        CVector x0 = as_vector(tx);
        const Round r0 = round(wave(x0));
        bool done = accept(r0, wave(x0));
        CVector g_last = aligned_to(as_vector(r0.tx), x0);
        xs.push_back(x0);
        gs.push_back(g_last);
        double radius = 4.0 * (g_last - x0).norm();
        while (!done && budget_left())
        {
            const Eigen::Index n = x0.size();
            const int m = int(xs.size()) - 1;
            if (m >= 1)
            {
                CMatrix df(n, m), dg(n, m);
                for (int i = 0; i < m; ++i)
                {
                    const auto a = std::size_t(i), b = std::size_t(i + 1);
                    df.col(i) = (gs[b] - xs[b]) - (gs[a] - xs[a]);
                    dg.col(i) = gs[b] - gs[a];
                }
                const CVector gamma = df.completeOrthogonalDecomposition().solve(gs.back() - xs.back());
                CVector jump = -(dg * gamma);
                const double len = jump.norm();
                if (gamma.allFinite() && len > 0.0)
                {
                    if (len > radius)
                        jump *= radius / len;
                    CVector next = g_last + jump;
                    next /= next.norm();
                    const Round rc = round(wave(next));
                    if (rc.ping >= current - roundoff * std::abs(current))
                    {
                        done = accept(rc, wave(next));
                        g_last = aligned_to(as_vector(rc.tx), next);
                        xs.push_back(next);
                        gs.push_back(g_last);
                        if (int(xs.size()) > depth + 1)
                        {
                            xs.erase(xs.begin());
                            gs.erase(gs.begin());
                        }
                        if (len >= radius)
                            radius *= 2.0;
                        continue;
                    }
                    ++res.rejected_extrapolations;
                    radius = std::max(std::min(radius, len) / 4.0, (gs.back() - xs.back()).norm());
                    xs.clear();
                    gs.clear();
                    if (!budget_left())
                        break;
                }
            }
            const CVector xp = g_last;
            const Round rp = round(wave(xp));
            done = accept(rp, wave(xp));
            g_last = aligned_to(as_vector(rp.tx), xp);
            xs.push_back(xp);
            gs.push_back(g_last);
        }
    }
    res.tx_opt = normalize_phase_fixed(tx);
    res.rx_opt = normalize_phase_fixed(rx);
    res.report = sinr(tx, rx, view, cfg, pcfg.snr);
    return res;
}

} // namespace pops
