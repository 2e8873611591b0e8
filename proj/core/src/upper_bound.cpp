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

#include "pops/upper_bound.hpp"

#include "pops/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

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

double restricted_energy(const Waveform &w, long offset, long length)
{
    double e = 0.0;
    for (const cplx &v : restrict_to(w, offset, length))
        e += std::norm(v);
    return e;
}

} // namespace

KroneckerSystem build_kronecker_system(const LatticeConfig &cfg, const ChannelSpec &ch, long tx_offset,
                                       long rx_offset, std::size_t cap)
{
    cfg.validate();
    validate(ch);
    KroneckerSystem sys;
    sys.tx_offset = tx_offset;
    sys.tx_length = cfg.tx_length();
    sys.rx_offset = rx_offset;
    sys.rx_length = cfg.rx_length();

    const ChannelView view = make_view(ch, cfg.sample_period);
    const long n_len = cfg.symbol_len;
    const long q_len = cfg.num_subcarriers;
    const long lt = sys.tx_length, lr = sys.rx_length;
    auto in_tx = [&](long t) { return t >= tx_offset && t < tx_offset + lt; };

    // Residues modulo N of the lag r - t that some path can produce.
    std::vector<char> residue(static_cast<std::size_t>(n_len), 0);
    for (const auto &term : view.terms)
        residue[std::size_t(((term.delay % n_len) + n_len) % n_len)] = 1;
    std::vector<long> slot(static_cast<std::size_t>(lt * lr), -1);
    for (long t = tx_offset; t < tx_offset + lt; ++t)
        for (long r = rx_offset; r < rx_offset + lr; ++r)
            if (residue[std::size_t((((r - t) % n_len) + n_len) % n_len)])
            {
                slot[std::size_t((t - tx_offset) * lr + (r - rx_offset))] = long(sys.pairs.size());
                sys.pairs.emplace_back(t, r);
            }
    if (sys.pairs.size() > cap)
        throw InvalidArgument("upper bound: lifted dimension " + std::to_string(sys.pairs.size()) + " (of " +
                              std::to_string(sys.full_size()) + " index pairs) exceeds the cap of " +
                              std::to_string(cap) + " (upperbound.cap)");
    auto row = [&](long t, long r) { return slot[std::size_t((t - tx_offset) * lr + (r - rx_offset))]; };

    const long dim = sys.size();
    sys.useful = CMatrix::Zero(dim, dim);
    CMatrix comb = CMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < view.terms.size(); ++k)
    {
        const auto &term = view.terms[k];
        for (long a = rx_offset; a < rx_offset + lr; ++a)
        {
            const long ta = a - term.delay;
            for (long b = rx_offset; b < rx_offset + lr; ++b)
            {
                const cplx w = term.power * view.rho(k, a - b);
                const long tb = b - term.delay;
                if (in_tx(ta) && in_tx(tb))
                    sys.useful(row(ta, a), row(tb, b)) += w;
                if ((a - b) % q_len != 0)
                    continue;
                // All symbol shifts n that keep both transmit indices inside the window.
                const long lo = std::max(ceil_div(ta - (tx_offset + lt - 1), n_len),
                                         ceil_div(tb - (tx_offset + lt - 1), n_len));
                const long hi = std::min(floor_div(ta - tx_offset, n_len), floor_div(tb - tx_offset, n_len));
                for (long n = lo; n <= hi; ++n)
                    comb(row(ta - n * n_len, a), row(tb - n * n_len, b)) += double(q_len) * w;
            }
        }
    }
    sys.interference = comb - sys.useful;
    return sys;
}

CVector kronecker_vector(const KroneckerSystem &sys, const Waveform &tx, const Waveform &rx)
{
    CVector x(sys.size());
    for (long i = 0; i < sys.size(); ++i)
    {
        const auto [t, r] = sys.pairs[std::size_t(i)];
        x(i) = std::conj(tx.at(t)) * rx.at(r);
    }
    return x;
}

double kronecker_quotient(const KroneckerSystem &sys, const Waveform &tx, const Waveform &rx, double snr)
{
    const CVector x = kronecker_vector(sys, tx, rx);
    const double num = x.dot(sys.useful * x).real();
    double den = x.dot(sys.interference * x).real();
    if (!std::isinf(snr))
    {
        // Entries outside the active pairs still carry noise.
        const double tx_e = restricted_energy(tx, sys.tx_offset, sys.tx_length);
        const double rx_e = restricted_energy(rx, sys.rx_offset, sys.rx_length);
        den += tx_e * rx_e / snr;
    }
    return num / den;
}

double upper_bound(const KroneckerSystem &sys, double snr)
{
    if (!(snr > 0.0))
        throw InvalidArgument("snr must be positive");
    if (sys.size() == 0)
        throw NumericalError("upper bound: no transmit/receive index pair is coupled by the channel");
    CMatrix den = sys.interference;
    if (!std::isinf(snr))
        den.diagonal().array() += 1.0 / snr;

    const double scale = den.diagonal().real().cwiseAbs().maxCoeff();
    Eigen::LLT<CMatrix> llt(den);
    bool singular = llt.info() != Eigen::Success || !(scale > 0.0);
    if (!singular)
    {
        const Eigen::VectorXd piv = llt.matrixL().toDenseMatrix().diagonal().real();
        singular = piv.cwiseAbs2().minCoeff() <= 1e-12 * scale;
    }
    if (singular)
        throw NumericalError(std::isinf(snr)
                                 ? "upper bound: the interference form is singular at snr = inf, the SIR bound is "
                                   "unbounded; use a finite snr"
                                 : "upper bound: interference plus noise form is singular");

    // Whitened problem L^{-1} U L^{-H}.
    CMatrix m = llt.matrixL().solve(sys.useful);
    m = llt.matrixL().solve(m.adjoint()).adjoint();
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("upper bound: eigensolver failed");
    return es.eigenvalues().maxCoeff();
}

} // namespace pops
