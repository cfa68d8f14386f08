// SPDX-License-Identifier: Apache-2.0
//
// pnsec: secrecy-rate analysis of phase-noise-impaired massive MIMO downlinks
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

#pragma once

#include "pnsec/config.hpp"
#include "pnsec/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pnsec {

// Matched-filter data precoder: column k is g_hat_k / ||g_hat_k||.
template <typename Derived>
auto mf_precoder(const Eigen::MatrixBase<Derived> &g_hat)
{
    using Scalar = typename Derived::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    CMatrix<Real> F(g_hat.rows(), g_hat.cols());
    for (Eigen::Index k = 0; k < g_hat.cols(); ++k)
    {
        const Real norm = g_hat.col(k).norm();
        if (!(norm > Real(0)) || !std::isfinite(norm))
            throw NumericalError("zero-norm channel estimate for MT " + std::to_string(k + 1));
        F.col(k) = g_hat.col(k) / norm;
    }
    return F;
}

// Orthonormal basis A (N x L, L = N - K) of the orthogonal complement of span(G_hat),
// kept in Householder form. The dense A is only built on request; the AN
// leakage uses the projector identity
//   v^H A A^H v = ||v||^2 - ||U^H v||^2,  U = orthonormal basis of span(G_hat),
// which costs O(N K) instead of O(N L).
template <typename Real>
class NullSpaceBasis
{
public:
    NullSpaceBasis() = default;

    explicit NullSpaceBasis(const CMatrix<Real> &g_hat) : qr_(g_hat)
    {
        N_ = static_cast<int>(g_hat.rows());
        K_ = static_cast<int>(g_hat.cols());
        if (K_ >= N_)
            throw NumericalError("null-space precoder needs N > K");
        qr_.setThreshold(std::sqrt(std::numeric_limits<Real>::epsilon()));
        if (qr_.rank() < K_)
            throw NumericalError("channel estimates are rank deficient (rank " + std::to_string(qr_.rank()) +
                                 " < K=" + std::to_string(K_) + ")");
        range_ = qr_.householderQ() * CMatrix<Real>::Identity(N_, K_);
    }

    int N() const { return N_; }
    int L() const { return N_ - K_; }

    // U: N x K orthonormal basis of span(G_hat).
    const CMatrix<Real> &range() const { return range_; }

    // Dense A, N x L.
    CMatrix<Real> matrix() const
    {
        CMatrix<Real> selector = CMatrix<Real>::Zero(N_, L());
        selector.bottomRows(L()).setIdentity();
        return qr_.householderQ() * selector;
    }

    // A z for z of length L, without forming A.
    template <typename Derived>
    CVector<Real> apply(const Eigen::MatrixBase<Derived> &z) const
    {
        CVector<Real> padded = CVector<Real>::Zero(N_);
        padded.tail(L()) = z;
        return qr_.householderQ() * padded;
    }

    // v^H A A^H v via the projector identity.
    template <typename Derived>
    Real leakage(const Eigen::MatrixBase<Derived> &v) const
    {
        return std::max(Real(0), v.squaredNorm() - (range_.adjoint() * v).squaredNorm());
    }

    // G^H A A^H G for an N x m matrix G (m x m, Hermitian).
    template <typename Derived>
    CMatrix<Real> gram(const Eigen::MatrixBase<Derived> &G) const
    {
        const CMatrix<Real> projected = range_.adjoint() * G;
        CMatrix<Real> out = G.adjoint() * G - projected.adjoint() * projected;
        return (out + out.adjoint()) / Real(2);
    }

private:
    Eigen::ColPivHouseholderQR<CMatrix<Real>> qr_;
    CMatrix<Real> range_;
    int N_ = 0;
    int K_ = 0;
};

template <typename Real>
NullSpaceBasis<Real> ns_an_precoder(const CMatrix<Real> &g_hat)
{
    return NullSpaceBasis<Real>(g_hat);
}

template <typename Real>
struct Precoders
{
    CMatrix<Real> F;          // N x K, unit-norm columns
    NullSpaceBasis<Real> A;   // N x L
    Real p = Real(0);
    Real q = Real(0);
};

template <typename Real>
Precoders<Real> make_precoders(const ValidatedConfig &cfg, const CMatrix<Real> &g_hat)
{
    const PowerSplit split = power_split(cfg);
    return {mf_precoder(g_hat), ns_an_precoder(g_hat), static_cast<Real>(split.p), static_cast<Real>(split.q)};
}

// x = sqrt(p) F s + sqrt(q) A z
template <typename Real>
CVector<Real> transmit_signal(const Precoders<Real> &pre, const CVector<Real> &s, const CVector<Real> &z)
{
    CVector<Real> x = std::sqrt(pre.p) * (pre.F * s);
    if (pre.q > Real(0))
        x += std::sqrt(pre.q) * pre.A.apply(z);
    return x;
}

}  // namespace pnsec
