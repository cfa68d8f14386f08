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
#include "pnsec/random.hpp"
#include "pnsec/stochastic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace pnsec {

// Largest accepted condition number of the training covariance Sigma.
inline constexpr double max_sigma_condition = 1e12;

// Uplink pilots and the second-order statistics of the stacked training signal.
//
// With s = var_psi + var_phi:
//   [W_k]_ij        = w_k(i) conj(w_k(j)) exp(-s/2 |i-j|)
//   Sigma           = sum_k beta_k W_k + xi_UL I_B
//   [Theta_sig(t)]_bb = exp(-s/2 |t-b|)
// Immutable once built; shared by every trial.
template <typename Real>
class PilotSet
{
public:
    using Scalar = Complex<Real>;

    PilotSet(CMatrix<Real> omega, std::vector<Real> beta, Real xi_UL, Real decay_variance)
        : omega_(std::move(omega)), beta_(std::move(beta)), decay_(decay_variance)
    {
        const auto B = omega_.rows();
        const auto K = omega_.cols();
        CMatrix<Real> decay(B, B);
        for (Eigen::Index i = 0; i < B; ++i)
            for (Eigen::Index j = 0; j < B; ++j)
                decay(i, j) = std::exp(-decay_ / Real(2) * static_cast<Real>(std::abs(i - j)));

        sigma_ = xi_UL * CMatrix<Real>::Identity(B, B);
        W_.reserve(static_cast<std::size_t>(K));
        for (Eigen::Index k = 0; k < K; ++k)
        {
            CMatrix<Real> Wk = (omega_.col(k) * omega_.col(k).adjoint()).cwiseProduct(decay);
            sigma_ += beta_[static_cast<std::size_t>(k)] * Wk;
            W_.push_back(std::move(Wk));
        }

        Eigen::SelfAdjointEigenSolver<CMatrix<Real>> eig(sigma_, Eigen::EigenvaluesOnly);
        const Real lo = eig.eigenvalues().minCoeff();
        const Real hi = eig.eigenvalues().maxCoeff();
        condition_ = lo > Real(0) ? hi / lo : std::numeric_limits<Real>::infinity();
        if (!(condition_ <= static_cast<Real>(max_sigma_condition)))
            throw NumericalError("training covariance Sigma is numerically singular (condition " +
                                 std::to_string(static_cast<double>(condition_)) + ")");
        factor_.compute(sigma_);
    }

    int B() const { return static_cast<int>(omega_.rows()); }
    int K() const { return static_cast<int>(omega_.cols()); }
    Real beta(int k) const { return beta_[static_cast<std::size_t>(k)]; }
    Real decay_variance() const { return decay_; }

    const CMatrix<Real> &omega() const { return omega_; }
    const CMatrix<Real> &W(int k) const { return W_[static_cast<std::size_t>(k)]; }
    const CMatrix<Real> &Sigma() const { return sigma_; }
    Real sigma_condition() const { return condition_; }

    RVector<Real> theta_sigma(int t) const
    {
        RVector<Real> d(B());
        for (int b = 1; b <= B(); ++b)
            d(b - 1) = std::exp(-decay_ / Real(2) * static_cast<Real>(std::abs(t - b)));
        return d;
    }

    // Theta_sig(t) w_k
    CVector<Real> decayed_pilot(int k, int t) const { return theta_sigma(t).cwiseProduct(omega_.col(k)); }

    template <typename Derived>
    CVector<Real> solve(const Eigen::MatrixBase<Derived> &rhs) const
    {
        return factor_.solve(rhs);
    }

    // Row vector c(k,t) = beta_k w_k^H Theta_sig(t) Sigma^{-1}.
    CRowVector<Real> estimator_row(int k, int t) const
    {
        return (beta(k) * solve(decayed_pilot(k, t))).adjoint();
    }

    // Quadratic form w_a^H Theta_sig(t) Sigma^{-1} Theta_sig(t) w_b.
    Scalar pilot_form(int a, int b, int t) const { return decayed_pilot(a, t).dot(solve(decayed_pilot(b, t))); }

    // lambda_k(t) = beta_k w_k^H Theta_sig(t) Sigma^{-1} Theta_sig(t) w_k
    Real lambda(int k, int t) const { return beta(k) * std::real(pilot_form(k, k, t)); }

    // Per-antenna LMMSE error variance: E[e e^H] = error_coeff * I_N.
    Real error_coeff(int k, int t) const { return beta(k) * (Real(1) - lambda(k, t)); }

private:
    CMatrix<Real> omega_;  // B x K, column k is w_k
    std::vector<Real> beta_;
    Real decay_;
    std::vector<CMatrix<Real>> W_;
    CMatrix<Real> sigma_;
    Real condition_ = Real(1);
    Eigen::LLT<CMatrix<Real>> factor_;
};

template <typename Real>
PilotSet<Real> make_pilots(const ValidatedConfig &cfg)
{
    const int B = cfg.B();
    const int K = cfg.K();
    if (B < K)
        throw ConfigError({"B must be >= K"});
    CMatrix<Real> omega = CMatrix<Real>::Zero(B, K);
    const Real p_tau = static_cast<Real>(cfg.p_tau());
    switch (cfg.config().pilot_design)
    {
    case PilotDesign::time_orthogonal:
        // MT k transmits alone in slot k.
        for (int k = 0; k < K; ++k)
            omega(k, k) = std::sqrt(static_cast<Real>(B) * p_tau);
        break;
    case PilotDesign::unitary_overlapping:
        // First K columns of the scaled DFT matrix; every MT uses every slot.
        for (int k = 0; k < K; ++k)
            for (int b = 0; b < B; ++b)
                omega(b, k) = std::polar(std::sqrt(p_tau), Real(-2) * std::numbers::pi_v<Real> * b * k / B);
        break;
    }
    std::vector<Real> beta(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        beta[static_cast<std::size_t>(k)] = static_cast<Real>(cfg.beta(k));
    return PilotSet<Real>(std::move(omega), std::move(beta), static_cast<Real>(cfg.xi_UL()),
                          static_cast<Real>(cfg.var_total()));
}

// Received training stack, y_tr(b) in column b-1 (N x B). Column-major storage
// makes the flattened matrix equal to [y_tr(1); ...; y_tr(B)].
template <typename Real, typename Engine>
CMatrix<Real> simulate_training(const ValidatedConfig &cfg, const PilotSet<Real> &pilots,
                                const ChannelSet<Real> &channels, const PhaseTrajectories<Real> &traj,
                                Engine &noise_rng)
{
    const int N = cfg.N();
    CMatrix<Real> y(N, pilots.B());
    ComplexNormal<Real> noise(static_cast<Real>(cfg.xi_UL()));
    for (int b = 1; b <= pilots.B(); ++b)
    {
        auto column = y.col(b - 1);
        for (int n = 0; n < N; ++n)
            column(n) = noise(noise_rng);
        for (int k = 0; k < pilots.K(); ++k)
        {
            const Complex<Real> w = pilots.omega()(b - 1, k);
            if (w == Complex<Real>(0))
                continue;
            column += w * theta_matrix(traj, N, k, b).apply(channels.g.col(k));
        }
    }
    return y;
}

// LMMSE estimates of g_k(t) = Theta_k(t) g_k for all MTs, as columns of an
// N x K matrix. g_hat_k(t) = sum_b c_b(k,t) y_tr(b); the BN x BN Kronecker
// operator is never formed.
template <typename Real>
CMatrix<Real> lmmse_estimate(const PilotSet<Real> &pilots, const CMatrix<Real> &y_stack, int t)
{
    CMatrix<Real> C(pilots.K(), pilots.B());
    for (int k = 0; k < pilots.K(); ++k)
        C.row(k) = pilots.estimator_row(k, t);
    return y_stack * C.transpose();
}

template <typename Real>
struct TrainingOutcome
{
    CMatrix<Real> y_stack;    // N x B
    CMatrix<Real> g_hat;      // N x K, estimates at t0
    RVector<Real> lambda;     // lambda_k(t0)
    RVector<Real> err_coeff;  // beta_k (1 - lambda_k)
};

template <typename Real>
RVector<Real> error_covariance_coeff(const PilotSet<Real> &pilots, int t)
{
    RVector<Real> out(pilots.K());
    for (int k = 0; k < pilots.K(); ++k)
        out(k) = pilots.error_coeff(k, t);
    return out;
}

template <typename Real, typename Engine>
TrainingOutcome<Real> run_training(const ValidatedConfig &cfg, const PilotSet<Real> &pilots,
                                   const ChannelSet<Real> &channels, const PhaseTrajectories<Real> &traj,
                                   Engine &noise_rng)
{
    TrainingOutcome<Real> out;
    out.y_stack = simulate_training(cfg, pilots, channels, traj, noise_rng);
    out.g_hat = lmmse_estimate(pilots, out.y_stack, cfg.t0());
    out.lambda.resize(pilots.K());
    for (int k = 0; k < pilots.K(); ++k)
        out.lambda(k) = pilots.lambda(k, cfg.t0());
    out.err_coeff = error_covariance_coeff(pilots, cfg.t0());
    return out;
}

}  // namespace pnsec
