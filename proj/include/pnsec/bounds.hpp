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

// Closed-form large-system expressions for MF data precoding with null-space
// artificial noise under Wiener phase noise. MT indices are 0-based, slots
// 1-based. All functions are pure.

#include "pnsec/config.hpp"
#include "pnsec/linalg.hpp"
#include "pnsec/training.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

namespace pnsec {

namespace detail {

template <typename Real>
Real slot_distance(int t, int t0)
{
    return static_cast<Real>(std::abs(t - t0));
}

}  // namespace detail

// epsilon = exp(-var_psi |t - t0|)
template <typename Real = double>
Real phase_coherence(const ValidatedConfig &cfg, int t)
{
    return std::exp(-static_cast<Real>(cfg.var_psi()) * detail::slot_distance<Real>(t, cfg.t0()));
}

// (1 - epsilon) / N_o + epsilon
template <typename Real = double>
Real lo_factor(const ValidatedConfig &cfg, int t)
{
    const Real eps = phase_coherence<Real>(cfg, t);
    return (Real(1) - eps) / static_cast<Real>(cfg.N_o()) + eps;
}

// Pilot-contamination terms X1_{k,l}, X2_{k,l} (evaluated at t0).
template <typename Real>
struct Contamination
{
    Real X1 = Real(0);
    Real X2 = Real(0);
};

template <typename Real>
Contamination<Real> contamination_terms(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int l)
{
    const int t0 = cfg.t0();
    const Real N = static_cast<Real>(cfg.N());
    const Real No = static_cast<Real>(cfg.N_o());
    const CVector<Real> vl = pilots.decayed_pilot(l, t0);
    const CVector<Real> Svl = pilots.solve(vl);
    const Real denom = std::real(vl.dot(Svl));
    const Real bk = pilots.beta(k);

    const Real q1 = bk * bk * std::real(Svl.dot(pilots.W(k) * Svl));
    const Real q2 = std::norm(bk * pilots.decayed_pilot(k, t0).dot(Svl));
    return {N / No * q1 / denom, N * (Real(1) - Real(1) / No) * q2 / denom};
}

// |E[g_k^H Theta_k^H(t) f_k]| = sqrt(beta_k N lambda_k) exp(-s/2 |t - t0|)
template <typename Real>
Real signal_gain(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    const Real lambda = pilots.lambda(k, cfg.t0());
    return std::sqrt(pilots.beta(k) * static_cast<Real>(cfg.N()) * lambda) *
           std::exp(-static_cast<Real>(cfg.var_total()) / Real(2) * detail::slot_distance<Real>(t, cfg.t0()));
}

// E[|g_k^H Theta_k^H(t) f_l|^2], l != k
template <typename Real>
Real interference_power(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int l, int t)
{
    const auto X = contamination_terms(cfg, pilots, k, l);
    return pilots.beta(k) + (X.X1 + X.X2) * lo_factor<Real>(cfg, t);
}

template <typename Real>
struct DesiredMoment
{
    Real second_moment = Real(0);  // E[|g_k^H Theta_k^H(t) f_k|^2]
    Real variance = Real(0);       // second_moment - signal_gain^2
};

template <typename Real>
DesiredMoment<Real> desired_second_moment(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    const Real bk = pilots.beta(k);
    const Real lambda = pilots.lambda(k, cfg.t0());
    const Real m2 = bk + bk * static_cast<Real>(cfg.N() - 1) * lambda * lo_factor<Real>(cfg, t);
    const Real gain = signal_gain(cfg, pilots, k, t);
    return {m2, m2 - gain * gain};
}

// E[g_k^H(t) A A^H g_k(t)] for the null-space AN precoder.
template <typename Real>
Real an_leakage(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    const Real eps = phase_coherence<Real>(cfg, t);
    const Real No = static_cast<Real>(cfg.N_o());
    const Real lambda = pilots.lambda(k, cfg.t0());
    return pilots.beta(k) * static_cast<Real>(cfg.L()) *
           ((Real(1) - Real(1) / No) * (Real(1) - eps) + Real(1) - lambda);
}

// Constants of the packaged rate expression for MT k in slot t.
template <typename Real>
struct RateTerms
{
    Real lambda = Real(0);
    Real lambda_bar = Real(0);  // lambda exp(-s |t - t0|)
    Real epsilon = Real(0);
    std::vector<Real> X1;       // indexed by l, zero at l = k
    std::vector<Real> X2;
    Real a = Real(0);           // normalised multiuser interference
    Real c = Real(0);           // normalised desired-gain variance
    Real mu = Real(0);          // normalised AN leakage, (N-K)((1-1/N_o)(1-eps) + 1 - lambda)
    Real xi = Real(0);          // K xi_DL / (beta_k P_T)
    Real an_weight = Real(0);   // K / L, multiplies mu
    Real beta_ratio = Real(0);  // K / N
};

template <typename Real>
RateTerms<Real> rate_terms(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    const Real N = static_cast<Real>(cfg.N());
    const Real No = static_cast<Real>(cfg.N_o());
    const Real bk = pilots.beta(k);
    RateTerms<Real> r;
    r.lambda = pilots.lambda(k, cfg.t0());
    r.lambda_bar =
        r.lambda * std::exp(-static_cast<Real>(cfg.var_total()) * detail::slot_distance<Real>(t, cfg.t0()));
    r.epsilon = phase_coherence<Real>(cfg, t);
    const Real fac = lo_factor<Real>(cfg, t);

    r.X1.assign(static_cast<std::size_t>(cfg.K()), Real(0));
    r.X2.assign(static_cast<std::size_t>(cfg.K()), Real(0));
    for (int l = 0; l < cfg.K(); ++l)
    {
        if (l == k)
            continue;
        const auto X = contamination_terms(cfg, pilots, k, l);
        r.X1[static_cast<std::size_t>(l)] = X.X1;
        r.X2[static_cast<std::size_t>(l)] = X.X2;
        r.a += Real(1) + (X.X1 + X.X2) * fac / bk;
    }
    r.c = (Real(1) - Real(1) / No) * (Real(1) - r.epsilon) + ((N - Real(1)) * r.lambda + Real(1)) * fac -
          N * r.lambda_bar;
    r.mu = static_cast<Real>(cfg.L()) * ((Real(1) - Real(1) / No) * (Real(1) - r.epsilon) + Real(1) - r.lambda);
    r.xi = static_cast<Real>(cfg.K()) * static_cast<Real>(cfg.xi_DL()) / (bk * static_cast<Real>(cfg.P_T()));
    r.an_weight = static_cast<Real>(cfg.K()) / static_cast<Real>(cfg.L());
    r.beta_ratio = static_cast<Real>(cfg.K()) / N;
    return r;
}

// Packaged closed form:
//   R = log2(1 + lambda_bar phi N / ((a + c - w mu) phi + w mu + xi)),  w = K / L.
template <typename Real>
Real rate_lower_bound(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    if (pilots.beta(k) == Real(0))
        return Real(0);
    const auto r = rate_terms(cfg, pilots, k, t);
    const Real phi = static_cast<Real>(cfg.phi());
    const Real denom = (r.a + r.c - r.an_weight * r.mu) * phi + r.an_weight * r.mu + r.xi;
    if (!(denom > Real(0)))
        throw NumericalError("non-positive SINR denominator in closed-form rate");
    return std::log2(Real(1) + r.lambda_bar * phi * static_cast<Real>(cfg.N()) / denom);
}

template <typename Real>
Real sinr_composed(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    const PowerSplit split = power_split(cfg);
    const Real p = static_cast<Real>(split.p);
    const Real q = static_cast<Real>(split.q);
    const Real gain = signal_gain(cfg, pilots, k, t);
    Real total = desired_second_moment(cfg, pilots, k, t).second_moment;
    for (int l = 0; l < cfg.K(); ++l)
        if (l != k)
            total += interference_power(cfg, pilots, k, l, t);
    const Real denom = p * total - p * gain * gain + q * an_leakage(cfg, pilots, k, t) + static_cast<Real>(cfg.xi_DL());
    if (!(denom > Real(0)))
        throw NumericalError("non-positive SINR denominator in composed rate");
    return p * gain * gain / denom;
}

// Same bound assembled term by term from the moment expressions.
template <typename Real>
Real rate_lower_bound_composed(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k, int t)
{
    return std::log2(Real(1) + sinr_composed(cfg, pilots, k, t));
}

enum class EveBoundStatus
{
    ok,
    no_artificial_noise,  // q = 0: eavesdropper capacity unbounded, secrecy 0
    undefined,            // L <= N_E: bound invalid, secrecy cannot be guaranteed
};

struct EveBound
{
    double value = 0.0;  // bits/slot; +inf for no_artificial_noise, NaN for undefined
    EveBoundStatus status = EveBoundStatus::ok;
};

// C_E <= log2(1 + p N_E / (q (L - N_E)))
EveBound eve_capacity_upper(const ValidatedConfig &cfg);

struct SecrecyBound
{
    double secrecy = 0.0;    // (1/T) sum_t [R_k(t) - C_E]^+
    double mean_rate = 0.0;  // average of R_k(t) over the data slots
    EveBound eve;
};

// Per-slot rates on the t_grid, either path.
enum class RatePath
{
    packaged,
    composed
};

template <typename Real = double>
std::vector<double> rate_curve(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k,
                               RatePath path = RatePath::packaged)
{
    std::vector<double> out;
    out.reserve(cfg.t_grid().size());
    for (int t : cfg.t_grid())
        out.push_back(static_cast<double>(path == RatePath::packaged ? rate_lower_bound(cfg, pilots, k, t)
                                                                     : rate_lower_bound_composed(cfg, pilots, k, t)));
    return out;
}

// Combines a per-slot rate curve on the t_grid with an eavesdropper capacity.
SecrecyBound combine_secrecy(const ValidatedConfig &cfg, const std::vector<double> &rates, const EveBound &eve);

template <typename Real = double>
SecrecyBound secrecy_rate_bound(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k)
{
    return combine_secrecy(cfg, rate_curve(cfg, pilots, k), eve_capacity_upper(cfg));
}

struct PhiOptimum
{
    double phi_star = 0.0;
    double secrecy = 0.0;
    std::vector<double> curve;  // secrecy at every grid point
};

// start, start+step, ... <= stop (inclusive within rounding).
std::vector<double> phi_grid(double start, double stop, double step);
inline std::vector<double> default_phi_grid() { return phi_grid(0.01, 0.99, 0.01); }

// Grid search; ties resolve to the smaller phi. p_tau does not depend on phi,
// so the pilot set is shared across grid points.
template <typename Real = double>
PhiOptimum optimize_phi(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, int k,
                        const std::vector<double> &grid)
{
    if (grid.empty())
        throw ConfigError({"phi grid is empty"});
    PhiOptimum best;
    best.secrecy = -std::numeric_limits<double>::infinity();
    for (double phi : grid)
    {
        const double value = secrecy_rate_bound(cfg.with_phi(phi), pilots, k).secrecy;
        best.curve.push_back(value);
        if (value > best.secrecy)
        {
            best.secrecy = value;
            best.phi_star = phi;
        }
    }
    return best;
}

}  // namespace pnsec
