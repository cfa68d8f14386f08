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

#include <cmath>
#include <random>

namespace pnsec {

// Wiener phase processes over slots 1..slots(). Row t-1 holds slot t.
//   bs(t-1, l) = psi_l(t), BS local oscillator l
//   mt(t-1, k) = phi_k(t), MT k
// Increments are real Gaussian; both processes start at 0 in slot 1.
template <typename Real>
struct PhaseTrajectories
{
    RMatrix<Real> bs;
    RMatrix<Real> mt;

    int slots() const { return static_cast<int>(bs.rows()); }
};

// Block-fading channels: column k of g is g_k ~ CN(0, beta_k I_N), G_E ~ CN(0, beta_E) entrywise.
template <typename Real>
struct ChannelSet
{
    CMatrix<Real> g;    // N x K
    CMatrix<Real> G_E;  // N x N_E
};

template <typename Real, typename Engine>
ChannelSet<Real> sample_channels(const ValidatedConfig &cfg, Engine &rng)
{
    ChannelSet<Real> out;
    out.g.resize(cfg.N(), cfg.K());
    for (int k = 0; k < cfg.K(); ++k)
    {
        ComplexNormal<Real> draw(static_cast<Real>(cfg.beta(k)));
        for (int n = 0; n < cfg.N(); ++n)
            out.g(n, k) = draw(rng);
    }
    ComplexNormal<Real> draw_eve(static_cast<Real>(cfg.beta_E()));
    out.G_E.resize(cfg.N(), cfg.N_E());
    for (int e = 0; e < cfg.N_E(); ++e)
        for (int n = 0; n < cfg.N(); ++n)
            out.G_E(n, e) = draw_eve(rng);
    return out;
}

// Trajectories cover slots 1..cfg.last_slot() unless `slots` is given.
template <typename Real, typename Engine>
PhaseTrajectories<Real> sample_phase_trajectories(const ValidatedConfig &cfg, Engine &rng, int slots = 0)
{
    if (slots <= 0)
        slots = cfg.last_slot();
    const Real sd_bs = std::sqrt(static_cast<Real>(cfg.var_psi()));
    const Real sd_mt = std::sqrt(static_cast<Real>(cfg.var_phi()));
    std::normal_distribution<Real> unit;

    PhaseTrajectories<Real> out;
    out.bs.setZero(slots, cfg.N_o());
    out.mt.setZero(slots, cfg.K());
    for (int l = 0; l < cfg.N_o(); ++l)
        for (int t = 1; t < slots; ++t)
            out.bs(t, l) = out.bs(t - 1, l) + sd_bs * unit(rng);
    for (int k = 0; k < cfg.K(); ++k)
        for (int t = 1; t < slots; ++t)
            out.mt(t, k) = out.mt(t - 1, k) + sd_mt * unit(rng);
    return out;
}

// Diagonal phase rotation Theta_k(t) in compact form: one angle per LO group
// plus the MT angle. Antenna n belongs to group n / group_size.
template <typename Real>
struct PhaseRotation
{
    RVector<Real> lo_phase;
    Real mt_phase = Real(0);
    int group_size = 1;

    Real angle(int n) const { return lo_phase(n / group_size) + mt_phase; }

    CVector<Real> diagonal() const
    {
        const int N = static_cast<int>(lo_phase.size()) * group_size;
        CVector<Real> d(N);
        for (int n = 0; n < N; ++n)
            d(n) = std::polar(Real(1), angle(n));
        return d;
    }

    // Theta * v
    template <typename Derived>
    CVector<Real> apply(const Eigen::MatrixBase<Derived> &v) const
    {
        return diagonal().cwiseProduct(v);
    }
};

// Theta_k(t) for MT k (0-based) and slot t (1-based).
template <typename Real>
PhaseRotation<Real> theta_matrix(const PhaseTrajectories<Real> &traj, int N, int k, int t)
{
    PhaseRotation<Real> out;
    out.lo_phase = traj.bs.row(t - 1).transpose();
    out.mt_phase = traj.mt(t - 1, k);
    out.group_size = N / static_cast<int>(traj.bs.cols());
    return out;
}

}  // namespace pnsec
