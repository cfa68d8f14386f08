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

// Monte Carlo estimation of every expectation in the hardening SINR bound and
// of the eavesdropper's ergodic capacity.
//
// Seeding: trial m draws from PhiloxEngine(seed, m, stream) for each purpose,
// so a trial is reproducible on its own. Reduction: trials are accumulated in
// fixed chunks of `chunk_trials` in index order, and chunks are merged in
// chunk order, so every worker count produces bit-identical estimates.

#include "pnsec/bounds.hpp"
#include "pnsec/config.hpp"
#include "pnsec/linalg.hpp"
#include "pnsec/precoding.hpp"
#include "pnsec/random.hpp"
#include "pnsec/stochastic.hpp"
#include "pnsec/training.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace pnsec {

inline constexpr std::int64_t chunk_trials = 64;

// Inner products of one realisation, cell (k, i) for MT k and slot t_grid[i].
template <typename Real>
struct TrialRecord
{
    CMatrix<Real> gain;          // g_k^H(t) f_k
    RMatrix<Real> desired;       // |g_k^H(t) f_k|^2
    RMatrix<Real> interference;  // sum_{l != k} |g_k^H(t) f_l|^2
    RMatrix<Real> leakage;       // g_k^H(t) A A^H g_k(t)
    RVector<Real> eve_gain;      // gamma_E * q / p per MT; empty when the eavesdropper is off
};

// Everything a trial draws, kept for tests that check individual stages.
template <typename Real>
struct TrialRealization
{
    ChannelSet<Real> channels;
    PhaseTrajectories<Real> phases;
    TrainingOutcome<Real> training;
    Precoders<Real> precoders;
};

template <typename Real>
TrialRealization<Real> draw_realization(const ValidatedConfig &cfg, const PilotSet<Real> &pilots,
                                        std::int64_t trial_index)
{
    const auto seed = cfg.config().seed;
    const auto trial = static_cast<std::uint64_t>(trial_index);
    PhiloxEngine channel_rng(seed, trial, Stream::channels);
    PhiloxEngine phase_rng(seed, trial, Stream::phases);
    PhiloxEngine noise_rng(seed, trial, Stream::uplink_noise);

    TrialRealization<Real> out;
    out.channels = sample_channels<Real>(cfg, channel_rng);
    out.phases = sample_phase_trajectories<Real>(cfg, phase_rng);
    out.training = run_training(cfg, pilots, out.channels, out.phases, noise_rng);
    out.precoders = make_precoders(cfg, out.training.g_hat);
    return out;
}

namespace detail {

// Row g of the result holds sum over antennas n in LO group g of
// conj(left(n, a)) * right(n, b), flattened at column a * cols(right) + b.
template <typename Real>
CMatrix<Real> group_partials(const CMatrix<Real> &left, const CMatrix<Real> &right, int groups)
{
    const auto size = left.rows() / groups;
    const auto A = left.cols();
    const auto Bc = right.cols();
    CMatrix<Real> out(groups, A * Bc);
    for (int g = 0; g < groups; ++g)
    {
        const CMatrix<Real> block = left.middleRows(g * size, size).adjoint() * right.middleRows(g * size, size);
        for (Eigen::Index a = 0; a < A; ++a)
            for (Eigen::Index b = 0; b < Bc; ++b)
                out(g, a * Bc + b) = block(a, b);
    }
    return out;
}

}  // namespace detail

// g_E (G_E^H A A^H G_E)^{-1} g_E^H with g_E = f_k^H G_E, for all k. The
// eavesdropper SINR is this gain times p / q.
template <typename Real>
RVector<Real> eavesdropper_gain(const Precoders<Real> &pre, const CMatrix<Real> &G_E)
{
    const CMatrix<Real> gram = pre.A.gram(G_E);
    Eigen::LLT<CMatrix<Real>> factor(gram);
    if (factor.info() != Eigen::Success)
        throw NumericalError("eavesdropper AN covariance is singular (need N_E <= L)");
    RVector<Real> out(pre.F.cols());
    for (Eigen::Index k = 0; k < pre.F.cols(); ++k)
    {
        const CVector<Real> v = G_E.adjoint() * pre.F.col(k);  // g_E^H
        out(k) = std::max(Real(0), std::real(v.dot(factor.solve(v))));
    }
    return out;
}

// gamma_E = p g_E (q G_E^H A A^H G_E)^{-1} g_E^H
template <typename Real>
RVector<Real> eavesdropper_sinr(const Precoders<Real> &pre, const CMatrix<Real> &G_E)
{
    if (!(pre.q > Real(0)))
        throw NumericalError("no AN: eavesdropper capacity unbounded");
    return pre.p / pre.q * eavesdropper_gain(pre, G_E);
}

// One full realisation: channels, phases, training, LMMSE at t0, precoders,
// then the per-slot inner products on the t_grid.
template <typename Real>
TrialRecord<Real> run_trial(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, std::int64_t trial_index,
                            bool eavesdropper = true)
{
    const TrialRealization<Real> draw = draw_realization(cfg, pilots, trial_index);
    const int K = cfg.K();
    const int No = cfg.N_o();
    const auto &grid = cfg.t_grid();
    const int slots = static_cast<int>(grid.size());
    const auto &g = draw.channels.g;
    const auto &pre = draw.precoders;

    // Theta_k(t) = e^{j phi_k(t)} Psi(t) with Psi constant over each LO group,
    // so every product reduces to phasor-weighted group partial sums.
    const CMatrix<Real> partial_f = detail::group_partials(g, pre.F, No);          // conj(g_k) f_l
    const CMatrix<Real> partial_u = detail::group_partials(pre.A.range(), g, No);  // conj(u_i) g_k
    CMatrix<Real> phasor(slots, No);
    for (int i = 0; i < slots; ++i)
        for (int l = 0; l < No; ++l)
            phasor(i, l) = std::polar(Real(1), -draw.phases.bs(grid[static_cast<std::size_t>(i)] - 1, l));
    const CMatrix<Real> products = phasor * partial_f;               // e^{-j phi_k} g_k^H(t) f_l
    const CMatrix<Real> projections = phasor.conjugate() * partial_u;  // e^{-j phi_k} u_i^H g_k(t)
    const RVector<Real> channel_power = g.colwise().squaredNorm().transpose();

    TrialRecord<Real> rec;
    rec.gain.resize(K, slots);
    rec.desired.resize(K, slots);
    rec.interference.resize(K, slots);
    rec.leakage.resize(K, slots);
    for (int i = 0; i < slots; ++i)
    {
        const int t = grid[static_cast<std::size_t>(i)];
        for (int k = 0; k < K; ++k)
        {
            const Complex<Real> own = products(i, k * K + k);
            rec.gain(k, i) = std::polar(Real(1), -draw.phases.mt(t - 1, k)) * own;
            rec.desired(k, i) = std::norm(own);
            Real interference = Real(0);
            for (int l = 0; l < K; ++l)
                if (l != k)
                    interference += std::norm(products(i, k * K + l));
            rec.interference(k, i) = interference;
            Real in_span = Real(0);
            for (int u = 0; u < K; ++u)
                in_span += std::norm(projections(i, u * K + k));
            rec.leakage(k, i) = std::max(Real(0), channel_power(k) - in_span);
        }
    }
    if (eavesdropper)
        rec.eve_gain = eavesdropper_gain(pre, draw.channels.G_E);
    return rec;
}

// Running first and second moments of the five per-trial variables of each
// (k, slot) cell: Re gain, Im gain, desired, interference, leakage.
class MomentAccumulator
{
public:
    static constexpr int vars = 5;
    static constexpr int pairs = vars * (vars + 1) / 2;

    MomentAccumulator() = default;
    MomentAccumulator(int K, int slots)
        : K_(K), slots_(slots), sums_(RMatrix<double>::Zero(K * slots, vars)),
          cross_(RMatrix<double>::Zero(K * slots, pairs))
    {
    }

    template <typename Real>
    void add(const TrialRecord<Real> &rec)
    {
        double x[vars];
        for (int i = 0; i < slots_; ++i)
            for (int k = 0; k < K_; ++k)
            {
                const int cell = i * K_ + k;
                x[0] = static_cast<double>(std::real(rec.gain(k, i)));
                x[1] = static_cast<double>(std::imag(rec.gain(k, i)));
                x[2] = static_cast<double>(rec.desired(k, i));
                x[3] = static_cast<double>(rec.interference(k, i));
                x[4] = static_cast<double>(rec.leakage(k, i));
                int p = 0;
                for (int a = 0; a < vars; ++a)
                {
                    sums_(cell, a) += x[a];
                    for (int b = a; b < vars; ++b)
                        cross_(cell, p++) += x[a] * x[b];
                }
            }
        ++count_;
    }

    void merge(const MomentAccumulator &other)
    {
        if (count_ == 0 && sums_.size() == 0)
        {
            *this = other;
            return;
        }
        sums_ += other.sums_;
        cross_ += other.cross_;
        count_ += other.count_;
    }

    std::int64_t count() const { return count_; }
    int K() const { return K_; }
    int slots() const { return slots_; }
    const RMatrix<double> &sums() const { return sums_; }
    const RMatrix<double> &cross() const { return cross_; }

private:
    int K_ = 0;
    int slots_ = 0;
    std::int64_t count_ = 0;
    RMatrix<double> sums_;
    RMatrix<double> cross_;
};

// Monte Carlo moments for one (k, slot) cell.
struct CellMoments
{
    std::complex<double> mean_gain;
    double second_moment = 0.0;   // E|g_k^H(t) f_k|^2
    double interference = 0.0;    // sum_{l != k} E|g_k^H(t) f_l|^2
    double an_leakage = 0.0;      // E[g_k^H(t) A A^H g_k(t)]
    double stderr_gain = 0.0;     // of the complex mean (both components)
    double stderr_second = 0.0;
    double stderr_interference = 0.0;
    double stderr_leakage = 0.0;
    Eigen::Matrix<double, 5, 5> covariance = Eigen::Matrix<double, 5, 5>::Zero();  // per-trial sample covariance
};

struct MomentEstimates
{
    int K = 0;
    std::vector<int> t_grid;
    std::int64_t trials = 0;
    bool stderr_defined = false;  // false when trials < 2; stderrs are then 0
    std::vector<CellMoments> cells;  // index slot * K + k

    const CellMoments &at(int k, int slot_index) const
    {
        return cells.at(static_cast<std::size_t>(slot_index * K + k));
    }
};

MomentEstimates estimate_moments(const MomentAccumulator &acc, const std::vector<int> &t_grid);

template <typename Real>
MomentEstimates estimate_moments(const std::vector<TrialRecord<Real>> &records, const std::vector<int> &t_grid)
{
    if (records.empty())
        throw ConfigError({"estimate_moments needs at least one trial"});
    MomentAccumulator acc(static_cast<int>(records.front().gain.rows()), static_cast<int>(t_grid.size()));
    for (const auto &rec : records)
        acc.add(rec);
    return estimate_moments(acc, t_grid);
}

struct McRate
{
    double rate = 0.0;
    double stderr = 0.0;
    bool variance_clamped = false;  // estimated desired-gain variance was negative
};

// log2(1 + gamma_k(t)) with gamma assembled from estimated moments; stderr by
// the delta method on the per-trial covariance.
McRate mc_rate(const ValidatedConfig &cfg, const MomentEstimates &moments, int k, int slot_index);

struct EveEstimate
{
    std::vector<double> sinr;  // gamma_E per trial (trial order)
    double capacity = 0.0;     // mean log2(1 + gamma_E)
    double stderr = 0.0;
};

EveEstimate summarize_eve(std::vector<double> sinr);

struct SimulationOptions
{
    bool eavesdropper = true;
    int threads = 1;  // 0 = hardware concurrency
};

struct SimulationResult
{
    MomentEstimates moments;
    // Per MT, per trial: gamma_E * q / p. Independent of phi, so one run serves
    // any power split. Empty when the eavesdropper is off.
    std::vector<std::vector<double>> eve_gain;
};

// C_E estimate for MT k at cfg's power split. Throws NumericalError when q = 0.
EveEstimate simulate_eve(const ValidatedConfig &cfg, const SimulationResult &result, int k);

int resolve_threads(int requested);

// Runs cfg.trials trials across worker threads. A failing trial aborts the run.
template <typename Real = double>
SimulationResult simulate(const ValidatedConfig &cfg, const PilotSet<Real> &pilots, SimulationOptions options = {})
{
    const std::int64_t M = cfg.config().trials;
    const int K = cfg.K();
    const int slots = static_cast<int>(cfg.t_grid().size());
    const std::int64_t chunks = (M + chunk_trials - 1) / chunk_trials;
    const int workers = static_cast<int>(std::min<std::int64_t>(resolve_threads(options.threads), chunks));

    std::vector<double> eve_samples(options.eavesdropper ? static_cast<std::size_t>(M * K) : 0);
    MomentAccumulator total(K, slots);
    std::map<std::int64_t, MomentAccumulator> pending;
    std::int64_t next_merge = 0;
    std::mutex merge_mutex;
    std::atomic<std::int64_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;

    auto work = [&]() {
        for (;;)
        {
            const std::int64_t chunk = next_chunk.fetch_add(1);
            if (chunk >= chunks || failed.load())
                return;
            try
            {
                MomentAccumulator acc(K, slots);
                const std::int64_t end = std::min(M, (chunk + 1) * chunk_trials);
                for (std::int64_t m = chunk * chunk_trials; m < end; ++m)
                {
                    const auto rec = run_trial(cfg, pilots, m, options.eavesdropper);
                    acc.add(rec);
                    for (int k = 0; k < K && options.eavesdropper; ++k)
                        eve_samples[static_cast<std::size_t>(k * M + m)] = static_cast<double>(rec.eve_gain(k));
                }
                std::lock_guard<std::mutex> lock(merge_mutex);
                pending.emplace(chunk, std::move(acc));
                for (auto it = pending.find(next_merge); it != pending.end(); it = pending.find(next_merge))
                {
                    total.merge(it->second);
                    pending.erase(it);
                    ++next_merge;
                }
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(merge_mutex);
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);

    SimulationResult out;
    out.moments = estimate_moments(total, cfg.t_grid());
    if (options.eavesdropper)
        for (int k = 0; k < K; ++k)
            out.eve_gain.emplace_back(eve_samples.begin() + k * M, eve_samples.begin() + (k + 1) * M);
    return out;
}

struct McSecrecy
{
    std::vector<McRate> rates;  // per t_grid slot
    double mean_rate = 0.0;
    double stderr_rate = 0.0;   // slot-weighted average of per-slot stderrs (upper bound)
    double capacity_eve = 0.0;
    double stderr_eve = 0.0;
    double secrecy = 0.0;       // (1/T) sum_t [R_k(t) - C_E]^+
    double stderr_secrecy = 0.0;  // (T-B)/T sqrt(stderr_rate^2 + stderr_eve^2), ignores clipping
    bool variance_clamped = false;
};

McSecrecy mc_secrecy(const ValidatedConfig &cfg, const MomentEstimates &moments, const EveEstimate *eve, int k);

}  // namespace pnsec
