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

#include "pnsec/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pnsec {

MomentEstimates estimate_moments(const MomentAccumulator &acc, const std::vector<int> &t_grid)
{
    constexpr int V = MomentAccumulator::vars;
    MomentEstimates out;
    out.K = acc.K();
    out.t_grid = t_grid;
    out.trials = acc.count();
    out.stderr_defined = acc.count() >= 2;
    const double M = static_cast<double>(acc.count());
    out.cells.resize(static_cast<std::size_t>(acc.K() * acc.slots()));

    for (int cell = 0; cell < acc.K() * acc.slots(); ++cell)
    {
        auto &c = out.cells[static_cast<std::size_t>(cell)];
        Eigen::Matrix<double, V, 1> mean;
        for (int a = 0; a < V; ++a)
            mean(a) = M > 0 ? acc.sums()(cell, a) / M : 0.0;
        c.mean_gain = {mean(0), mean(1)};
        c.second_moment = mean(2);
        c.interference = mean(3);
        c.an_leakage = mean(4);
        if (!out.stderr_defined)
            continue;

        int p = 0;
        for (int a = 0; a < V; ++a)
            for (int b = a; b < V; ++b)
            {
                const double cov =
                    (acc.cross()(cell, p++) - M * mean(a) * mean(b)) / (M - 1.0);
                c.covariance(a, b) = cov;
                c.covariance(b, a) = cov;
            }
        auto se = [&](int a) { return std::sqrt(std::max(c.covariance(a, a), 0.0) / M); };
        c.stderr_gain = std::sqrt(std::max(c.covariance(0, 0) + c.covariance(1, 1), 0.0) / M);
        c.stderr_second = se(2);
        c.stderr_interference = se(3);
        c.stderr_leakage = se(4);
    }
    return out;
}

McRate mc_rate(const ValidatedConfig &cfg, const MomentEstimates &moments, int k, int slot_index)
{
    const CellMoments &c = moments.at(k, slot_index);
    const PowerSplit split = power_split(cfg);
    const double p = split.p;
    const double q = split.q;
    const double re = c.mean_gain.real();
    const double im = c.mean_gain.imag();
    const double gain2 = re * re + im * im;

    McRate out;
    double variance = c.second_moment - gain2;
    if (variance < 0.0)
    {
        variance = 0.0;
        out.variance_clamped = true;
    }
    const double denom = p * (c.interference + variance) + q * c.an_leakage + cfg.xi_DL();
    if (!(denom > 0.0))
    {
        out.rate = gain2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        return out;
    }
    const double gamma = p * gain2 / denom;
    out.rate = std::log2(1.0 + gamma);

    if (moments.stderr_defined)
    {
        // d rate / d (re, im, desired, interference, leakage)
        const double scale = 1.0 / (std::numbers::ln2 * (1.0 + gamma));
        const double dD_dgain2 = out.variance_clamped ? 0.0 : -p;
        const double dgamma_dgain2 = p / denom - gamma / denom * dD_dgain2;
        Eigen::Matrix<double, 5, 1> grad;
        grad(0) = dgamma_dgain2 * 2.0 * re;
        grad(1) = dgamma_dgain2 * 2.0 * im;
        grad(2) = out.variance_clamped ? 0.0 : -gamma * p / denom;
        grad(3) = -gamma * p / denom;
        grad(4) = -gamma * q / denom;
        grad *= scale;
        const double var = grad.dot(c.covariance * grad) / static_cast<double>(moments.trials);
        out.stderr = std::sqrt(std::max(var, 0.0));
    }
    return out;
}

EveEstimate summarize_eve(std::vector<double> sinr)
{
    EveEstimate out;
    out.sinr = std::move(sinr);
    const auto M = static_cast<double>(out.sinr.size());
    if (out.sinr.empty())
        return out;
    double sum = 0.0;
    for (double g : out.sinr)
        sum += std::log2(1.0 + g);
    out.capacity = sum / M;
    if (out.sinr.size() >= 2)
    {
        double ss = 0.0;
        for (double g : out.sinr)
        {
            const double d = std::log2(1.0 + g) - out.capacity;
            ss += d * d;
        }
        out.stderr = std::sqrt(ss / (M - 1.0) / M);
    }
    return out;
}

EveEstimate simulate_eve(const ValidatedConfig &cfg, const SimulationResult &result, int k)
{
    const PowerSplit split = power_split(cfg);
    if (!(split.q > 0.0))
        throw NumericalError("no AN: eavesdropper capacity unbounded");
    if (result.eve_gain.empty())
        throw std::logic_error("simulation ran without the eavesdropper");
    std::vector<double> sinr = result.eve_gain.at(static_cast<std::size_t>(k));
    const double ratio = split.p / split.q;
    for (double &g : sinr)
        g *= ratio;
    return summarize_eve(std::move(sinr));
}

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

McSecrecy mc_secrecy(const ValidatedConfig &cfg, const MomentEstimates &moments, const EveEstimate *eve, int k)
{
    McSecrecy out;
    const auto &weights = cfg.slot_weights();
    const int slots = static_cast<int>(moments.t_grid.size());
    std::vector<double> rates;
    double se_sum = 0.0;
    for (int i = 0; i < slots; ++i)
    {
        const McRate r = mc_rate(cfg, moments, k, i);
        out.rates.push_back(r);
        rates.push_back(r.rate);
        se_sum += weights[static_cast<std::size_t>(i)] * r.stderr;
        out.variance_clamped = out.variance_clamped || r.variance_clamped;
    }
    out.stderr_rate = se_sum / (cfg.T() - cfg.B());

    EveBound capacity;
    if (eve != nullptr)
    {
        out.capacity_eve = eve->capacity;
        out.stderr_eve = eve->stderr;
        capacity.value = eve->capacity;
    }
    else
    {
        capacity.value = std::numeric_limits<double>::quiet_NaN();
        capacity.status = EveBoundStatus::undefined;
        out.capacity_eve = capacity.value;
    }
    const SecrecyBound combined = combine_secrecy(cfg, rates, capacity);
    out.mean_rate = combined.mean_rate;
    out.secrecy = combined.secrecy;
    out.stderr_secrecy = static_cast<double>(cfg.T() - cfg.B()) / cfg.T() *
                         std::hypot(out.stderr_rate, eve != nullptr ? out.stderr_eve : 0.0);
    return out;
}

}  // namespace pnsec
