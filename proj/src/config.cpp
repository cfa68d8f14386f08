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

#include "pnsec/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pnsec {

namespace {

std::string join_issues(const std::vector<std::string> &issues)
{
    std::ostringstream out;
    out << "invalid configuration:";
    for (const auto &issue : issues)
        out << "\n  - " << issue;
    return out.str();
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

std::string_view to_string(PilotDesign design)
{
    switch (design)
    {
    case PilotDesign::time_orthogonal:
        return "time_orthogonal";
    case PilotDesign::unitary_overlapping:
        return "unitary_overlapping";
    }
    return "unknown";
}

PilotDesign parse_pilot_design(std::string_view text)
{
    if (text == "time_orthogonal")
        return PilotDesign::time_orthogonal;
    if (text == "unitary_overlapping")
        return PilotDesign::unitary_overlapping;
    throw ConfigError({"pilot_design must be time_orthogonal or unitary_overlapping, got '" + std::string(text) + "'"});
}

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues))
{
}

std::vector<int> auto_t_grid(int B, int T, int points)
{
    const int slots = T - B;
    points = std::clamp(points, 1, std::max(slots, 1));
    std::vector<int> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
    {
        // Cell i covers [lo, hi) in zero-based data-slot offsets.
        const int lo = (i * slots) / points;
        const int hi = ((i + 1) * slots) / points;
        grid.push_back(B + 1 + (lo + hi - 1) / 2);
    }
    return grid;
}

std::vector<int> grid_slot_weights(const std::vector<int> &grid, int B, int T)
{
    std::vector<int> weights(grid.size(), 0);
    if (grid.empty())
        return weights;
    std::size_t cell = 0;
    for (int t = B + 1; t <= T; ++t)
    {
        while (cell + 1 < grid.size() && std::abs(grid[cell + 1] - t) < std::abs(grid[cell] - t))
            ++cell;
        ++weights[cell];
    }
    return weights;
}

ValidatedConfig validate(const SystemConfig &input)
{
    std::vector<std::string> issues;
    ValidatedConfig out;
    SystemConfig &cfg = out.cfg_;
    cfg = input;

    if (cfg.N <= 0)
        issues.push_back("N must be positive");
    if (cfg.K <= 0)
        issues.push_back("K must be positive");
    if (cfg.N_E <= 0)
        issues.push_back("N_E must be positive");
    if (cfg.N_o <= 0)
        issues.push_back("N_o must be positive");
    else if (cfg.N > 0 && cfg.N % cfg.N_o != 0)
        issues.push_back("N mod N_o != 0 (N=" + std::to_string(cfg.N) + ", N_o=" + std::to_string(cfg.N_o) + ")");
    if (cfg.N > 0 && cfg.K > 0 && cfg.N - cfg.K <= 0)
        issues.push_back("L = N - K must be positive");

    if (!cfg.B)
        cfg.B = cfg.K;
    if (*cfg.B < cfg.K)
        issues.push_back("B must be >= K");
    if (cfg.T <= *cfg.B)
        issues.push_back("T must be > B");

    if (!std::isfinite(cfg.P_T_dB))
        issues.push_back("P_T_dB must be finite");
    if (!(cfg.phi > 0.0 && cfg.phi <= 1.0))
        issues.push_back("phi must lie in (0, 1]");

    out.P_T_ = std::pow(10.0, cfg.P_T_dB / 10.0);
    if (!cfg.p_tau && cfg.K > 0)
        cfg.p_tau = out.P_T_ / cfg.K;
    if (cfg.p_tau && !(*cfg.p_tau > 0.0))
        issues.push_back("p_tau must be > 0");

    if (!(cfg.sigma_psi_deg >= 0.0) || !(cfg.sigma_phi_deg >= 0.0))
        issues.push_back("phase-noise standard deviations must be >= 0");
    out.var_psi_ = std::pow(deg_to_rad(cfg.sigma_psi_deg), 2);
    out.var_phi_ = std::pow(deg_to_rad(cfg.sigma_phi_deg), 2);

    if (cfg.K > 0)
    {
        if (cfg.beta.empty())
            cfg.beta.assign(static_cast<std::size_t>(cfg.K), 1.0);
        else if (cfg.beta.size() == 1)
            cfg.beta.assign(static_cast<std::size_t>(cfg.K), cfg.beta.front());
        if (cfg.beta.size() != static_cast<std::size_t>(cfg.K))
            issues.push_back("beta must have K entries (got " + std::to_string(cfg.beta.size()) + ")");
    }
    if (std::any_of(cfg.beta.begin(), cfg.beta.end(), [](double b) { return !(b >= 0.0); }))
        issues.push_back("beta entries must be >= 0");
    if (!(cfg.beta_E > 0.0))
        issues.push_back("beta_E must be > 0");
    if (!(cfg.xi_UL >= 0.0))
        issues.push_back("xi_UL must be >= 0");
    if (!(cfg.xi_DL >= 0.0))
        issues.push_back("xi_DL must be >= 0");

    if (!cfg.t0)
        cfg.t0 = *cfg.B + 1;
    if (*cfg.t0 < *cfg.B + 1 || *cfg.t0 > cfg.T)
        issues.push_back("t0 must lie in [B+1, T]");

    if (cfg.trials < 1)
        issues.push_back("trials must be >= 1");

    if (cfg.t_grid.empty() && cfg.T > *cfg.B)
        cfg.t_grid = auto_t_grid(*cfg.B, cfg.T);
    std::sort(cfg.t_grid.begin(), cfg.t_grid.end());
    if (std::adjacent_find(cfg.t_grid.begin(), cfg.t_grid.end()) != cfg.t_grid.end())
        issues.push_back("t_grid entries must be distinct");
    if (!cfg.t_grid.empty() && (cfg.t_grid.front() < *cfg.B + 1 || cfg.t_grid.back() > cfg.T))
        issues.push_back("t_grid must be a subset of {B+1, ..., T}");

    if (!issues.empty())
        throw ConfigError(std::move(issues));

    out.weights_ = grid_slot_weights(cfg.t_grid, *cfg.B, cfg.T);
    out.last_slot_ = std::max({*cfg.B, *cfg.t0, cfg.t_grid.back()});

    const int L = cfg.N - cfg.K;
    if (L <= cfg.N_E)
        out.warnings_.push_back("L=" + std::to_string(L) + " <= N_E=" + std::to_string(cfg.N_E) +
                                ", eve upper bound undefined");
    return out;
}

ValidatedConfig ValidatedConfig::with_phi(double phi) const
{
    SystemConfig copy = cfg_;
    copy.phi = phi;
    return validate(copy);
}

PowerSplit power_split(const ValidatedConfig &cfg)
{
    return {cfg.phi() * cfg.P_T() / cfg.K(), (1.0 - cfg.phi()) * cfg.P_T() / cfg.L()};
}

}  // namespace pnsec
