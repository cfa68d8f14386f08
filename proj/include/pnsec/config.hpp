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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pnsec {

enum class PilotDesign { time_orthogonal, unitary_overlapping };

std::string_view to_string(PilotDesign design);
PilotDesign parse_pilot_design(std::string_view text);

// Raw, user-facing parameters. Optional fields mean "auto" and are resolved by validate().
// Slot indices are 1-based throughout, t in [1, T].
struct SystemConfig
{
    int N = 128;   // BS antennas
    int K = 4;     // single-antenna MTs
    int N_E = 4;   // eavesdropper antennas
    int N_o = 1;   // BS local oscillators
    std::optional<int> B;  // pilot length; auto = K
    int T = 500;   // coherence block length in slots

    double P_T_dB = 10.0;
    double phi = 0.5;             // fraction of power spent on data
    std::optional<double> p_tau;  // pilot power per symbol; auto = P_T / K

    double sigma_psi_deg = 6.0;  // BS LO phase increment std-dev
    double sigma_phi_deg = 6.0;  // MT phase increment std-dev

    std::vector<double> beta;  // per-MT path loss; empty = all 1, one value = broadcast
    double beta_E = 1.0;
    double xi_UL = 1.0;
    double xi_DL = 1.0;

    std::optional<int> t0;  // precoder design slot; auto = B + 1
    PilotDesign pilot_design = PilotDesign::time_orthogonal;

    std::int64_t trials = 5000;
    std::uint64_t seed = 1;
    std::vector<int> t_grid;  // empty = auto (10 evenly spaced data slots)

    bool operator==(const SystemConfig &) const = default;
};

// Thrown by validate(); carries one message per violated invariant.
class ConfigError : public std::invalid_argument
{
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string> &issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

// Numerical failure inside the model (singular Sigma, rank-deficient estimates, ...).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct PowerSplit
{
    double p = 0.0;  // per-MT data power
    double q = 0.0;  // per-dimension AN power
};

// SystemConfig with every invariant checked, every "auto" resolved and unit
// conversions cached. Immutable; share freely across threads.
class ValidatedConfig
{
public:
    const SystemConfig &config() const noexcept { return cfg_; }

    int N() const noexcept { return cfg_.N; }
    int K() const noexcept { return cfg_.K; }
    int N_E() const noexcept { return cfg_.N_E; }
    int N_o() const noexcept { return cfg_.N_o; }
    int B() const noexcept { return *cfg_.B; }
    int T() const noexcept { return cfg_.T; }
    int L() const noexcept { return cfg_.N - cfg_.K; }
    int t0() const noexcept { return *cfg_.t0; }
    int antennas_per_lo() const noexcept { return cfg_.N / cfg_.N_o; }

    double P_T() const noexcept { return P_T_; }
    double phi() const noexcept { return cfg_.phi; }
    double p_tau() const noexcept { return *cfg_.p_tau; }
    double beta(int k) const { return cfg_.beta.at(static_cast<std::size_t>(k)); }
    double beta_E() const noexcept { return cfg_.beta_E; }
    double xi_UL() const noexcept { return cfg_.xi_UL; }
    double xi_DL() const noexcept { return cfg_.xi_DL; }

    // Increment variances in rad^2.
    double var_psi() const noexcept { return var_psi_; }
    double var_phi() const noexcept { return var_phi_; }
    double var_total() const noexcept { return var_psi_ + var_phi_; }

    const std::vector<int> &t_grid() const noexcept { return cfg_.t_grid; }
    // Number of data slots represented by each t_grid entry; sums to T - B.
    const std::vector<int> &slot_weights() const noexcept { return weights_; }
    // Largest slot touched by training, precoding or evaluation.
    int last_slot() const noexcept { return last_slot_; }

    bool eve_bound_defined() const noexcept { return L() > cfg_.N_E; }
    const std::vector<std::string> &warnings() const noexcept { return warnings_; }

    // Copy with a different power split; phi must lie in (0, 1].
    ValidatedConfig with_phi(double phi) const;

    bool operator==(const ValidatedConfig &other) const { return cfg_ == other.cfg_; }

private:
    friend ValidatedConfig validate(const SystemConfig &);

    SystemConfig cfg_;
    double P_T_ = 0.0;
    double var_psi_ = 0.0;
    double var_phi_ = 0.0;
    std::vector<int> weights_;
    int last_slot_ = 0;
    std::vector<std::string> warnings_;
};

ValidatedConfig validate(const SystemConfig &cfg);

PowerSplit power_split(const ValidatedConfig &cfg);

// Evenly spaced data slots: midpoints of `points` near-equal cells of {B+1..T}.
std::vector<int> auto_t_grid(int B, int T, int points = 10);

// Cell weights for a sorted grid over {B+1..T}: each data slot is assigned to
// its nearest grid point (ties to the earlier one).
std::vector<int> grid_slot_weights(const std::vector<int> &grid, int B, int T);

}  // namespace pnsec
