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

// Experiment orchestration on top of the bounds and Monte Carlo layers:
// single points, cartesian sweeps, phi optimisation and agreement reports.

#include "pnsec/config.hpp"
#include "pnsec/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pnsec {

enum class Mode
{
    analytic,
    mc,
    both
};

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

inline bool uses_analytic(Mode m) { return m != Mode::mc; }
inline bool uses_mc(Mode m) { return m != Mode::analytic; }

struct RunOptions
{
    Mode mode = Mode::analytic;
    int threads = 1;        // 0 = hardware concurrency
    bool all_mts = false;   // report every MT instead of MT 1 only
    bool optimize = false;  // evaluate at phi* found on phi_grid
    std::vector<double> phi_grid;  // empty = 0.01..0.99 step 0.01
};

// Per-slot rate curves of one MT on the t_grid.
struct SlotRates
{
    int mt = 1;  // 1-based
    std::vector<int> t_grid;
    std::vector<double> analytic;  // empty unless the analytic path ran
    std::vector<double> mc;        // empty unless Monte Carlo ran
    std::vector<double> mc_stderr;
};

struct PhiCurve
{
    int mt = 1;
    std::vector<double> phi;
    std::vector<double> secrecy;  // analytic secrecy at every phi
};

struct PointEvaluation
{
    SecrecyReport rows;
    std::vector<SlotRates> slots;
    std::vector<PhiCurve> curves;  // only when optimising
    std::vector<std::string> notes;
};

// Evaluates one configuration. The Monte Carlo run does not depend on phi and
// is shared by every phi the point needs.
PointEvaluation evaluate_point(const SystemConfig &cfg, const RunOptions &options,
                               const std::string &sweep_var = "none", double sweep_value = 0.0);

// Variables a sweep may vary.
const std::vector<std::string> &sweep_variables();

struct SweepAxis
{
    std::string variable;
    std::vector<double> values;
};

// Parses "VAR=v1,v2,...".
SweepAxis parse_sweep_axis(std::string_view text);

// Applies one sweep value to a raw config; sigma_deg sets both phase-noise
// standard deviations.
void apply_sweep_value(SystemConfig &cfg, const std::string &variable, double value);

// Cartesian product of the axes, first axis outermost. Rows carry the first
// axis as sweep_var and sweep_value.
std::vector<PointEvaluation> run_sweep(const SystemConfig &base, const std::vector<SweepAxis> &axes,
                                       const RunOptions &options);

// Largest |mc - analytic| / analytic over every reported MT and slot.
struct AgreementReport
{
    double max_relative_gap = 0.0;
    int worst_mt = 0;
    int worst_slot = 0;
    double mean_relative_gap = 0.0;
    double max_secrecy_gap = 0.0;  // |secrecy_mc - secrecy_analytic| over rows
    bool within(double tolerance) const { return max_relative_gap <= tolerance; }
};

AgreementReport agreement(const std::vector<PointEvaluation> &points);

inline constexpr double agreement_tolerance = 0.10;

// Human-readable summary of evaluated points.
std::string format_summary(const std::vector<PointEvaluation> &points, std::string_view title);

}  // namespace pnsec
