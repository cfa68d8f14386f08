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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pnsec {

// One row per (sweep value, MT). Missing quantities (e.g. MC columns of an
// analytic-only run) serialise as empty fields.
struct ReportRow
{
    std::string sweep_var = "none";
    double sweep_value = 0.0;
    int mt = 1;  // 1-based
    SystemConfig config;  // fully resolved

    std::optional<double> rate_analytic;
    std::optional<double> Ce_bound;
    std::optional<double> secrecy_analytic;
    std::optional<double> rate_mc;
    std::optional<double> Ce_mc;
    std::optional<double> secrecy_mc;
    std::optional<double> stderr_rate;
    std::optional<double> stderr_Ce;
    std::optional<double> stderr_secrecy;  // not a CSV column; feeds plot bands
    std::optional<double> phi_star;
};

using SecrecyReport = std::vector<ReportRow>;

const std::vector<std::string> &csv_columns();

// 9 significant digits; nan/inf spelled "nan", "inf", "-inf".
std::string format_number(double value);

std::string to_csv(const SecrecyReport &report);

// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

void write_csv(const SecrecyReport &report, const std::filesystem::path &path);

// Parsed CSV: header plus rows of raw fields.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const;
};

CsvTable parse_csv(const std::string &text);

// Whitespace-delimited plot data: one file per (N_o, K) combination with lines
// "x analytic mc mc_lo mc_hi" (mc +/- 2 stderr), for MT 1 rows. Returns the
// files written, in (N_o, K) order.
std::vector<std::filesystem::path> emit_plotdata(const SecrecyReport &report, const std::filesystem::path &dir,
                                                 const std::string &stem = "plot");

struct PlotPoint
{
    double x = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    double mc_lo = 0.0;
    double mc_hi = 0.0;
};

std::vector<PlotPoint> read_plotdata(const std::filesystem::path &path);

}  // namespace pnsec
