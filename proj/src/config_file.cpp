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

#include "pnsec/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pnsec {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    while (true)
    {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected)
{
    throw ConfigError({"key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                       std::string(expected)});
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value)
{
    Int out{};
    const auto *end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
        bad_value(key, value, "integer");
    return out;
}

double parse_real(std::string_view key, std::string_view value)
{
    // std::from_chars for double is not available in every libstdc++ we target.
    const std::string copy(value);
    char *end = nullptr;
    const double out = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size())
        bad_value(key, value, "real number");
    return out;
}

bool is_auto(std::string_view value) { return value == "auto"; }

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = {
        "N",     "K",           "N_E",   "N_o",   "B",    "T",    "P_T_dB", "phi",    "p_tau", "sigma_psi_deg",
        "sigma_phi_deg", "beta", "beta_E", "xi_UL", "xi_DL", "pilot_design", "trials", "seed", "t0", "t_grid"};
    return keys;
}

void set_config_value(SystemConfig &cfg, std::string_view key, std::string_view value)
{
    value = trim(value);
    if (key == "N")
        cfg.N = parse_int<int>(key, value);
    else if (key == "K")
        cfg.K = parse_int<int>(key, value);
    else if (key == "N_E")
        cfg.N_E = parse_int<int>(key, value);
    else if (key == "N_o")
        cfg.N_o = parse_int<int>(key, value);
    else if (key == "B")
        cfg.B = is_auto(value) ? std::nullopt : std::optional<int>(parse_int<int>(key, value));
    else if (key == "T")
        cfg.T = parse_int<int>(key, value);
    else if (key == "P_T_dB")
        cfg.P_T_dB = parse_real(key, value);
    else if (key == "phi")
        cfg.phi = parse_real(key, value);
    else if (key == "p_tau")
        cfg.p_tau = is_auto(value) ? std::nullopt : std::optional<double>(parse_real(key, value));
    else if (key == "sigma_psi_deg")
        cfg.sigma_psi_deg = parse_real(key, value);
    else if (key == "sigma_phi_deg")
        cfg.sigma_phi_deg = parse_real(key, value);
    else if (key == "sigma_deg")
        cfg.sigma_psi_deg = cfg.sigma_phi_deg = parse_real(key, value);
    else if (key == "beta")
    {
        cfg.beta.clear();
        if (!value.empty() && !is_auto(value))
            for (auto item : split_list(value))
                cfg.beta.push_back(parse_real(key, item));
    }
    else if (key == "beta_E")
        cfg.beta_E = parse_real(key, value);
    else if (key == "xi_UL")
        cfg.xi_UL = parse_real(key, value);
    else if (key == "xi_DL")
        cfg.xi_DL = parse_real(key, value);
    else if (key == "pilot_design")
        cfg.pilot_design = parse_pilot_design(value);
    else if (key == "trials")
        cfg.trials = parse_int<std::int64_t>(key, value);
    else if (key == "seed")
        cfg.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "t0")
        cfg.t0 = is_auto(value) ? std::nullopt : std::optional<int>(parse_int<int>(key, value));
    else if (key == "t_grid")
    {
        cfg.t_grid.clear();
        if (!is_auto(value))
            for (auto item : split_list(value))
                cfg.t_grid.push_back(parse_int<int>(key, item));
    }
    else
        throw ConfigError({"unknown key '" + std::string(key) + "'"});
}

SystemConfig parse_config(std::string_view text)
{
    SystemConfig cfg;
    std::set<std::string> seen;
    std::vector<std::string> issues;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            issues.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
        {
            issues.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            continue;
        }
        if (!seen.insert(key).second)
        {
            issues.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            continue;
        }
        try
        {
            set_config_value(cfg, key, line.substr(eq + 1));
        }
        catch (const ConfigError &e)
        {
            for (const auto &issue : e.issues())
                issues.push_back("line " + std::to_string(line_no) + ": " + issue);
        }
    }
    for (const auto &key : config_keys())
        if (!seen.count(key))
            issues.push_back("missing required key '" + key + "'");
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return cfg;
}

SystemConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path.string() + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const SystemConfig &cfg)
{
    auto join_reals = [](const std::vector<double> &v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out += (i ? "," : "") + format_real(v[i]);
        return out;
    };
    std::ostringstream out;
    out << "N = " << cfg.N << '\n'
        << "K = " << cfg.K << '\n'
        << "N_E = " << cfg.N_E << '\n'
        << "N_o = " << cfg.N_o << '\n'
        << "B = " << (cfg.B ? std::to_string(*cfg.B) : "auto") << '\n'
        << "T = " << cfg.T << '\n'
        << "P_T_dB = " << format_real(cfg.P_T_dB) << '\n'
        << "phi = " << format_real(cfg.phi) << '\n'
        << "p_tau = " << (cfg.p_tau ? format_real(*cfg.p_tau) : "auto") << '\n'
        << "sigma_psi_deg = " << format_real(cfg.sigma_psi_deg) << '\n'
        << "sigma_phi_deg = " << format_real(cfg.sigma_phi_deg) << '\n'
        << "beta = " << join_reals(cfg.beta) << '\n'
        << "beta_E = " << format_real(cfg.beta_E) << '\n'
        << "xi_UL = " << format_real(cfg.xi_UL) << '\n'
        << "xi_DL = " << format_real(cfg.xi_DL) << '\n'
        << "pilot_design = " << to_string(cfg.pilot_design) << '\n'
        << "trials = " << cfg.trials << '\n'
        << "seed = " << cfg.seed << '\n'
        << "t0 = " << (cfg.t0 ? std::to_string(*cfg.t0) : "auto") << '\n';
    out << "t_grid = ";
    if (cfg.t_grid.empty())
        out << "auto";
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i)
        out << (i ? "," : "") << cfg.t_grid[i];
    out << '\n';
    return out.str();
}

}  // namespace pnsec
