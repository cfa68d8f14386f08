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

#include "pnsec/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <utility>

namespace pnsec {

namespace {

std::string opt(const std::optional<double> &v) { return v ? format_number(*v) : std::string(); }

std::string quote_if_needed(const std::string &field)
{
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

const std::vector<std::string> &csv_columns()
{
    static const std::vector<std::string> columns = {
        "sweep_var",     "sweep_value",   "mt",           "N",           "K",          "N_E",
        "N_o",           "B",             "T",            "P_T_dB",      "phi",        "p_tau",
        "sigma_psi_deg", "sigma_phi_deg", "beta_k",       "beta_E",      "xi_UL",      "xi_DL",
        "t0",            "pilot_design",  "t_grid_size",  "rate_analytic", "Ce_bound", "secrecy_analytic",
        "rate_mc",       "Ce_mc",         "secrecy_mc",   "stderr_rate", "stderr_Ce",  "phi_star",
        "M",             "seed"};
    return columns;
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string to_csv(const SecrecyReport &report)
{
    std::ostringstream out;
    const auto &cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto &row : report)
    {
        const SystemConfig &c = row.config;
        const auto beta_k = c.beta.size() >= static_cast<std::size_t>(row.mt) ? c.beta[row.mt - 1] : 1.0;
        const std::vector<std::string> fields = {
            quote_if_needed(row.sweep_var),
            format_number(row.sweep_value),
            std::to_string(row.mt),
            std::to_string(c.N),
            std::to_string(c.K),
            std::to_string(c.N_E),
            std::to_string(c.N_o),
            c.B ? std::to_string(*c.B) : "",
            std::to_string(c.T),
            format_number(c.P_T_dB),
            format_number(c.phi),
            c.p_tau ? format_number(*c.p_tau) : "",
            format_number(c.sigma_psi_deg),
            format_number(c.sigma_phi_deg),
            format_number(beta_k),
            format_number(c.beta_E),
            format_number(c.xi_UL),
            format_number(c.xi_DL),
            c.t0 ? std::to_string(*c.t0) : "",
            std::string(to_string(c.pilot_design)),
            std::to_string(c.t_grid.size()),
            opt(row.rate_analytic),
            opt(row.Ce_bound),
            opt(row.secrecy_analytic),
            opt(row.rate_mc),
            opt(row.Ce_mc),
            opt(row.secrecy_mc),
            opt(row.stderr_rate),
            opt(row.stderr_Ce),
            opt(row.phi_star),
            std::to_string(c.trials),
            std::to_string(c.seed)};
        for (std::size_t i = 0; i < fields.size(); ++i)
            out << (i ? "," : "") << fields[i];
        out << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

void write_csv(const SecrecyReport &report, const std::filesystem::path &path)
{
    write_file_atomic(path, to_csv(report));
}

std::size_t CsvTable::column(const std::string &name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw std::out_of_range("no CSV column '" + name + "'");
}

CsvTable parse_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"')
                field += text[++i];
            else if (c == '"')
                quoted = false;
            else
                field += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
            fields.push_back(std::exchange(field, {}));
        else if (c == '\n')
        {
            fields.push_back(std::exchange(field, {}));
            records.push_back(std::exchange(fields, {}));
        }
        else if (c != '\r')
            field += c;
    }
    if (!field.empty() || !fields.empty())
    {
        fields.push_back(field);
        records.push_back(fields);
    }
    CsvTable table;
    if (!records.empty())
    {
        table.header = records.front();
        table.rows.assign(records.begin() + 1, records.end());
    }
    return table;
}

std::vector<std::filesystem::path> emit_plotdata(const SecrecyReport &report, const std::filesystem::path &dir,
                                                 const std::string &stem)
{
    std::map<std::pair<int, int>, std::vector<const ReportRow *>> curves;
    for (const auto &row : report)
        if (row.mt == 1)
            curves[{row.config.N_o, row.config.K}].push_back(&row);
    if (curves.empty())
        throw std::runtime_error("plot data needs a non-empty report");

    const auto nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::filesystem::path> written;
    for (const auto &[key, rows] : curves)
    {
        std::ostringstream out;
        out << "# " << rows.front()->sweep_var << " secrecy_analytic secrecy_mc mc_minus_2se mc_plus_2se"
            << "  (N_o=" << key.first << ", K=" << key.second << ")\n";
        for (const ReportRow *row : rows)
        {
            const double mc = row->secrecy_mc.value_or(nan);
            const double se = row->stderr_secrecy.value_or(row->secrecy_mc ? 0.0 : nan);
            out << format_number(row->sweep_value) << ' ' << format_number(row->secrecy_analytic.value_or(nan))
                << ' ' << format_number(mc) << ' ' << format_number(mc - 2.0 * se) << ' '
                << format_number(mc + 2.0 * se) << '\n';
        }
        const auto path = dir / (stem + "_No" + std::to_string(key.first) + "_K" + std::to_string(key.second) + ".dat");
        try
        {
            write_file_atomic(path, out.str());
        }
        catch (const std::exception &e)
        {
            throw std::runtime_error("writing plot data '" + path.string() + "': " + e.what());
        }
        written.push_back(path);
    }
    return written;
}

std::vector<PlotPoint> read_plotdata(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open plot data '" + path.string() + "'");
    std::vector<PlotPoint> out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream fields(line);
        std::string x, a, m, lo, hi;
        fields >> x >> a >> m >> lo >> hi;
        out.push_back({std::stod(x), std::stod(a), std::stod(m), std::stod(lo), std::stod(hi)});
    }
    return out;
}

}  // namespace pnsec
