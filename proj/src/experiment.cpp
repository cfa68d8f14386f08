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

#include "pnsec/experiment.hpp"

#include "pnsec/bounds.hpp"
#include "pnsec/montecarlo.hpp"
#include "pnsec/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>

namespace pnsec {

std::string_view to_string(Mode mode)
{
    switch (mode)
    {
    case Mode::analytic:
        return "analytic";
    case Mode::mc:
        return "mc";
    case Mode::both:
        return "both";
    }
    return "?";
}

Mode parse_mode(std::string_view text)
{
    if (text == "analytic")
        return Mode::analytic;
    if (text == "mc")
        return Mode::mc;
    if (text == "both")
        return Mode::both;
    throw ConfigError({"unknown mode '" + std::string(text) + "' (expected analytic, mc or both)"});
}

PointEvaluation evaluate_point(const SystemConfig &cfg, const RunOptions &options, const std::string &sweep_var,
                               double sweep_value)
{
    const ValidatedConfig vc = validate(cfg);
    const PilotSet<double> pilots = make_pilots<double>(vc);
    const std::vector<double> grid = options.phi_grid.empty() ? default_phi_grid() : options.phi_grid;

    PointEvaluation out;
    out.notes = vc.warnings();

    std::optional<SimulationResult> sim;
    if (uses_mc(options.mode))
    {
        const bool eavesdropper = vc.N_E() <= vc.L();
        if (!eavesdropper)
            out.notes.push_back("N_E > L: eavesdropper not simulated");
        sim = simulate(vc, pilots, SimulationOptions{eavesdropper, options.threads});
    }

    const int reported = options.all_mts ? vc.K() : 1;
    for (int k = 0; k < reported; ++k)
    {
        ReportRow row;
        row.sweep_var = sweep_var;
        row.sweep_value = sweep_value;
        row.mt = k + 1;

        ValidatedConfig at = vc;
        if (options.optimize)
        {
            const PhiOptimum best = optimize_phi(vc, pilots, k, grid);
            out.curves.push_back({k + 1, grid, best.curve});
            at = vc.with_phi(best.phi_star);
            row.phi_star = best.phi_star;
        }
        row.config = at.config();

        SlotRates slots;
        slots.mt = k + 1;
        slots.t_grid = at.t_grid();

        if (uses_analytic(options.mode))
        {
            slots.analytic = rate_curve(at, pilots, k);
            const SecrecyBound bound = combine_secrecy(at, slots.analytic, eve_capacity_upper(at));
            row.rate_analytic = bound.mean_rate;
            row.Ce_bound = bound.eve.value;
            row.secrecy_analytic = bound.secrecy;
        }

        if (sim)
        {
            std::optional<EveEstimate> eve;
            if (!sim->eve_gain.empty())
            {
                if (power_split(at).q > 0.0)
                    eve = simulate_eve(at, *sim, k);
                else
                {
                    eve.emplace();
                    eve->capacity = std::numeric_limits<double>::infinity();
                }
            }
            const McSecrecy mc = mc_secrecy(at, sim->moments, eve ? &*eve : nullptr, k);
            for (const McRate &r : mc.rates)
            {
                slots.mc.push_back(r.rate);
                slots.mc_stderr.push_back(r.stderr);
            }
            row.rate_mc = mc.mean_rate;
            row.Ce_mc = mc.capacity_eve;
            row.secrecy_mc = mc.secrecy;
            row.stderr_rate = mc.stderr_rate;
            row.stderr_Ce = mc.stderr_eve;
            row.stderr_secrecy = mc.stderr_secrecy;
            if (mc.variance_clamped)
                out.notes.push_back("MT " + std::to_string(k + 1) +
                                    ": negative desired-gain variance estimate clamped to 0");
        }
        out.rows.push_back(std::move(row));
        out.slots.push_back(std::move(slots));
    }
    return out;
}

const std::vector<std::string> &sweep_variables()
{
    static const std::vector<std::string> vars = {"phi", "sigma_deg", "N_E", "N_o", "K"};
    return vars;
}

SweepAxis parse_sweep_axis(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError({"sweep '" + std::string(text) + "': expected VAR=v1,v2,..."});
    SweepAxis axis;
    axis.variable = std::string(text.substr(0, eq));
    const auto &vars = sweep_variables();
    if (std::find(vars.begin(), vars.end(), axis.variable) == vars.end())
        throw ConfigError({"sweep variable '" + axis.variable + "' not one of phi, sigma_deg, N_E, N_o, K"});
    std::string_view rest = text.substr(eq + 1);
    while (true)
    {
        const auto comma = rest.find(',');
        const std::string item(rest.substr(0, comma));
        char *end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size())
            throw ConfigError({"sweep '" + axis.variable + "': cannot parse value '" + item + "'"});
        axis.values.push_back(v);
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    return axis;
}

void apply_sweep_value(SystemConfig &cfg, const std::string &variable, double value)
{
    auto as_int = [&]() {
        if (value != std::floor(value))
            throw ConfigError({"sweep '" + variable + "': value must be an integer"});
        return static_cast<int>(value);
    };
    if (variable == "phi")
        cfg.phi = value;
    else if (variable == "sigma_deg")
        cfg.sigma_psi_deg = cfg.sigma_phi_deg = value;
    else if (variable == "N_E")
        cfg.N_E = as_int();
    else if (variable == "N_o")
        cfg.N_o = as_int();
    else if (variable == "K")
        cfg.K = as_int();
    else
        throw ConfigError({"unknown sweep variable '" + variable + "'"});
}

std::vector<PointEvaluation> run_sweep(const SystemConfig &base, const std::vector<SweepAxis> &axes,
                                       const RunOptions &options)
{
    if (axes.empty())
        return {evaluate_point(base, options)};
    for (const auto &axis : axes)
        if (axis.values.empty())
            throw ConfigError({"sweep '" + axis.variable + "' has no values"});

    // Validate every point before spending time on any of them.
    std::vector<std::vector<std::size_t>> combos(1);
    for (const auto &axis : axes)
    {
        std::vector<std::vector<std::size_t>> next;
        for (const auto &prefix : combos)
            for (std::size_t i = 0; i < axis.values.size(); ++i)
            {
                next.push_back(prefix);
                next.back().push_back(i);
            }
        combos = std::move(next);
    }
    // First axis innermost, so each curve over it is contiguous.
    std::stable_sort(combos.begin(), combos.end(), [](const auto &a, const auto &b) {
        return std::lexicographical_compare(a.begin() + 1, a.end(), b.begin() + 1, b.end());
    });

    std::vector<SystemConfig> configs;
    std::vector<std::string> issues;
    for (const auto &combo : combos)
    {
        SystemConfig cfg = base;
        for (std::size_t a = 0; a < axes.size(); ++a)
            apply_sweep_value(cfg, axes[a].variable, axes[a].values[combo[a]]);
        try
        {
            validate(cfg);
        }
        catch (const ConfigError &e)
        {
            std::ostringstream where;
            for (std::size_t a = 0; a < axes.size(); ++a)
                where << (a ? ", " : "") << axes[a].variable << '=' << axes[a].values[combo[a]];
            for (const auto &issue : e.issues())
                issues.push_back(where.str() + ": " + issue);
        }
        configs.push_back(cfg);
    }
    if (!issues.empty())
        throw ConfigError(std::move(issues));

    std::vector<PointEvaluation> out;
    for (std::size_t i = 0; i < configs.size(); ++i)
        out.push_back(evaluate_point(configs[i], options, axes.front().variable,
                                     axes.front().values[combos[i].front()]));
    return out;
}

AgreementReport agreement(const std::vector<PointEvaluation> &points)
{
    AgreementReport rep;
    double sum = 0.0;
    long count = 0;
    for (const auto &point : points)
    {
        for (const auto &s : point.slots)
        {
            if (s.analytic.empty() || s.mc.empty())
                continue;
            for (std::size_t i = 0; i < s.analytic.size(); ++i)
            {
                if (!(s.analytic[i] > 0.0))
                    continue;
                const double gap = std::abs(s.mc[i] - s.analytic[i]) / s.analytic[i];
                sum += gap;
                ++count;
                if (gap > rep.max_relative_gap)
                {
                    rep.max_relative_gap = gap;
                    rep.worst_mt = s.mt;
                    rep.worst_slot = s.t_grid[i];
                }
            }
        }
        for (const auto &row : point.rows)
            if (row.secrecy_analytic && row.secrecy_mc)
                rep.max_secrecy_gap = std::max(rep.max_secrecy_gap, std::abs(*row.secrecy_mc - *row.secrecy_analytic));
    }
    rep.mean_relative_gap = count ? sum / static_cast<double>(count) : 0.0;
    return rep;
}

std::string format_summary(const std::vector<PointEvaluation> &points, std::string_view title)
{
    std::ostringstream out;
    out << title << '\n';
    auto value = [](const std::optional<double> &v) { return v ? format_number(*v) : std::string("-"); };
    for (const auto &point : points)
    {
        for (const auto &row : point.rows)
        {
            const SystemConfig &c = row.config;
            out << '\n';
            if (row.sweep_var != "none")
                out << row.sweep_var << " = " << format_number(row.sweep_value) << ", ";
            out << "MT " << row.mt << "  (N=" << c.N << " K=" << c.K << " N_E=" << c.N_E << " N_o=" << c.N_o
                << " phi=" << format_number(c.phi) << " sigma_psi=" << format_number(c.sigma_psi_deg)
                << " sigma_phi=" << format_number(c.sigma_phi_deg) << " deg)\n";
            if (row.phi_star)
                out << "  phi*              " << format_number(*row.phi_star) << '\n';
            if (row.rate_analytic)
                out << "  analytic          rate " << value(row.rate_analytic) << "  Ce_bound "
                    << value(row.Ce_bound) << "  secrecy " << value(row.secrecy_analytic) << '\n';
            if (row.rate_mc)
                out << "  monte carlo (M=" << c.trials << ")  rate " << value(row.rate_mc) << " +/- "
                    << value(row.stderr_rate) << "  Ce " << value(row.Ce_mc) << " +/- " << value(row.stderr_Ce)
                    << "  secrecy " << value(row.secrecy_mc) << '\n';
        }
        for (const auto &note : point.notes)
            out << "  note: " << note << '\n';
    }
    return out.str();
}

}  // namespace pnsec
