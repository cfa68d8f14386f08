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

#include "pnsec/cli.hpp"

#include "pnsec/bounds.hpp"
#include "pnsec/config_file.hpp"
#include "pnsec/experiment.hpp"
#include "pnsec/report.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace pnsec::cli {

namespace {

struct Arguments
{
    std::string config;
    std::string out_dir = ".";
    int threads = 1;
    std::string mode;
    std::vector<std::string> sweeps;
    std::string phi_grid;
    bool all_mts = false;
};

std::vector<double> parse_phi_grid(const std::string &text)
{
    std::vector<double> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ':'))
    {
        char *end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size())
            throw ConfigError({"--phi-grid: cannot parse '" + item + "'"});
        parts.push_back(v);
    }
    if (parts.size() != 3)
        throw ConfigError({"--phi-grid expects start:stop:step"});
    return phi_grid(parts[0], parts[1], parts[2]);
}

std::string slot_csv(const std::vector<PointEvaluation> &points)
{
    std::ostringstream out;
    out << "sweep_var,sweep_value,mt,t,rate_analytic,rate_mc,stderr_rate,relative_gap\n";
    for (const auto &point : points)
        for (std::size_t r = 0; r < point.slots.size(); ++r)
        {
            const auto &s = point.slots[r];
            const auto &row = point.rows[r];
            for (std::size_t i = 0; i < s.t_grid.size(); ++i)
            {
                const double a = s.analytic.at(i);
                const double m = s.mc.at(i);
                out << row.sweep_var << ',' << format_number(row.sweep_value) << ',' << s.mt << ',' << s.t_grid[i]
                    << ',' << format_number(a) << ',' << format_number(m) << ',' << format_number(s.mc_stderr.at(i))
                    << ',' << format_number(a > 0.0 ? std::abs(m - a) / a : 0.0) << '\n';
            }
        }
    return out.str();
}

std::string curve_csv(const std::vector<PointEvaluation> &points)
{
    std::ostringstream out;
    out << "sweep_var,sweep_value,N_o,K,mt,phi,secrecy_analytic\n";
    for (const auto &point : points)
        for (std::size_t r = 0; r < point.curves.size(); ++r)
        {
            const auto &row = point.rows[r];
            const auto &curve = point.curves[r];
            for (std::size_t i = 0; i < curve.phi.size(); ++i)
                out << row.sweep_var << ',' << format_number(row.sweep_value) << ',' << row.config.N_o << ','
                    << row.config.K << ',' << curve.mt << ',' << format_number(curve.phi[i]) << ','
                    << format_number(curve.secrecy[i]) << '\n';
        }
    return out.str();
}

SecrecyReport collect_rows(const std::vector<PointEvaluation> &points)
{
    SecrecyReport rows;
    for (const auto &p : points)
        rows.insert(rows.end(), p.rows.begin(), p.rows.end());
    return rows;
}

int execute(const std::string &command, const Arguments &args, std::ostream &out)
{
    const SystemConfig base = load_config(args.config);

    RunOptions options;
    options.threads = args.threads;
    options.all_mts = args.all_mts;
    if (!args.phi_grid.empty())
        options.phi_grid = parse_phi_grid(args.phi_grid);
    if (command == "simulate")
        options.mode = Mode::mc;
    else if (command == "validate")
        options.mode = Mode::both;
    else if (!args.mode.empty())
        options.mode = parse_mode(args.mode);
    options.optimize = command == "optimize-phi";

    std::vector<SweepAxis> axes;
    for (const auto &s : args.sweeps)
        axes.push_back(parse_sweep_axis(s));
    if (command == "sweep" && axes.empty())
        throw ConfigError({"sweep needs at least one --sweep VAR=v1,v2,..."});

    const std::vector<PointEvaluation> points = run_sweep(base, axes, options);

    const std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream summary;
    summary << format_summary(points, "pnsec " + command + " (mode " + std::string(to_string(options.mode)) + ")");

    write_csv(collect_rows(points), dir / (command + ".csv"));
    if (!axes.empty())
        emit_plotdata(collect_rows(points), dir, command);
    if (options.optimize)
        write_file_atomic(dir / (command + "_curve.csv"), curve_csv(points));
    if (command == "validate")
    {
        write_file_atomic(dir / "validate_slots.csv", slot_csv(points));
        const AgreementReport rep = agreement(points);
        summary << "\nagreement: max relative rate gap " << format_number(rep.max_relative_gap) << " (MT "
                << rep.worst_mt << ", t=" << rep.worst_slot << "), mean " << format_number(rep.mean_relative_gap)
                << ", tolerance " << format_number(agreement_tolerance) << ": "
                << (rep.within(agreement_tolerance) ? "within" : "EXCEEDED") << '\n'
                << "max |secrecy_mc - secrecy_analytic| " << format_number(rep.max_secrecy_gap) << " bits\n";
    }
    write_file_atomic(dir / (command + "_summary.txt"), summary.str());
    out << summary.str();
    return exit_ok;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Ergodic secrecy rate of massive MIMO downlinks with phase noise and artificial noise", "pnsec"};
    app.require_subcommand(1);
    Arguments args;

    struct Command
    {
        const char *name;
        const char *help;
        bool mode;
        bool sweep;
        bool phi;
    };
    const Command commands[] = {
        {"analyze", "closed-form bounds only", false, false, false},
        {"simulate", "Monte Carlo estimates only", false, false, false},
        {"validate", "closed forms and Monte Carlo with an agreement report", false, false, false},
        {"sweep", "cartesian parameter sweep", true, true, false},
        {"optimize-phi", "grid search for the secrecy-optimal power split", true, true, true},
    };
    for (const auto &c : commands)
    {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", args.config, "key = value configuration file")->required();
        sub->add_option("--out", args.out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", args.threads, "Monte Carlo worker threads (0 = auto)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        sub->add_flag("--all-mts", args.all_mts, "report every MT instead of MT 1");
        if (c.mode)
            sub->add_option("--mode", args.mode, "analytic, mc or both (default analytic)")
                ->check(CLI::IsMember({"analytic", "mc", "both"}));
        if (c.sweep)
            sub->add_option("--sweep", args.sweeps, "VAR=v1,v2,... with VAR in phi, sigma_deg, N_E, N_o, K")
                ->take_all()
                ->allow_extra_args(false);
        if (c.phi)
            sub->add_option("--phi-grid", args.phi_grid, "start:stop:step (default 0.01:0.99:0.01)");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try
    {
        return execute(command, args, out);
    }
    catch (const ConfigError &e)
    {
        for (const auto &issue : e.issues())
            err << "config error: " << issue << '\n';
        return exit_config_error;
    }
    catch (const NumericalError &e)
    {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical_error;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_numerical_error;
    }
}

}  // namespace pnsec::cli
