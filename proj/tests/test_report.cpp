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


#include "catch_amalgamated.hpp"
#include "fixtures.hpp"

#include "pnsec/experiment.hpp"
#include "pnsec/report.hpp"

#include <fstream>
#include <sstream>

using namespace pnsec;

namespace {

std::string slurp(const std::filesystem::path &path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int data_lines(const std::filesystem::path &path)
{
    std::ifstream in(path);
    std::string line;
    int n = 0;
    while (std::getline(in, line))
        if (!line.empty() && line.front() != '#')
            ++n;
    return n;
}

}  // namespace

TEST_CASE("report - number formatting")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(123456789012.0) == "1.23456789e+11");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("report - CSV layout")
{
    const auto &cols = csv_columns();
    REQUIRE(cols.size() == 32);
    CHECK(cols.front() == "sweep_var");
    CHECK(cols[21] == "rate_analytic");
    CHECK(cols[29] == "phi_star");
    CHECK(cols.back() == "seed");

    ReportRow row;
    row.config = validate(testing::reference_config()).config();
    row.rate_analytic = 0.5;
    row.secrecy_analytic = 1.0 / 7.0;
    const CsvTable table = parse_csv(to_csv({row}));
    REQUIRE(table.header == cols);
    REQUIRE(table.rows.size() == 1);
    const auto &r = table.rows.front();
    REQUIRE(r.size() == cols.size());
    CHECK(r[table.column("N")] == "128");
    CHECK(r[table.column("B")] == "4");
    CHECK(r[table.column("p_tau")] == "2.5");
    CHECK(r[table.column("pilot_design")] == "time_orthogonal");
    CHECK(r[table.column("secrecy_analytic")] == "0.142857143");
    CHECK(r[table.column("rate_mc")].empty());
    CHECK(r[table.column("M")] == "200");
    CHECK(r[table.column("seed")] == "12345");
    CHECK_THROWS_AS(table.column("nope"), std::out_of_range);
}

TEST_CASE("report - CSV parser handles quoting")
{
    const CsvTable t = parse_csv("a,b\n\"x,y\",\"say \"\"hi\"\"\"\r\n1,\n");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "x,y");
    CHECK(t.rows[0][1] == "say \"hi\"");
    CHECK(t.rows[1] == std::vector<std::string>{"1", ""});
}

TEST_CASE("report - plot data file counts")
{
    testing::TempDir dir("plot");
    ReportRow single;
    single.config = testing::reference_config();
    single.secrecy_analytic = 0.25;
    const auto one = emit_plotdata({single}, dir.path(), "single");
    REQUIRE(one.size() == 1);
    CHECK(data_lines(one.front()) == 1);
    CHECK(slurp(one.front()).rfind("# ", 0) == 0);

    RunOptions options;
    SweepAxis phi{"phi", {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95}};
    SweepAxis lo{"N_o", {1, 128}};
    const auto points = run_sweep(testing::reference_config(), {phi, lo}, options);
    SecrecyReport rows;
    for (const auto &p : points)
        rows.insert(rows.end(), p.rows.begin(), p.rows.end());
    const auto files = emit_plotdata(rows, dir.path(), "sweep");
    REQUIRE(files.size() == 2);
    CHECK(files[0].filename() == "sweep_No1_K4.dat");
    CHECK(files[1].filename() == "sweep_No128_K4.dat");
    for (const auto &f : files)
        CHECK(data_lines(f) == 10);

    // round trip against the CSV
    write_csv(rows, dir.path() / "sweep.csv");
    const CsvTable table = parse_csv(slurp(dir.path() / "sweep.csv"));
    const auto plotted = read_plotdata(files[1]);
    std::size_t j = 0;
    for (const auto &r : table.rows)
    {
        if (r[table.column("N_o")] != "128")
            continue;
        REQUIRE(j < plotted.size());
        CHECK(plotted[j].x == std::stod(r[table.column("sweep_value")]));
        CHECK(plotted[j].analytic == std::stod(r[table.column("secrecy_analytic")]));
        CHECK(std::isnan(plotted[j].mc));
        ++j;
    }
    CHECK(j == 10);

    CHECK_THROWS_AS(emit_plotdata({}, dir.path()), std::runtime_error);
    CHECK_THROWS_WITH(emit_plotdata({single}, dir.path() / "missing" / "deeper"), Catch::Matchers::ContainsSubstring("missing"));
}
