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

#include "pnsec/bounds.hpp"

using namespace pnsec;
using Catch::Matchers::WithinRel;

namespace {

struct Reference
{
    PilotDesign design;
    int N_o;
    double second, interference, leakage, rate, X1, X2, secrecy;
};

// Independent numpy evaluation (tests/oracle/closed_forms.py), MT 1, slot 15, phi = 0.5.
const Reference references[] = {
    {PilotDesign::time_orthogonal, 1, 106.75732574968033, 3.0, 20.74087879558771, 2.117702873173831, 0.0, 0.0,
     0.5942045670614374},
    {PilotDesign::time_orthogonal, 128, 95.85883949943106, 3.0, 33.51930606245718, 2.7340313050228575, 0.0, 0.0,
     1.0367192316171474},
    {PilotDesign::unitary_overlapping, 1, 110.32732849981994, 4.594870221388909, 17.255206819073436,
     2.0648992822481755, 0.6379327464648532, 0.0, 0.5560225819260409},
    {PilotDesign::unitary_overlapping, 128, 99.06094692307725, 3.0701286417049447, 30.033634085942907,
     2.7530615425365483, 0.004983849581756666, 0.02628973243200383, 1.0514868578316812},
};

ValidatedConfig make(PilotDesign design, int N_o, double phi = 0.5, double sigma = 6.0, int T = 500)
{
    SystemConfig raw = testing::reference_config();
    raw.pilot_design = design;
    raw.N_o = N_o;
    raw.phi = phi;
    raw.sigma_psi_deg = raw.sigma_phi_deg = sigma;
    raw.T = T;
    return validate(raw);
}

ValidatedConfig full_grid(ValidatedConfig cfg)
{
    SystemConfig raw = cfg.config();
    raw.t_grid.clear();
    for (int t = cfg.B() + 1; t <= cfg.T(); ++t)
        raw.t_grid.push_back(t);
    return validate(raw);
}

}  // namespace

TEST_CASE("bounds - moments against the numpy oracle")
{
    for (const auto &ref : references)
    {
        INFO(to_string(ref.design) << " N_o=" << ref.N_o);
        const ValidatedConfig cfg = make(ref.design, ref.N_o);
        const auto pilots = make_pilots<double>(cfg);
        const double gain = ref.design == PilotDesign::time_orthogonal ? 9.25193632902788 : 9.406797023517386;
        CHECK(signal_gain(cfg, pilots, 0, 15) == Catch::Approx(gain).epsilon(1e-12));
        CHECK(desired_second_moment(cfg, pilots, 0, 15).second_moment == Catch::Approx(ref.second).epsilon(1e-12));
        double interference = 0.0;
        for (int l = 1; l < 4; ++l)
            interference += interference_power(cfg, pilots, 0, l, 15);
        CHECK(interference == Catch::Approx(ref.interference).epsilon(1e-12));
        CHECK(an_leakage(cfg, pilots, 0, 15) == Catch::Approx(ref.leakage).epsilon(1e-12));
        const auto X = contamination_terms(cfg, pilots, 0, 1);
        CHECK(X.X1 == Catch::Approx(ref.X1).margin(1e-13));
        CHECK(X.X2 == Catch::Approx(ref.X2).margin(1e-13));
        CHECK(rate_lower_bound_composed(cfg, pilots, 0, 15) == Catch::Approx(ref.rate).epsilon(1e-12));
        CHECK(rate_lower_bound(cfg, pilots, 0, 15) == Catch::Approx(ref.rate).epsilon(1e-12));

        const ValidatedConfig short_block = full_grid(make(ref.design, ref.N_o, 0.5, 6.0, 50));
        CHECK(secrecy_rate_bound(short_block, pilots, 0).secrecy == Catch::Approx(ref.secrecy).epsilon(1e-12));
    }
}

TEST_CASE("bounds - eavesdropper capacity bound")
{
    const ValidatedConfig cfg = make(PilotDesign::time_orthogonal, 1);
    const EveBound eve = eve_capacity_upper(cfg);
    CHECK(eve.status == EveBoundStatus::ok);
    CHECK(eve.value == Catch::Approx(1.0238467419543678).epsilon(1e-12));

    double last = 0.0;
    for (int NE : {1, 2, 4, 8, 16, 64})
    {
        SystemConfig raw = cfg.config();
        raw.N_E = NE;
        const double value = eve_capacity_upper(validate(raw)).value;
        CHECK(value > last);
        last = value;
    }
    last = 0.0;
    for (double phi : {0.05, 0.2, 0.5, 0.8, 0.95})
    {
        const double value = eve_capacity_upper(cfg.with_phi(phi)).value;
        CHECK(value > last);
        last = value;
    }

    const EveBound none = eve_capacity_upper(cfg.with_phi(1.0));
    CHECK(none.status == EveBoundStatus::no_artificial_noise);
    CHECK(std::isinf(none.value));
    CHECK(secrecy_rate_bound(cfg.with_phi(1.0), make_pilots<double>(cfg), 0).secrecy == 0.0);

    SystemConfig raw = cfg.config();
    raw.N = 8;
    raw.N_E = 4;
    const auto tight = validate(raw);
    CHECK(eve_capacity_upper(tight).status == EveBoundStatus::undefined);
    CHECK(secrecy_rate_bound(tight, make_pilots<double>(tight), 0).secrecy == 0.0);
}

TEST_CASE("bounds - packaged and composed rates agree")
{
    for (double phi : {0.1, 0.5, 0.9})
        for (double sigma : {0.0, 2.0, 6.0})
            for (int N_o : {1, 8, 128})
                for (PilotDesign design : {PilotDesign::time_orthogonal, PilotDesign::unitary_overlapping})
                {
                    const ValidatedConfig cfg = make(design, N_o, phi, sigma);
                    const auto pilots = make_pilots<double>(cfg);
                    for (int k = 0; k < 4; ++k)
                        for (int t : {5, 6, 40, 300})
                        {
                            const double a = rate_lower_bound(cfg, pilots, k, t);
                            const double b = rate_lower_bound_composed(cfg, pilots, k, t);
                            CHECK(std::abs(a - b) <= 1e-9 * b);
                        }
                }
}

TEST_CASE("bounds - degenerate closed forms")
{
    SystemConfig raw = testing::reference_config();
    raw.sigma_psi_deg = raw.sigma_phi_deg = 0.0;
    const ValidatedConfig cfg = validate(raw);
    const auto pilots = make_pilots<double>(cfg);
    const auto r = rate_terms(cfg, pilots, 0, 100);
    CHECK(std::abs(r.a - 3.0) <= 1e-12);
    CHECK(r.epsilon == 1.0);
    CHECK(std::abs(r.lambda - 10.0 / 11.0) <= 1e-12);

    for (double sigma : {0.5, 6.0, 20.0})
        for (int N_o : {1, 4, 128})
        {
            raw.sigma_psi_deg = raw.sigma_phi_deg = sigma;
            raw.N_o = N_o;
            const ValidatedConfig c = validate(raw);
            const auto p = make_pilots<double>(c);
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                {
                    if (k == l)
                        continue;
                    const auto X = contamination_terms(c, p, k, l);
                    CHECK(std::abs(X.X1) <= 1e-12);
                    CHECK(std::abs(X.X2) <= 1e-12);
                }
            CHECK(std::abs(rate_terms(c, p, 2, 50).a - 3.0) <= 1e-12);
        }
}

TEST_CASE("bounds - monotone in distance and phase noise")
{
    for (PilotDesign design : {PilotDesign::time_orthogonal, PilotDesign::unitary_overlapping})
        for (int N_o : {1, 128})
        {
            const ValidatedConfig cfg = make(design, N_o);
            const auto pilots = make_pilots<double>(cfg);
            double last_rate = std::numeric_limits<double>::infinity();
            double last_eps = 2.0;
            for (int t = 5; t <= 500; t += 15)
            {
                const double rate = rate_lower_bound(cfg, pilots, 1, t);
                const double eps = phase_coherence(cfg, t);
                CHECK(rate <= last_rate);
                CHECK(eps <= last_eps);
                CHECK(rate >= 0.0);
                last_rate = rate;
                last_eps = eps;
            }
        }
    double last = std::numeric_limits<double>::infinity();
    for (double sigma : {0.0, 1.0, 2.0, 4.0, 6.0})
    {
        const ValidatedConfig cfg = make(PilotDesign::time_orthogonal, 1, 0.5, sigma);
        const auto terms = rate_terms(cfg, make_pilots<double>(cfg), 0, 60);
        CHECK(terms.lambda_bar <= last);
        last = terms.lambda_bar;
    }
}

TEST_CASE("bounds - edge cases of the rate")
{
    SystemConfig raw = testing::reference_config();
    raw.beta = {1.0, 0.0, 1.0, 1.0};
    const ValidatedConfig cfg = validate(raw);
    const auto pilots = make_pilots<double>(cfg);
    CHECK(rate_lower_bound(cfg, pilots, 1, 10) == 0.0);

    const ValidatedConfig tiny = make(PilotDesign::time_orthogonal, 1, 1e-9);
    const ValidatedConfig tiny2 = make(PilotDesign::time_orthogonal, 1, 2e-9);
    const double r1 = rate_lower_bound(tiny, make_pilots<double>(tiny), 0, 10);
    const double r2 = rate_lower_bound(tiny2, make_pilots<double>(tiny2), 0, 10);
    CHECK(r1 > 0.0);
    CHECK(r1 < 1e-6);
    CHECK_THAT(r2 / r1, WithinRel(2.0, 1e-6));

    const ValidatedConfig weak = make(PilotDesign::time_orthogonal, 1);
    const auto r = secrecy_rate_bound(weak, make_pilots<double>(weak), 0);
    CHECK(r.secrecy >= 0.0);
    CHECK(r.mean_rate > 0.0);
}

TEST_CASE("bounds - phi grid and optimisation")
{
    CHECK(default_phi_grid().size() == 99);
    CHECK(default_phi_grid().front() == 0.01);
    CHECK(default_phi_grid().back() == 0.99);
    CHECK(phi_grid(0.1, 0.3, 0.1) == std::vector<double>{0.1, 0.2, 0.3});
    CHECK_THROWS_AS(phi_grid(0.0, 0.5, 0.1), ConfigError);
    CHECK_THROWS_AS(phi_grid(0.5, 0.1, 0.1), ConfigError);

    const ValidatedConfig cfg = make(PilotDesign::time_orthogonal, 128);
    const auto pilots = make_pilots<double>(cfg);
    const auto best = optimize_phi(cfg, pilots, 0, default_phi_grid());
    REQUIRE(best.curve.size() == 99);
    CHECK(best.secrecy == *std::max_element(best.curve.begin(), best.curve.end()));
    CHECK(best.phi_star > 0.01);
    CHECK(best.phi_star < 0.99);  // interior maximum

    // a negligible budget gives zero secrecy everywhere, so the tie goes to the smallest phi
    SystemConfig raw = cfg.config();
    raw.P_T_dB = -40.0;
    const ValidatedConfig dead = validate(raw);
    const auto flat = optimize_phi(dead, make_pilots<double>(dead), 0, {0.2, 0.4, 0.6});
    CHECK(flat.phi_star == 0.2);
    CHECK_THROWS_AS(optimize_phi(cfg, pilots, 0, {}), ConfigError);
}
