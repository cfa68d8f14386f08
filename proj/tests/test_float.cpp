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
#include "pnsec/montecarlo.hpp"

using namespace pnsec;

TEST_CASE("float - single precision instantiation tracks double")
{
    SystemConfig raw = testing::small_config();
    raw.pilot_design = PilotDesign::unitary_overlapping;
    raw.N_o = 4;
    const ValidatedConfig cfg = validate(raw);
    const auto pf = make_pilots<float>(cfg);
    const auto pd = make_pilots<double>(cfg);
    for (int t : {3, 10, 40})
    {
        CHECK(rate_lower_bound(cfg, pf, 0, t) == Catch::Approx(rate_lower_bound(cfg, pd, 0, t)).epsilon(1e-4));
        CHECK(an_leakage(cfg, pf, 1, t) == Catch::Approx(an_leakage(cfg, pd, 1, t)).epsilon(1e-4));
    }

    const auto rf = run_trial(cfg, pf, 5);
    const auto rd = run_trial(cfg, pd, 5);
    CHECK(rf.desired(0, 0) == Catch::Approx(rd.desired(0, 0)).epsilon(1e-3));
    CHECK(rf.eve_gain(1) == Catch::Approx(rd.eve_gain(1)).epsilon(1e-2));
    const auto sim = simulate<float>(cfg, pf);
    CHECK(sim.moments.trials == raw.trials);
}
