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

#include "pnsec/training.hpp"

using namespace pnsec;

namespace {

ValidatedConfig training_config(PilotDesign design, double sigma_deg = 6.0)
{
    SystemConfig raw = testing::reference_config();
    raw.pilot_design = design;
    raw.sigma_psi_deg = raw.sigma_phi_deg = sigma_deg;
    return validate(raw);
}

}  // namespace

TEST_CASE("training - lambda without phase noise")
{
    SystemConfig raw = testing::reference_config();
    raw.sigma_psi_deg = raw.sigma_phi_deg = 0.0;
    raw.beta = {1.0, 0.3, 2.0, 0.05};
    raw.B = 6;
    raw.xi_UL = 0.7;
    const ValidatedConfig cfg = validate(raw);
    const auto pilots = make_pilots<double>(cfg);
    const double Bp = 6 * cfg.p_tau();
    for (int k = 0; k < 4; ++k)
    {
        const double b = cfg.beta(k);
        CHECK(std::abs(pilots.lambda(k, cfg.t0()) - b * Bp / (b * Bp + 0.7)) <= 1e-12);
        CHECK(std::abs(pilots.lambda(k, 200) - b * Bp / (b * Bp + 0.7)) <= 1e-12);
    }
}

TEST_CASE("training - lambda at the reference point")
{
    const auto time = make_pilots<double>(training_config(PilotDesign::time_orthogonal));
    const double expected[] = {0.8327348484226798, 0.85120052597069, 0.8700756750905374, 0.8893693757072723};
    for (int k = 0; k < 4; ++k)
        CHECK(time.lambda(k, 5) == Catch::Approx(expected[k]).epsilon(1e-12));

    const auto dft = make_pilots<double>(training_config(PilotDesign::unitary_overlapping));
    for (int k = 0; k < 4; ++k)
        CHECK(dft.lambda(k, 5) == Catch::Approx(0.8608451062977949).epsilon(1e-12));

    CHECK(time.error_coeff(3, 5) == Catch::Approx(1.0 - expected[3]).epsilon(1e-12));
}

TEST_CASE("training - lambda decays away from the training block")
{
    const auto pilots = make_pilots<double>(training_config(PilotDesign::unitary_overlapping));
    double last = 1.0;
    for (int t = 5; t < 60; t += 5)
    {
        const double lambda = pilots.lambda(0, t);
        CHECK(lambda < last);
        CHECK(lambda > 0.0);
        last = lambda;
    }
}

TEST_CASE("training - pilot matrices")
{
    const auto time = make_pilots<double>(training_config(PilotDesign::time_orthogonal));
    CHECK(time.omega().isApprox(std::sqrt(10.0) * Eigen::MatrixXcd::Identity(4, 4)));

    const auto dft = make_pilots<double>(training_config(PilotDesign::unitary_overlapping));
    CHECK((dft.omega().adjoint() * dft.omega()).isApprox(10.0 * Eigen::MatrixXcd::Identity(4, 4), 1e-12));
    CHECK(dft.omega().cwiseAbs().isApproxToConstant(std::sqrt(2.5), 1e-12));
    // Sigma is Hermitian positive definite
    CHECK(dft.Sigma().isApprox(dft.Sigma().adjoint()));
    CHECK(dft.sigma_condition() >= 1.0);
}

TEST_CASE("training - invalid training setups")
{
    SystemConfig raw = testing::reference_config();
    raw.B = 6;
    raw.xi_UL = 0.0;
    // two silent slots and no noise: Sigma is singular
    CHECK_THROWS_AS(make_pilots<double>(validate(raw)), NumericalError);
}

TEST_CASE("training - estimate equals the explicit slot sum")
{
    SystemConfig raw = testing::small_config();
    raw.pilot_design = PilotDesign::unitary_overlapping;
    raw.B = 3;
    const ValidatedConfig cfg = validate(raw);
    const auto pilots = make_pilots<double>(cfg);
    PhiloxEngine ch(1, 0, Stream::channels), ph(1, 0, Stream::phases), nz(1, 0, Stream::uplink_noise);
    const auto channels = sample_channels<double>(cfg, ch);
    const auto traj = sample_phase_trajectories<double>(cfg, ph);
    const auto y = simulate_training(cfg, pilots, channels, traj, nz);
    const auto g_hat = lmmse_estimate(pilots, y, cfg.t0());
    for (int k = 0; k < 2; ++k)
    {
        Eigen::VectorXcd manual = Eigen::VectorXcd::Zero(cfg.N());
        const auto c = pilots.estimator_row(k, cfg.t0());
        for (int b = 0; b < 3; ++b)
            manual += c(b) * y.col(b);
        CHECK((manual - g_hat.col(k)).norm() <= 1e-12 * manual.norm());
    }
}

TEST_CASE("training - error covariance matches the closed form")
{
    for (PilotDesign design : {PilotDesign::time_orthogonal, PilotDesign::unitary_overlapping})
    {
        SystemConfig raw = testing::reference_config();
        raw.N = 32;
        raw.pilot_design = design;
        const ValidatedConfig cfg = validate(raw);
        const auto pilots = make_pilots<double>(cfg);
        const int trials = 3000;
        Eigen::VectorXd err = Eigen::VectorXd::Zero(4);
        Eigen::VectorXd cross = Eigen::VectorXd::Zero(4);
        for (int m = 0; m < trials; ++m)
        {
            PhiloxEngine ch(3, m, Stream::channels), ph(3, m, Stream::phases), nz(3, m, Stream::uplink_noise);
            const auto channels = sample_channels<double>(cfg, ch);
            const auto traj = sample_phase_trajectories<double>(cfg, ph);
            const auto out = run_training(cfg, pilots, channels, traj, nz);
            for (int k = 0; k < 4; ++k)
            {
                const Eigen::VectorXcd truth = theta_matrix(traj, cfg.N(), k, cfg.t0()).apply(channels.g.col(k));
                const Eigen::VectorXcd e = out.g_hat.col(k) - truth;
                err(k) += e.squaredNorm() / cfg.N();
                cross(k) += std::real(out.g_hat.col(k).dot(e)) / cfg.N();
            }
        }
        err /= trials;
        cross /= trials;
        for (int k = 0; k < 4; ++k)
        {
            INFO("design " << to_string(design) << ", MT " << k);
            CHECK(err(k) == Catch::Approx(pilots.error_coeff(k, cfg.t0())).epsilon(0.05));
            CHECK(std::abs(cross(k)) < 0.01);
        }
    }
}
