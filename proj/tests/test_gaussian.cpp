// Copyright 2026 The Cascade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cascade/gaussian.hpp"
#include "cascade/meq.hpp"
#include "test_util.hpp"

using namespace cascade;

namespace {

constexpr double kPi = std::numbers::pi;

// QND loop 1-2-1 with the pass phases chosen so that the coupled operators
// are i X_1 and X_2; the drift/diffusion matrices then take their canonical
// closed form.
InteractionChain qnd_loop(double g1, double g2, double eta, double gamma1,
                          double gamma2, double nbar1, double nbar2) {
    InteractionChain chain;
    chain.systems = {{1, 1.0, gamma1, nbar1}, {2, 1.0, gamma2, nbar2}};
    chain.passes = {{1, g1, kPi / 4, kPi / 2},
                    {2, g2, kPi / 4, 0.0},
                    {1, g1, kPi / 4, 3.0 * kPi / 2}};
    chain.link_etas = {eta, eta};
    return chain;
}

} // namespace

TEST_CASE("symplectic form squares to minus identity") {
    for (std::size_t n : {1u, 2u, 3u}) {
        const auto j = symplectic_form(n);
        CHECK((j.transpose() + j).norm() == 0.0);
        CHECK((j * j + Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm() == 0.0);
    }
}

TEST_CASE("drift/diffusion: canonical QND loop matrices") {
    const double g1 = 0.7, g2 = 0.3, eta = 0.9;
    const double gamma1 = 0.1, gamma2 = 1e-3, nbar1 = 0.0, nbar2 = 4.0;
    const auto chain = qnd_loop(g1, g2, eta, gamma1, gamma2, nbar1, nbar2);
    const auto fd = drift_diffusion(chain);

    const double g = 2.0 * eta * g1 * g2;
    const double gamma_1 = 2.0 * g1 * g1 * (1.0 - eta * eta);
    const double gamma_2 = g2 * g2;

    Eigen::MatrixXd f_expected(4, 4);
    f_expected << -gamma1 / 2, 1.0, 0.0, 0.0,
                  -1.0, -gamma1 / 2, -g, 0.0,
                  0.0, 0.0, -gamma2 / 2, 1.0,
                  -g, 0.0, -1.0, -gamma2 / 2;
    CHECK((fd.F - f_expected).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::MatrixXd n_expected = Eigen::MatrixXd::Zero(4, 4);
    n_expected(0, 0) = gamma1 * (nbar1 + 0.5);
    n_expected(1, 1) = gamma1 * (nbar1 + 0.5) + gamma_1;
    n_expected(2, 2) = gamma2 * (nbar2 + 0.5);
    n_expected(3, 3) = gamma2 * (nbar2 + 0.5) + gamma_2;
    CHECK((fd.N - n_expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("drift/diffusion: no passes leaves the local dynamics") {
    InteractionChain chain;
    chain.systems = {{1, 0.8, 0.05, 1.0}, {2, -1.2, 0.0, 0.0}};
    const auto fd = drift_diffusion(chain);
    CHECK(fd.F(0, 1) == 0.8);
    CHECK(fd.F(1, 0) == -0.8);
    CHECK(fd.F(2, 3) == -1.2);
    CHECK(fd.F(0, 0) == -0.025);
    CHECK(fd.N(0, 0) == doctest::Approx(0.05 * 1.5));
    CHECK(fd.F.block<2, 2>(0, 2).norm() == 0.0);
    CHECK(fd.N.block<2, 2>(0, 2).norm() == 0.0);
}

TEST_CASE("drift/diffusion: split back-action for a general Stokes angle") {
    // Single pass through each system; the diagonal entries follow the
    // modified damping gamma' = gamma + cos(2 theta) Gamma and the X/P split
    // Gamma_X = (1 - sin 2theta) Gamma / 2, Gamma_P = (1 + sin 2theta) Gamma / 2.
    const double theta2 = -0.8 * kPi / 4.0;
    const auto chain = preset_chain(Preset::single_pass,
                                    {{"g1", 0.5}, {"g2", 0.4}, {"eta", 0.6},
                                     {"theta1", kPi / 4}, {"theta2", theta2},
                                     {"gamma1", 0.01}, {"gamma2", 0.002},
                                     {"nbar2", 3.0}});
    const auto fd = drift_diffusion(chain);
    const double gamma_1 = 0.25, gamma_2 = 0.16;  // single-pass rates g_i^2
    // theta1 = pi/4: no damping modification, all back-action in P.
    CHECK(fd.F(0, 0) == doctest::Approx(-0.005).epsilon(1e-12));
    CHECK(fd.N(0, 0) == doctest::Approx(0.01 * 0.5).epsilon(1e-12));
    CHECK(fd.N(1, 1) == doctest::Approx(0.01 * 0.5 + gamma_1).epsilon(1e-12));
    // General theta2.
    const double gamma2_mod = 0.002 + std::cos(2.0 * theta2) * gamma_2;
    CHECK(fd.F(2, 2) == doctest::Approx(-gamma2_mod / 2).epsilon(1e-12));
    const double gth2 = 0.002 * 3.5;
    CHECK(fd.N(2, 2) ==
          doctest::Approx(gth2 + 0.5 * (1.0 - std::sin(2.0 * theta2)) * gamma_2)
              .epsilon(1e-12));
    CHECK(fd.N(3, 3) ==
          doctest::Approx(gth2 + 0.5 * (1.0 + std::sin(2.0 * theta2)) * gamma_2)
              .epsilon(1e-12));
}

TEST_CASE("thermal state") {
    CHECK(thermal_state({{1, 1.0, 0.0, 0.0}})
              .isApprox(0.5 * Eigen::MatrixXd::Identity(2, 2)));
    CHECK(thermal_state({{1, 1.0, 0.0, 10.0}})(0, 0) == 10.5);
    const auto c = thermal_state({{1, 1.0, 0.0, 0.0}, {2, 1.0, 0.0, 10.0}});
    CHECK(c(0, 0) == 0.5);
    CHECK(c(1, 1) == 0.5);
    CHECK(c(2, 2) == 10.5);
    CHECK(c(3, 3) == 10.5);
}

TEST_CASE("evolve: frozen dynamics") {
    DriftDiffusion fd{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
    const Eigen::MatrixXd c0 = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    const auto traj = evolve(fd, c0, {0.0, 1.0, 5.0});
    for (const auto& c : traj) CHECK((c - c0).norm() == 0.0);
}

TEST_CASE("evolve: damped oscillator matches the closed form") {
    const double gamma = 0.2, nbar = 2.0, omega = 1.3;
    InteractionChain chain;
    chain.systems = {{1, omega, gamma, nbar}};
    const auto fd = drift_diffusion(chain);
    const Eigen::MatrixXd c0 = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    const std::vector<double> times{0.0, 0.5, 1.0, 3.0, 10.0};
    const auto traj = evolve(fd, c0, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        // isotropic initial state: C(t) = (nbar+1/2) I + e^{-gamma t}(C0 - (nbar+1/2) I)
        const double var = (nbar + 0.5) + std::exp(-gamma * times[i]) * (0.5 - nbar - 0.5);
        CHECK(traj[i](0, 0) == doctest::Approx(var).epsilon(1e-8));
        CHECK(traj[i](1, 1) == doctest::Approx(var).epsilon(1e-8));
        CHECK(std::abs(traj[i](0, 1)) <= 1e-8);
    }
}

TEST_CASE("evolve: grid validation and symmetry") {
    DriftDiffusion fd{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
    const Eigen::MatrixXd c0 = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(evolve(fd, c0, {}), ChainError);
    CHECK_THROWS_AS(evolve(fd, c0, {0.0, 0.0}), ChainError);
    CHECK_THROWS_AS(evolve(fd, c0, {1.0, 0.5}), ChainError);

    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto chain = testutil::random_chain(rng, 2, 4);
        const auto traj = evolve(drift_diffusion(chain), thermal_state(chain.systems),
                                 {0.1, 0.7, 2.0});
        for (const auto& c : traj) {
            CHECK((c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(physicality_margin(c) >= -1e-8);
        }
    }
}

TEST_CASE("steady state: detailed balance of an uncoupled oscillator") {
    InteractionChain chain;
    chain.systems = {{1, 1.0, 0.05, 3.0}};
    const auto c = steady_state(drift_diffusion(chain));
    CHECK((c - 3.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);
    const auto n = phonon_numbers(c);
    CHECK(n[0] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("steady state: Lyapunov residual and purity bound on random chains") {
    std::mt19937 rng(22);
    int solved = 0;
    for (int trial = 0; trial < 120 && solved < 25; ++trial) {
        auto chain = testutil::random_chain(rng, 2, 4);
        for (auto& s : chain.systems) s.gamma = std::max(s.gamma, 0.02);
        const auto fd = drift_diffusion(chain);
        if (!is_hurwitz(fd.F)) continue;
        ++solved;
        const auto c = steady_state(fd);
        const double residual = (fd.F * c + c * fd.F.transpose() + fd.N).norm();
        CHECK(residual <= 1e-10 * fd.N.norm());
        CHECK(physicality_margin(c) >= -1e-8);
        CHECK((2.0 * c).determinant() >= 1.0 - 1e-8);
    }
    CHECK(solved >= 25);
}

TEST_CASE("steady state: unstable drift is rejected") {
    // An anti-damped direction has no stationary covariance.
    DriftDiffusion fd;
    fd.F = Eigen::MatrixXd::Zero(2, 2);
    fd.F(0, 0) = 0.1;
    fd.F(1, 1) = -0.1;
    fd.N = 0.01 * Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_WITH_AS(steady_state(fd),
                         doctest::Contains("unstable dynamics"), NumericalError);
}

TEST_CASE("steady state agrees with long-time evolution") {
    const auto chain = qnd_loop(0.3, 0.2, 0.9, 0.15, 0.05, 0.0, 2.0);
    const auto fd = drift_diffusion(chain);
    REQUIRE(is_hurwitz(fd.F));
    const auto c_ss = steady_state(fd);
    const auto traj = evolve(fd, thermal_state(chain.systems), {400.0});
    CHECK((traj.back() - c_ss).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("phonon numbers") {
    CHECK(phonon_numbers(0.5 * Eigen::MatrixXd::Identity(4, 4)) ==
          std::vector<double>{0.0, 0.0});
    const auto n = phonon_numbers(thermal_state({{1, 1.0, 0.0, 10.0}}));
    CHECK(n[0] == doctest::Approx(10.0));
}
