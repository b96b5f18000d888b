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

#include "cascade/delays.hpp"
#include "cascade/gaussian.hpp"
#include "cascade/meq.hpp"
#include "test_util.hpp"

using namespace cascade;

namespace {
constexpr double kPi = std::numbers::pi;

InteractionChain two_pass_x(double g, double eta, double phi, double gamma = 0.0) {
    InteractionChain chain;
    chain.systems = {{1, 1.0, gamma, 0.0}};
    chain.passes = {{1, g, kPi / 4, 0.0}, {1, g, kPi / 4, phi}};
    chain.link_etas = {eta};
    return chain;
}

} // namespace

TEST_CASE("zero delay reproduces the undelayed matrix exactly") {
    std::mt19937 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const auto chain = testutil::random_chain(rng);
        DelaySpec delays;
        delays.taus.assign(chain.num_passes(), 0.7);
        const auto corrected = delay_corrected_matrix(chain, delays);
        CHECK((corrected - quadrature_matrix(chain)).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("delay validation") {
    auto chain = two_pass_x(1.0, 1.0, kPi);
    CHECK_THROWS_AS(delay_corrected_matrix(chain, DelaySpec{{0.1, 0.0}}), ChainError);
    CHECK_THROWS_AS(delay_corrected_matrix(chain, DelaySpec{{0.0}}), ChainError);
}

TEST_CASE("two passes on one system: correction magnitude") {
    const double g = 0.8, eta = 0.9, eps = 0.05;
    const auto chain = two_pass_x(g, eta, kPi);
    const DelaySpec delays{{0.0, eps}};  // Omega = 1
    const auto corrected = delay_corrected_matrix(chain, delays);
    const Eigen::MatrixXcd base = quadrature_matrix(chain);
    // One retarded pair: correction has norm sin(eps) eta g^2 (~ eps to first order).
    const double magnitude = (corrected - base).norm();
    const double expected_exact = std::abs(std::sin(eps)) * eta * g * g
        ; // cos part shifts the existing entry too
    CHECK(magnitude >= 0.99 * expected_exact);
    CHECK(magnitude <= doctest::Approx(std::hypot(std::sin(eps), 1.0 - std::cos(eps)) *
                                       eta * g * g)
                           .epsilon(1e-12));
    CHECK(max_delay_phase(chain, delays) == doctest::Approx(eps));
}

TEST_CASE("residual back-action of the delayed loop") {
    // 1-2-1 loop at phi = pi: the trace of the system-1 dissipator block rises
    // from 2 g1^2 (1 - eta1 eta2) by 2 g1^2 eta1 eta2 (1 - cos eps).
    const double g1 = 0.7, g2 = 0.4, eta = 0.92;
    const auto chain = preset_chain(
        Preset::loop121, {{"g1", g1}, {"g2", g2}, {"eta", eta}, {"phi", kPi}});
    for (double eps : {0.02, 0.1, 0.3}) {
        const DelaySpec delays{{0.0, eps / 2, eps}};  // Omega_1 = 1, tau_13 = eps
        const auto parts =
            split_hamiltonian_dissipator(delay_corrected_matrix(chain, delays));
        const double gamma_1 = std::real(parts.L(0, 0) + parts.L(1, 1));
        const double base = 2.0 * g1 * g1 * (1.0 - eta * eta);
        const double residual = 2.0 * g1 * g1 * eta * eta * (1.0 - std::cos(eps));
        CHECK(gamma_1 - base == doctest::Approx(residual).epsilon(1e-10));
    }
}

TEST_CASE("delayed two-pass loop heats at the suppressed rate") {
    // Back-action cancellation is complete at phi = pi and zero delay; with a
    // delay the diffusion reappears with total rate 2 g^2 (1 - cos(Omega tau)).
    const double g = 0.5, eps = 0.2;
    const auto chain = two_pass_x(g, 1.0, kPi);
    const auto fd_clean = drift_diffusion(chain);
    CHECK(fd_clean.N.norm() <= 1e-14);
    CHECK(fd_clean.F.cwiseAbs().maxCoeff() == doctest::Approx(1.0));  // bare rotation

    const auto atilde = delay_corrected_matrix(chain, DelaySpec{{0.0, eps}});
    const auto fd = drift_diffusion(chain.systems, atilde);
    CHECK(fd.N.trace() ==
          doctest::Approx(2.0 * g * g * (1.0 - std::cos(eps))).epsilon(1e-12));
}

TEST_CASE("validity heuristic") {
    SUBCASE("zero delay is always fine") {
        const auto chain = two_pass_x(1.0, 1.0, kPi, 0.01);
        const auto reports = delay_validity(chain, DelaySpec{{0.0, 0.0}});
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].ok);
        CHECK(reports[0].margin == 0.0);
    }
    SUBCASE("quoted margin example") {
        // eta g_j g_k = 1, Q = 100, tau = 0.01 -> margin 1, not ok
        const auto chain = two_pass_x(1.0, 1.0, kPi, 0.01);
        const auto reports = delay_validity(chain, DelaySpec{{0.0, 0.01}});
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].margin == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!reports[0].ok);
    }
    SUBCASE("undamped system has no quality factor") {
        const auto chain = two_pass_x(1.0, 1.0, kPi, 0.0);
        const auto reports = delay_validity(chain, DelaySpec{{0.0, 0.01}});
        CHECK(!reports[0].ok);
        CHECK(reports[0].note == "undefined Q (gamma = 0)");
    }
    SUBCASE("cooling preset: the loop pair tolerates a small delay") {
        const auto chain = preset_chain(Preset::fig7, {{"g", 0.1}, {"eta", 0.9}});
        const auto reports = delay_validity(chain, DelaySpec{{0.0, 5e-5, 1e-4}});
        for (const auto& rep : reports) {
            if (rep.j == 2 && rep.k == 0) {
                CHECK(rep.ok);
                CHECK(rep.margin < 1e-3);
            }
            // pairs ending on the ultra-high-Q oscillator 2 are flagged:
            // its bare damping is slower than the delay-induced rate
            if (rep.j == 1) CHECK(!rep.ok);
        }
    }
}

TEST_CASE("suppression factor") {
    SUBCASE("perfect cancellation") {
        const auto s = suppression_factor(1.0, 1.0, 1.0, 0.0, kPi);
        CHECK(std::abs(s.factor) <= 1e-15);
    }
    SUBCASE("quoted residual at Omega tau = 0.2") {
        const auto s = suppression_factor(1.0, 1.0, 1.0, 0.2, kPi);
        CHECK(std::abs(s.factor) ==
              doctest::Approx(2.0 * std::sin(0.1)).epsilon(1e-12));
    }
    SUBCASE("compensated phase restores the loss-limited floor") {
        const double eta1 = 0.95, eta2 = 0.9, tau = 0.3;
        const auto s = suppression_factor(eta1, eta2, 1.0, tau, kPi + tau);
        CHECK(std::abs(s.factor) == doctest::Approx(1.0 - eta1 * eta2).epsilon(1e-12));
        CHECK(s.phi_compensated == doctest::Approx(kPi + tau));
    }
    SUBCASE("compensated phase is the minimizer") {
        const double eta1 = 0.98, eta2 = 0.97, tau = 0.25;
        double best_phi = 0.0, best = 1e300;
        for (double phi = 0.0; phi < 2.0 * kPi; phi += 1e-4) {
            const double mag = std::abs(suppression_factor(eta1, eta2, 1.0, tau, phi).factor);
            if (mag < best) {
                best = mag;
                best_phi = phi;
            }
        }
        CHECK(best_phi == doctest::Approx(kPi + tau).epsilon(1e-3));
    }
}
