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

#include "cascade/delays.hpp"

#include <cmath>
#include <numbers>

#include "cascade/errors.hpp"
#include "cascade/meq.hpp"

namespace cascade {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_delays(const InteractionChain& chain, const DelaySpec& delays) {
    if (delays.taus.size() != chain.passes.size())
        throw ChainError("delays: need one arrival time per pass");
    for (std::size_t j = 1; j < delays.taus.size(); ++j) {
        if (delays.taus[j] < delays.taus[j - 1])
            throw ChainError("delays: arrival times must be nondecreasing");
    }
}

double epsilon_jk(const InteractionChain& chain, const DelaySpec& delays, std::size_t j,
                  std::size_t k) {
    const auto& earlier = chain.systems[chain.system_index(chain.passes[k].system)];
    return earlier.omega * delays.tau(j, k);
}

} // namespace

double max_delay_phase(const InteractionChain& chain, const DelaySpec& delays) {
    check_delays(chain, delays);
    double eps = 0.0;
    for (std::size_t j = 0; j < chain.passes.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            eps = std::max(eps, std::abs(epsilon_jk(chain, delays, j, k)));
        }
    }
    return eps;
}

Eigen::MatrixXcd delay_corrected_matrix(const InteractionChain& chain,
                                        const DelaySpec& delays) {
    check_delays(chain, delays);
    const Eigen::MatrixXd a = pass_coupling_matrix(chain);
    const auto n = a.rows();

    Eigen::MatrixXd a_cos = a;
    Eigen::MatrixXd a_sin = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < j; ++k) {
            const double eps = epsilon_jk(chain, delays, j, k);
            a_cos(j, k) = a(j, k) * std::cos(eps);
            a_sin(j, k) = a(j, k) * std::sin(eps);
        }
    }

    const Eigen::MatrixXcd u = quadrature_map(chain);
    const Eigen::MatrixXcd u_minus = quadrature_minus_map(chain);
    return u.adjoint() * a_cos * u + kI * (u.adjoint() * a_sin * u_minus);
}

std::vector<DelayPairReport> delay_validity(const InteractionChain& chain,
                                            const DelaySpec& delays, double threshold) {
    check_delays(chain, delays);
    const auto g = pump_rescaled_couplings(chain);
    std::vector<DelayPairReport> reports;
    for (std::size_t j = 0; j < chain.passes.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            DelayPairReport rep;
            rep.j = j;
            rep.k = k;
            rep.epsilon = epsilon_jk(chain, delays, j, k);
            const auto& later = chain.systems[chain.system_index(chain.passes[j].system)];
            if (later.gamma <= 0.0) {
                rep.ok = false;
                rep.note = "undefined Q (gamma = 0)";
            } else {
                const double q = std::abs(later.omega) / later.gamma;
                rep.margin = transmittance(chain, j, k) * g[j] * g[k] * q * delays.tau(j, k);
                rep.ok = rep.margin < threshold;
            }
            reports.push_back(rep);
        }
    }
    return reports;
}

SuppressionFactor suppression_factor(double eta1, double eta2, double omega1,
                                     double tau13, double phi) {
    SuppressionFactor s;
    s.factor = 1.0 + eta1 * eta2 * std::exp(-kI * phi) * std::exp(kI * omega1 * tau13);
    s.phi_compensated = std::numbers::pi + omega1 * tau13;
    return s;
}

} // namespace cascade
