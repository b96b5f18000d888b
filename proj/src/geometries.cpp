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

#include "cascade/geometries.hpp"

#include <cmath>
#include <numbers>

#include "cascade/errors.hpp"

namespace cascade::geometries {

namespace {
using std::complex;
constexpr complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
} // namespace

RateSet closed_form_rates(Scheme scheme, const GeometryParams& p) {
    RateSet rates;
    rates.Gamma.assign(2, 0.0);
    rates.gamma_th.assign(2, 0.0);
    rates.gamma_tot.assign(2, 0.0);

    switch (scheme) {
    case Scheme::single_pass: {
        rates.g = p.eta1 * p.g1 * p.g2;
        rates.Gamma = {p.g1 * p.g1, p.g2 * p.g2};
        rates.gamma12 = p.eta1 * p.g1 * p.g2;
        break;
    }
    case Scheme::double_pass: {
        const double gp = p.g1 * p.g2;
        const double gm = p.g1m * p.g2m;
        rates.g = p.eta1 * std::abs(gp - gm);
        rates.Gamma = {p.g1 * p.g1 + p.g1m * p.g1m, p.g2 * p.g2 + p.g2m * p.g2m};
        rates.gamma12 = p.eta1 * std::abs(gp + gm);
        break;
    }
    case Scheme::loop121: {
        const complex<double> loop = std::exp(kI * p.phi);
        rates.g = p.g1 * p.g2 * std::abs(p.eta1 - p.eta2 * loop);
        rates.Gamma = {2.0 * p.g1 * p.g1 * (1.0 + p.eta1 * p.eta2 * std::cos(p.phi)),
                       p.g2 * p.g2};
        rates.gamma12 = p.g1 * p.g2 * std::abs(p.eta1 + p.eta2 * loop);
        rates.self_interaction = -p.g1 * p.g1 * p.eta1 * p.eta2 * std::sin(p.phi);
        break;
    }
    case Scheme::double_loop: {
        const double eta = p.eta1;
        const double e2 = eta * eta;
        rates.g = eta * (3.0 - e2) * p.g1 * p.g2;
        rates.Gamma = {2.0 * p.g1 * p.g1 * (1.0 - e2), 2.0 * p.g2 * p.g2 * (1.0 - e2)};
        rates.gamma12 = eta * (1.0 - e2) * p.g1 * p.g2;
        break;
    }
    }
    for (std::size_t i = 0; i < 2; ++i) rates.gamma_tot[i] = 0.5 * rates.Gamma[i];
    return rates;
}

RateSet loop121_pump_rates(double eta, double g1, double g2) {
    const double e2 = eta * eta;
    RateSet rates;
    rates.g = (e2 + e2 * e2) * g1 * g2;
    rates.Gamma = {(1.0 - e2 * e2) * g1 * g1, e2 * g2 * g2};
    rates.gamma12 = (e2 - e2 * e2) * g1 * g2;
    rates.gamma_th.assign(2, 0.0);
    rates.gamma_tot = {0.5 * rates.Gamma[0], 0.5 * rates.Gamma[1]};
    return rates;
}

std::complex<double> three_pass_alpha(double eta, double phi12, double phi23) {
    return 1.5 + eta * std::exp(-kI * phi12) + eta * std::exp(-kI * phi23) +
           eta * eta * std::exp(-kI * (phi12 + phi23));
}

SqueezeReport multipass_squeeze(MultipassScheme scheme, double eta, double phi12,
                                double phi23) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw ChainError("multipass_squeeze: eta out of range (0, 1]");
    SqueezeReport report;
    if (scheme == MultipassScheme::two_pass) {
        if (std::sin(phi12) == 0.0)
            throw ChainError("multipass_squeeze: no squeezing at sin(phi) = 0");
        report.alpha = 1.0 + eta * std::exp(-kI * phi12);
    } else {
        report.alpha = three_pass_alpha(eta, phi12, phi23);
        if (report.alpha.imag() == 0.0)
            throw ChainError("multipass_squeeze: no squeezing (Im alpha = 0)");
    }
    report.g_sq = std::abs(report.alpha.imag());
    report.Gamma = 2.0 * report.alpha.real();
    report.r = 0.5 * report.Gamma / report.g_sq;
    return report;
}

InteractionChain double_pass_chain(const std::vector<SystemSpec>& systems, double g1,
                                   double g2, double g1m, double g2m, double eta,
                                   double theta1, double theta2) {
    InteractionChain chain;
    chain.systems = systems;
    const auto pass = [&](int id, double g, double theta) {
        Pass p{id, std::abs(g), theta, g < 0.0 ? kPi : 0.0};
        return p;
    };
    chain.passes = {pass(1, g1, theta1), pass(2, g2, theta2), pass(2, g2m, theta2),
                    pass(1, g1m, theta1)};
    chain.link_etas = {eta, 0.0, eta};
    chain.validate();
    return chain;
}

} // namespace cascade::geometries
