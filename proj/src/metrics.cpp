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

#include "cascade/metrics.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "cascade/errors.hpp"
#include "cascade/gaussian.hpp"
#include "cascade/meq.hpp"

namespace cascade {

std::pair<double, double> bs_tms_weights(double theta1, double theta2) {
    return {0.5 * std::cos(theta1 + theta2), 0.5 * std::sin(theta1 - theta2)};
}

double cooperativity(const RateSet& rates) {
    if (rates.gamma_tot.size() != 2)
        throw ChainError("cooperativity: rate set must describe two systems");
    const double denom = rates.gamma_tot[0] * rates.gamma_tot[1];
    if (denom <= 0.0)
        throw NumericalError("infinite cooperativity: total decoherence rates " +
                             std::to_string(rates.gamma_tot[0]) + ", " +
                             std::to_string(rates.gamma_tot[1]));
    return rates.g * rates.g / denom;
}

double cooperativity_closed_form(CoopScheme scheme, double eta, double c1, double c2) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ChainError("cooperativity_closed_form: eta out of range [0, 1]");
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw ChainError("cooperativity_closed_form: cooperativities must be > 0");
    const double e2 = eta * eta;
    const double inv_c1 = std::isinf(c1) ? 0.0 : 1.0 / c1;
    const double inv_c2 = std::isinf(c2) ? 0.0 : 1.0 / c2;

    double num = 0.0, d1 = 0.0, d2 = 0.0;
    switch (scheme) {
    case CoopScheme::loop121:
        // g = 2 eta g1 g2, Gamma_1 = 2 g1^2 (1 - eta^2), Gamma_2 = g2^2
        num = 4.0 * e2;
        d1 = inv_c1 + (1.0 - e2);
        d2 = inv_c2 + 0.5;
        break;
    case CoopScheme::loop121_pump:
        // co-propagating pump loses with the field: g = (eta^2 + eta^4) g1 g2,
        // Gamma_1 = (1 - eta^4) g1^2, Gamma_2 = eta^2 g2^2
        num = (e2 + e2 * e2) * (e2 + e2 * e2);
        d1 = inv_c1 + 0.5 * (1.0 - e2 * e2);
        d2 = inv_c2 + 0.5 * e2;
        break;
    case CoopScheme::double_loop:
        // g = eta (3 - eta^2) g1 g2, Gamma_i = 2 g_i^2 (1 - eta^2)
        num = e2 * (3.0 - e2) * (3.0 - e2);
        d1 = inv_c1 + (1.0 - e2);
        d2 = inv_c2 + (1.0 - e2);
        break;
    }
    if (d1 <= 0.0 || d2 <= 0.0)
        throw NumericalError("diverging cooperativity: lossless with infinite "
                             "single-pass cooperativity");
    return num / (d1 * d2);
}

double log_negativity(const Eigen::MatrixXd& c) {
    if (c.rows() != 4 || c.cols() != 4)
        throw ChainError("log_negativity: expected a two-mode (4x4) covariance matrix");
    const Eigen::Matrix2d v1 = c.block<2, 2>(0, 0);
    const Eigen::Matrix2d v2 = c.block<2, 2>(2, 2);
    const Eigen::Matrix2d v12 = c.block<2, 2>(0, 2);
    const double p = v1.determinant() + v2.determinant() - 2.0 * v12.determinant();
    const double q = c.determinant();
    double disc = p * p - 4.0 * q;
    const double scale = std::max({p * p, std::abs(4.0 * q), 1e-300});
    if (disc < -1e-9 * scale)
        throw NumericalError("log_negativity: non-physical covariance (p^2 < 4q)");
    disc = std::max(disc, 0.0);

    // Symplectic eigenvalues of the partial transpose. The smaller one is
    // computed as 2q / (p + sqrt(disc)) to avoid cancellation when the
    // anti-squeezed variances dwarf the squeezed ones.
    const double root = std::sqrt(disc);
    const double cplus_sq = 0.5 * (p + root);
    const double cminus_sq = cplus_sq > 0.0 ? q / cplus_sq : 0.5 * (p - root);
    double en = 0.0;
    for (double arg : {cplus_sq, cminus_sq}) {
        if (arg <= 0.0)
            throw NumericalError("log_negativity: non-physical covariance");
        en += std::max(0.0, -std::log2(2.0 * std::sqrt(arg)));
    }
    return en;
}

double epr_variance(const Eigen::MatrixXd& c) {
    if (c.rows() != 4 || c.cols() != 4)
        throw ChainError("epr_variance: expected a two-mode (4x4) covariance matrix");
    return 0.5 * (c(0, 0) + c(2, 2) + 2.0 * c(0, 2) + c(1, 1) + c(3, 3) - 2.0 * c(1, 3));
}

double squeezing_ratio(const RateSet& rates, double beta) {
    if (rates.gamma_th.size() != 2 || rates.Gamma.size() != 2)
        throw ChainError("squeezing_ratio: rate set must describe two systems");
    const double coupling = 2.0 * rates.g * beta;
    if (coupling == 0.0) throw ChainError("squeezing_ratio: g * beta must be nonzero");
    return (rates.gamma_th[0] + rates.gamma_th[1] +
            0.5 * (rates.Gamma[0] + rates.Gamma[1])) /
           coupling;
}

namespace {

// Unit-norm rank-1 pattern over the cross block spanned by the base pass
// directions of the two systems; projections onto it recover the complex
// coupling amplitudes from R and L.
Eigen::Matrix2cd cross_pattern(const Eigen::MatrixXcd& u, Eigen::Index row1,
                               Eigen::Index row2, Eigen::Index s1, Eigen::Index s2) {
    Eigen::Matrix2cd pattern;
    for (int m = 0; m < 2; ++m) {
        for (int l = 0; l < 2; ++l) {
            pattern(m, l) = std::conj(u(row1, 2 * s1 + m)) * u(row2, 2 * s2 + l);
        }
    }
    return pattern;
}

std::complex<double> project(const Eigen::Matrix2cd& pattern, const Eigen::Matrix2cd& block) {
    return (pattern.conjugate().cwiseProduct(block)).sum();
}

} // namespace

RateSet rates_from_chain(const InteractionChain& chain) {
    if (chain.systems.size() != 2)
        throw ChainError("rates_from_chain: chain must have exactly two systems");
    const auto parts = split_hamiltonian_dissipator(quadrature_matrix(chain));

    RateSet rates;
    rates.Gamma.resize(2);
    rates.gamma_th.resize(2);
    rates.gamma_tot.resize(2);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto s = static_cast<Eigen::Index>(2 * i);
        rates.Gamma[i] = std::real(parts.L(s, s) + parts.L(s + 1, s + 1));
        rates.gamma_th[i] = chain.systems[i].gamma * (chain.systems[i].nbar + 0.5);
        rates.gamma_tot[i] = rates.gamma_th[i] + 0.5 * rates.Gamma[i];
    }

    // First pass touching each system defines the base direction.
    const Eigen::MatrixXcd u = quadrature_map(chain);
    Eigen::Index row1 = -1, row2 = -1;
    for (std::size_t j = 0; j < chain.passes.size(); ++j) {
        const auto s = chain.system_index(chain.passes[j].system);
        if (s == 0 && row1 < 0) row1 = static_cast<Eigen::Index>(j);
        if (s == 1 && row2 < 0) row2 = static_cast<Eigen::Index>(j);
    }
    if (row1 >= 0 && row2 >= 0) {
        const Eigen::Matrix2cd pattern = cross_pattern(u, row1, row2, 0, 1);
        const Eigen::Matrix2cd r_block = parts.R.block<2, 2>(0, 2);
        const Eigen::Matrix2cd l_block = parts.L.block<2, 2>(0, 2);
        rates.g = std::abs(project(pattern, r_block));
        rates.gamma12 = std::abs(project(pattern, l_block));

        const Eigen::Matrix2cd self_pattern = cross_pattern(u, row1, row1, 0, 0);
        const Eigen::Matrix2cd r_self = parts.R.block<2, 2>(0, 0);
        rates.self_interaction = 0.5 * std::real(project(self_pattern, r_self));
    }
    return rates;
}

double steady_log_negativity(const InteractionChain& chain, const StationaryOptions& opts) {
    if (chain.systems.size() != 2)
        throw ChainError("steady_log_negativity: chain must have exactly two systems");
    const auto fd = drift_diffusion(chain);
    if (is_hurwitz(fd.F)) return log_negativity(steady_state(fd));

    EvolveOptions evolve_opts;
    evolve_opts.check_physical = false;

    if (opts.horizon > 0.0) {
        const auto c =
            evolve(fd, thermal_state(chain.systems), {opts.horizon}, evolve_opts).back();
        try {
            return log_negativity(c);
        } catch (const NumericalError&) {
            return 0.0;
        }
    }

    Eigen::MatrixXd c = thermal_state(chain.systems);
    const double chunk = 100.0;
    // Entanglement onset can be slow near the loss threshold; never declare a
    // plateau before the minimum horizon.
    const int min_chunks = 12;
    double en = log_negativity(c);
    int settled = 0;
    for (int k = 0; k < 400; ++k) {
        c = evolve(fd, c, {chunk}, evolve_opts).back();
        double next = en;
        try {
            next = log_negativity(c);
        } catch (const NumericalError&) {
            // determinant precision exhausted by the growing quadrature
            return en;
        }
        settled = std::abs(next - en) < opts.plateau_tol ? settled + 1 : 0;
        en = next;
        if (settled >= 2 && k >= min_chunks) return en;
        // Past this size the squeezed direction drops below the precision of
        // the growing anti-squeezed entries; en is as converged as it gets.
        if (c.cwiseAbs().maxCoeff() > 1e12) return en;
    }
    return en;
}

} // namespace cascade
