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

#include "cascade/meq.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cascade/errors.hpp"

namespace cascade {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.7071067811865475244;

} // namespace

Eigen::MatrixXd pass_coupling_matrix(const InteractionChain& chain) {
    chain.validate();
    const auto g = pump_rescaled_couplings(chain);
    const auto n = static_cast<Eigen::Index>(chain.passes.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        a(j, j) = 0.5 * g[j] * g[j];
        for (Eigen::Index k = 0; k < j; ++k) {
            a(j, k) = transmittance(chain, j, k) * g[j] * g[k];
        }
    }
    return a;
}

Eigen::MatrixXcd quadrature_map(const InteractionChain& chain) {
    const auto n = static_cast<Eigen::Index>(chain.passes.size());
    const auto dim = static_cast<Eigen::Index>(2 * chain.systems.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, dim);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Pass& p = chain.passes[j];
        const auto s = static_cast<Eigen::Index>(chain.system_index(p.system));
        const complex<double> phase = std::exp(kI * p.phi);
        const double mu = std::cos(p.theta), nu = std::sin(p.theta);
        u(j, 2 * s) = phase * (mu + nu) * kInvSqrt2;
        u(j, 2 * s + 1) = kI * phase * (mu - nu) * kInvSqrt2;
    }
    return u;
}

Eigen::MatrixXcd quadrature_minus_map(const InteractionChain& chain) {
    const auto n = static_cast<Eigen::Index>(chain.passes.size());
    const auto dim = static_cast<Eigen::Index>(2 * chain.systems.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, dim);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Pass& p = chain.passes[j];
        const auto s = static_cast<Eigen::Index>(chain.system_index(p.system));
        const complex<double> phase = std::exp(kI * p.phi);
        const double mu = std::cos(p.theta), nu = std::sin(p.theta);
        u(j, 2 * s) = phase * (mu - nu) * kInvSqrt2;
        u(j, 2 * s + 1) = kI * phase * (mu + nu) * kInvSqrt2;
    }
    return u;
}

Eigen::MatrixXcd quadrature_transform(const Eigen::MatrixXd& pass_matrix,
                                      const Eigen::MatrixXcd& map) {
    if (pass_matrix.rows() != pass_matrix.cols() || pass_matrix.rows() != map.rows())
        throw ChainError("quadrature_transform: dimension mismatch");
    return map.adjoint() * pass_matrix * map;
}

Eigen::MatrixXcd quadrature_matrix(const InteractionChain& chain) {
    if (chain.passes.empty())
        return Eigen::MatrixXcd::Zero(2 * chain.systems.size(), 2 * chain.systems.size());
    return quadrature_transform(pass_coupling_matrix(chain), quadrature_map(chain));
}

Eigen::MatrixXcd quadrature_matrix_sum(std::span<const InteractionChain> chains) {
    if (chains.empty()) throw ChainError("quadrature_matrix_sum: no chains");
    Eigen::MatrixXcd total = quadrature_matrix(chains[0]);
    for (std::size_t c = 1; c < chains.size(); ++c) {
        if (chains[c].systems != chains[0].systems)
            throw ChainError("quadrature_matrix_sum: chains must share one system list");
        total += quadrature_matrix(chains[c]);
    }
    return total;
}

HamiltonianDissipator split_hamiltonian_dissipator(const Eigen::MatrixXcd& atilde) {
    if (atilde.rows() != atilde.cols())
        throw ChainError("split_hamiltonian_dissipator: matrix must be square");
    HamiltonianDissipator parts;
    parts.R = -kI * (atilde - atilde.adjoint());
    parts.L = atilde + atilde.adjoint();
    return parts;
}

std::vector<JumpOperator> jump_operators(const Eigen::MatrixXcd& L, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(L);
    if (solver.info() != Eigen::Success)
        throw NumericalError("jump_operators: eigendecomposition failed");
    const double scale = std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    std::vector<JumpOperator> jumps;
    for (Eigen::Index k = 0; k < L.rows(); ++k) {
        double rate = solver.eigenvalues()(k);
        if (rate < -tol * scale)
            throw NumericalError("dissipator not positive semidefinite: eigenvalue " +
                                 std::to_string(rate));
        rate = std::max(rate, 0.0);
        jumps.push_back({rate, solver.eigenvectors().col(k)});
    }
    std::sort(jumps.begin(), jumps.end(),
              [](const JumpOperator& a, const JumpOperator& b) { return a.rate > b.rate; });
    return jumps;
}

PsdCertificate assert_psd(const Eigen::MatrixXcd& L, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(L, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("assert_psd: eigendecomposition failed");
    PsdCertificate cert;
    cert.min_eigenvalue = solver.eigenvalues().minCoeff();
    cert.norm = std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    if (cert.min_eigenvalue < -tol * cert.norm)
        throw NumericalError("dissipator not positive semidefinite: min eigenvalue " +
                             std::to_string(cert.min_eigenvalue));
    return cert;
}

std::pair<Eigen::MatrixXd, double> mn_matrix(const std::vector<double>& link_etas,
                                             std::size_t n) {
    if (n == 0) throw ChainError("mn_matrix: n must be >= 1");
    if (link_etas.size() + 1 < n)
        throw ChainError("mn_matrix: need at least n-1 link transmissions");
    for (double eta : link_etas) {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw ChainError("mn_matrix: transmission out of range [0, 1]");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            double eta = 1.0;
            for (Eigen::Index l = j; l < i; ++l) eta *= link_etas[l];
            m(i, j) = m(j, i) = eta;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return {m, solver.eigenvalues().minCoeff()};
}

std::vector<double> backaction_rates(const InteractionChain& chain) {
    const auto parts = split_hamiltonian_dissipator(quadrature_matrix(chain));
    std::vector<double> rates(chain.systems.size());
    for (std::size_t i = 0; i < chain.systems.size(); ++i) {
        const auto s = static_cast<Eigen::Index>(2 * i);
        rates[i] = std::real(parts.L(s, s) + parts.L(s + 1, s + 1));
    }
    return rates;
}

} // namespace cascade
