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

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cascade/chain.hpp"

namespace cascade {

// Quadrature ordering throughout: (X_1, P_1, X_2, P_2, ...), one (X, P) pair
// per system in chain order, with b = (X + iP)/sqrt(2) and [X_i, P_j] = i d_ij.

/// Pass-ordered coupling matrix over the abstract pass operators B_j:
/// A_jk = eta_jk g_j g_k for k < j, A_jj = g_j^2 / 2, zero above the diagonal
/// (no coupling to passes that happen later). Pump rescaling is applied.
Eigen::MatrixXd pass_coupling_matrix(const InteractionChain& chain);

/// n x 2N map from pass operators to quadratures: B_j = sum_m U_jm Q_m.
/// Row j is supported on the (X, P) columns of the pass's system only.
Eigen::MatrixXcd quadrature_map(const InteractionChain& chain);

/// Same, for the conjugate combinations B_j^- = e^{i phi_j}(mu_j b - nu_j b^dag).
/// Used by the time-delay correction.
Eigen::MatrixXcd quadrature_minus_map(const InteractionChain& chain);

/// A = U^dag A_pass U, expressed over quadratures (2N x 2N complex).
Eigen::MatrixXcd quadrature_transform(const Eigen::MatrixXd& pass_matrix,
                                      const Eigen::MatrixXcd& map);

/// Convenience: quadrature_transform(pass_coupling_matrix, quadrature_map).
Eigen::MatrixXcd quadrature_matrix(const InteractionChain& chain);

/// Sum of quadrature matrices of several chains sharing one system list,
/// each driven by an independent vacuum input (counter-propagating modes).
Eigen::MatrixXcd quadrature_matrix_sum(std::span<const InteractionChain> chains);

struct HamiltonianDissipator {
    Eigen::MatrixXcd R;  ///< Hermitian; H_eff = (1/2) sum R_ij Q_i Q_j
    Eigen::MatrixXcd L;  ///< Hermitian PSD; Lambda_eff = sum L_ij Q_i Q_j
};

/// R = -i (A - A^dag), L = A + A^dag.
HamiltonianDissipator split_hamiltonian_dissipator(const Eigen::MatrixXcd& atilde);

/// One Lindblad collapse channel: j_k = sqrt(rate) e_k^dag Q.
struct JumpOperator {
    double rate = 0.0;
    Eigen::VectorXcd coeffs;  ///< unit-norm vector e_k over quadratures
};

/// Eigendecomposition of the dissipation matrix, sorted by descending rate.
/// Eigenvalues in (-tol*norm, 0) are clipped to zero; anything below is an
/// error (the dissipator of a chain-built master equation is never negative).
std::vector<JumpOperator> jump_operators(const Eigen::MatrixXcd& L, double tol = 1e-10);

struct PsdCertificate {
    double min_eigenvalue = 0.0;
    double norm = 0.0;  ///< spectral norm used for the relative tolerance
};

/// Verifies L >= -tol*||L||; throws NumericalError otherwise.
PsdCertificate assert_psd(const Eigen::MatrixXcd& L, double tol = 1e-10);

/// Transmission Gram matrix: (M_n)_ij = eta_ij off the diagonal, 1 on it.
/// Positive semidefinite for any link transmissions in [0, 1]; the returned
/// scalar is its smallest eigenvalue.
std::pair<Eigen::MatrixXd, double> mn_matrix(const std::vector<double>& link_etas,
                                             std::size_t n);

/// Light-induced back-action rate per system: the trace of the system's
/// 2x2 diagonal block of L, which equals the rotating-frame rate Gamma_i
/// for any Stokes angle and phase.
std::vector<double> backaction_rates(const InteractionChain& chain);

} // namespace cascade
