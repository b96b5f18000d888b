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
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "cascade/chain.hpp"

namespace cascade::fock {

using SparseC = Eigen::SparseMatrix<std::complex<double>>;

/// Truncation setup for the brute-force density-matrix integration.
struct FockConfig {
    std::vector<int> dims;   ///< per-mode dimension, >= 2; product <= 4096
    double leak_tol = 1e-4;  ///< max tolerated top-level population
    double dt = 0.0;         ///< integrator step; 0 picks one from ||H||
};

/// Truncated operators and collapse channels of the full master equation:
/// effective Hamiltonian + light-induced dissipation + local thermal baths.
/// The light-induced part is carried twice: as the quadrature-basis matrix
/// L (used by the superoperator) and as its eigendecomposed jump channels
/// (used by the dense reference path); the two are the same dissipator.
struct LindbladGenerator {
    Eigen::Index dim = 0;
    SparseC hamiltonian;
    Eigen::MatrixXcd dissipator;          ///< light-induced L over quadratures
    std::vector<SparseC> light_collapse;  ///< jump channels, sqrt(rate)-scaled
    std::vector<SparseC> local_collapse;  ///< thermal baths, sqrt(rate)-scaled
    std::vector<SparseC> quadratures;     ///< X_1, P_1, X_2, P_2, ...
    std::vector<SparseC> top_projectors;  ///< per-mode highest level
};

LindbladGenerator build_generator(const InteractionChain& chain, const FockConfig& cfg);

/// drho/dt = -i[H, rho] + sum_k (c rho c^dag - 1/2 {c^dag c, rho}).
/// Dense reference evaluation, kept for testing the superoperator.
Eigen::MatrixXcd lindblad_rhs(const LindbladGenerator& gen, const Eigen::MatrixXcd& rho);

/// The same generator as a sparse superoperator on vec(rho) (column-major).
SparseC liouvillian(const LindbladGenerator& gen);

/// Product thermal state, exactly normalized on the truncated levels.
Eigen::MatrixXcd thermal_density(const std::vector<SystemSpec>& systems,
                                 const std::vector<int>& dims);

/// Symmetrized second moments of rho in the quadrature basis.
Eigen::MatrixXd covariance_from_density(const LindbladGenerator& gen,
                                        const Eigen::MatrixXcd& rho);

struct OracleResult {
    std::vector<Eigen::MatrixXd> covariances;
    double max_top_population = 0.0;
};

/// Integrates the truncated master equation from the thermal state and
/// samples covariances on t_grid. Throws NumericalError on truncation leak.
OracleResult oracle_covariance(const InteractionChain& chain, const FockConfig& cfg,
                               const std::vector<double>& t_grid);

struct OracleReport {
    double max_abs_deviation = 0.0;
    double max_top_population = 0.0;
    bool pass = false;
};

/// Runs the Fock integration and the Gaussian covariance pipeline side by
/// side from the same initial moments and reports the worst entrywise gap.
OracleReport oracle_compare(const InteractionChain& chain, const FockConfig& cfg,
                            const std::vector<double>& t_grid, double tol);

} // namespace cascade::fock
