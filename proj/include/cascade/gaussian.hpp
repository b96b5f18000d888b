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

#include <vector>

#include <Eigen/Dense>

#include "cascade/chain.hpp"

namespace cascade {

/// Block-diagonal symplectic form for N modes: blocks [[0, 1], [-1, 0]],
/// so that [Q_i, Q_j] = i J_ij in the (X_1, P_1, ...) ordering.
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

/// Drift and diffusion of the Gaussian state:
///   dC/dt = F C + C F^T + N.
struct DriftDiffusion {
    Eigen::MatrixXd F;
    Eigen::MatrixXd N;
};

/// F = F_local + 2 J Im(A~), N = N_local + J Re(A~ + A~^T) J^T, with local
/// blocks [[-gamma/2, omega], [-omega, -gamma/2]] and diag(gamma_th, gamma_th),
/// gamma_th = gamma (nbar + 1/2).
DriftDiffusion drift_diffusion(const std::vector<SystemSpec>& systems,
                               const Eigen::MatrixXcd& atilde);
DriftDiffusion drift_diffusion(const InteractionChain& chain);

/// Thermal covariance diag(nbar_i + 1/2) per quadrature (vacuum = I/2).
Eigen::MatrixXd thermal_state(const std::vector<SystemSpec>& systems);

struct EvolveOptions {
    double dt = 0.0;              ///< step size; 0 picks 0.01 / max(|omega|, ||F||)
    double physical_tol = 1e-6;   ///< abort threshold on min eig of C + iJ/2
    bool check_physical = true;
};

/// Classical fixed-step 4th-order integration of the covariance ODE, sampled
/// at the (strictly increasing, starting at >= 0) times in t_grid. Outputs are
/// symmetrized; physicality is checked at each sample.
std::vector<Eigen::MatrixXd> evolve(const DriftDiffusion& fd, const Eigen::MatrixXd& c0,
                                    const std::vector<double>& t_grid,
                                    const EvolveOptions& opts = {});

/// Largest real part among the eigenvalues of F.
double spectral_abscissa(const Eigen::MatrixXd& f);
bool is_hurwitz(const Eigen::MatrixXd& f);

/// Unique symmetric solution of F C + C F^T + N = 0 via the dense Kronecker
/// linear system (fine for the small matrices handled here). Throws
/// NumericalError("unstable dynamics...") when F is not Hurwitz.
Eigen::MatrixXd steady_state(const DriftDiffusion& fd);

/// n_i = (Var X_i + Var P_i - 1) / 2.
std::vector<double> phonon_numbers(const Eigen::MatrixXd& c);

/// Smallest eigenvalue of C + iJ/2; >= 0 (up to tolerance) for physical states.
double physicality_margin(const Eigen::MatrixXd& c);

} // namespace cascade
