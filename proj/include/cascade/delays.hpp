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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cascade/chain.hpp"

namespace cascade {

/// Per-pass arrival times of the light at the interaction points.
struct DelaySpec {
    std::vector<double> taus;  ///< nondecreasing, one per pass

    double tau(std::size_t j, std::size_t k) const { return taus[j] - taus[k]; }
};

/// Largest |epsilon_jk| = |Omega_k (tau_j - tau_k)| over coupled pass pairs;
/// the delay treatment assumes this stays well below 1.
double max_delay_phase(const InteractionChain& chain, const DelaySpec& delays);

/// Quadrature coupling matrix including propagation delays within the
/// rotating-frame treatment: each retarded operator is replaced by
/// cos(eps) B_k + i sin(eps) B_k^-, eps = Omega_k tau_jk, keeping the
/// Markovian structure. Equals quadrature_matrix(chain) at zero delay and
/// reduces to the first-order-in-eps correction for small delays.
Eigen::MatrixXcd delay_corrected_matrix(const InteractionChain& chain,
                                        const DelaySpec& delays);

struct DelayPairReport {
    std::size_t j = 0;
    std::size_t k = 0;
    double epsilon = 0.0;  ///< Omega_k tau_jk
    double margin = 0.0;   ///< eta_jk g_j g_k Q_j tau_jk
    bool ok = false;
    std::string note;
};

/// Heuristic validity of neglecting/linearizing delays: the delay-induced
/// rate must stay below the intrinsic damping, margin < threshold.
std::vector<DelayPairReport> delay_validity(const InteractionChain& chain,
                                            const DelaySpec& delays,
                                            double threshold = 0.1);

struct SuppressionFactor {
    std::complex<double> factor;  ///< 1 + eta1 eta2 e^{-i phi} e^{i Omega tau}
    double phi_compensated = 0.0; ///< pi + Omega tau restores the cancellation
};

/// Residual back-action amplitude of the looped pair under delay, and the
/// loop phase that compensates it.
SuppressionFactor suppression_factor(double eta1, double eta2, double omega1,
                                     double tau13, double phi);

} // namespace cascade
