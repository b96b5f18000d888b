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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cascade/chain.hpp"

namespace cascade {

/// Scalar rates characterizing a two-system coupling geometry.
struct RateSet {
    double g = 0.0;                 ///< coherent coupling magnitude
    std::vector<double> Gamma;      ///< per-system back-action rates
    double gamma12 = 0.0;           ///< collective dissipation magnitude
    double self_interaction = 0.0;  ///< residual self-coupling of the looped system
    std::vector<double> gamma_th;   ///< gamma_i (nbar_i + 1/2)
    std::vector<double> gamma_tot;  ///< gamma_th + Gamma/2
};

/// Beam-splitter and two-mode-squeezing weights of the coupling Hamiltonian:
/// alpha = cos(theta1 + theta2)/2, beta = sin(theta1 - theta2)/2.
std::pair<double, double> bs_tms_weights(double theta1, double theta2);

/// C = g^2 / (gamma_1,tot gamma_2,tot). Throws on a zero denominator.
double cooperativity(const RateSet& rates);

enum class CoopScheme { loop121, loop121_pump, double_loop };

/// Cooperativity of the named scheme at transmission eta and single-pass
/// cooperativities c1, c2 (infinity allowed). Throws "diverging cooperativity"
/// when the total decoherence of either system vanishes.
double cooperativity_closed_form(CoopScheme scheme, double eta, double c1, double c2);

/// Logarithmic negativity of a two-mode covariance matrix (vacuum = 1/2).
double log_negativity(const Eigen::MatrixXd& c);

/// (Var(X1 + X2) + Var(P1 - P2)) / 2; values below 1 witness entanglement.
double epr_variance(const Eigen::MatrixXd& c);

/// Noise-to-coupling ratio for stationary two-mode squeezing:
/// r = (gamma_1,th + gamma_2,th + (Gamma_1 + Gamma_2)/2) / (2 g beta).
double squeezing_ratio(const RateSet& rates, double beta);

/// Rates extracted from the generic master-equation pipeline for a
/// two-system chain: back-action from the dissipator's diagonal blocks,
/// coupling and collective rates from projections of the cross blocks.
RateSet rates_from_chain(const InteractionChain& chain);

struct StationaryOptions {
    /// 0 integrates until E_N plateaus; > 0 reads E_N at that fixed time
    /// (the protocol behind finite-window trajectory plots).
    double horizon = 0.0;
    double plateau_tol = 1e-3;
};

/// Stationary logarithmic negativity of a two-system chain, starting from its
/// thermal state. Uses the Lyapunov steady state when the drift is stable.
/// Resonant two-mode squeezing above threshold has no stationary covariance
/// (the anti-squeezed quadrature keeps growing) while E_N still settles, so in
/// that case the trajectory is integrated per StationaryOptions.
double steady_log_negativity(const InteractionChain& chain,
                             const StationaryOptions& opts = {});

} // namespace cascade
