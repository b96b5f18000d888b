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

#include "cascade/chain.hpp"
#include "cascade/metrics.hpp"

namespace cascade::geometries {

enum class Scheme { single_pass, double_pass, loop121, double_loop };

struct GeometryParams {
    double g1 = 1.0;
    double g2 = 1.0;
    double eta1 = 1.0;   ///< first link (the only one for single/double pass)
    double eta2 = 1.0;   ///< second link (loop geometries)
    double phi = 0.0;    ///< loop phase (loop121); ignored elsewhere
    double g1m = 0.0;    ///< backward couplings, signed (double_pass only)
    double g2m = 0.0;
};

/// Closed-form rates for the named geometry, for cross-checking the generic
/// pipeline. Couplings are reported as complex magnitudes of the cross terms,
/// which coincide with the quoted rates at the operating phases 0 and pi.
RateSet closed_form_rates(Scheme scheme, const GeometryParams& p);

/// Closed-form rates of the single loop when the classical pump co-propagates
/// and is attenuated with the field (equal transmissions eta).
RateSet loop121_pump_rates(double eta, double g1, double g2);

/// Self-coupling coefficient of the three-pass scheme:
/// alpha = 3/2 + eta e^{-i phi12} + eta e^{-i phi23} + eta^2 e^{-i(phi12+phi23)}.
std::complex<double> three_pass_alpha(double eta, double phi12, double phi23);

enum class MultipassScheme { two_pass, three_pass };

/// Single-oscillator squeezing via repeated passes. Rates per unit g1^2.
struct SqueezeReport {
    double g_sq = 0.0;                 ///< coherent squeezing rate
    double Gamma = 0.0;                ///< residual back-action rate
    double r = 0.0;                    ///< (Gamma/2) / g_sq
    std::complex<double> alpha{0, 0};  ///< complex coefficient of the X^2 term
};

/// phi23 is ignored for two_pass (phi12 is the loop phase). Throws when the
/// coherent part vanishes (sin phi = 0 for two passes).
SqueezeReport multipass_squeeze(MultipassScheme scheme, double eta, double phi12,
                                double phi23);

/// The counter-propagating double pass as a single chain: forward passes
/// 1, 2 and backward passes 2, 1 joined by a zero-transmission link, which
/// makes the two halves statistically independent. Negative backward
/// couplings are encoded as a pi phase on the pass.
InteractionChain double_pass_chain(const std::vector<SystemSpec>& systems, double g1,
                                   double g2, double g1m, double g2m, double eta,
                                   double theta1, double theta2);

} // namespace cascade::geometries
