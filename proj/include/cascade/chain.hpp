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

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

/// One harmonic oscillator (or effective oscillator mode). Frequencies and
/// rates are dimensionless, expressed in units of a reference frequency.
/// omega may be negative (inverted oscillator).
struct SystemSpec {
    int id = 0;          ///< user-facing label, referenced by passes
    double omega = 1.0;  ///< oscillation frequency (sign free)
    double gamma = 0.0;  ///< intrinsic damping rate, >= 0
    double nbar = 0.0;   ///< thermal bath occupation, >= 0

    bool operator==(const SystemSpec&) const = default;
};

/// One localized light-matter interaction. The coupled system operator is
///   B = e^{i phi} (cos(theta) b + sin(theta) b^dag).
struct Pass {
    int system = 0;      ///< SystemSpec id this pass acts on
    double g = 0.0;      ///< coupling strength (sqrt of measurement rate), >= 0
    double theta = 0.0;  ///< Stokes angle: beam-splitter vs parametric weight
    double phi = 0.0;    ///< optical quadrature phase

    bool operator==(const Pass&) const = default;
};

/// Ordered description of all light-matter interactions along the beam path,
/// with per-link amplitude transmissions between consecutive passes.
/// The single source of truth for every downstream builder.
struct InteractionChain {
    std::vector<SystemSpec> systems;
    std::vector<Pass> passes;
    std::vector<double> link_etas;  ///< size passes.size()-1 (empty if <2 passes)
    bool pump_copropagating = false;

    std::size_t num_systems() const { return systems.size(); }
    std::size_t num_passes() const { return passes.size(); }

    /// Index into `systems` for a given id; throws ChainError if unknown.
    std::size_t system_index(int id) const;

    /// Checks all structural invariants; throws ChainError on violation.
    /// An empty pass list is allowed for in-memory chains (decoupled
    /// oscillators); parse_chain additionally rejects it for documents.
    void validate() const;

    bool operator==(const InteractionChain&) const = default;
};

/// Amplitude transmission accumulated between passes k and j (0-based,
/// k <= j < num_passes): the product of link_etas[k..j-1]; 1 for k == j.
double transmittance(const InteractionChain& chain, std::size_t j, std::size_t k);

/// Effective couplings after pump rescaling: if pump_copropagating, pass j
/// couples with transmittance(j, 0) * g_j; otherwise the bare g_j.
std::vector<double> pump_rescaled_couplings(const InteractionChain& chain);

/// Parses a JSON configuration document. Errors carry the offending key.
InteractionChain parse_chain(const std::string& text);

/// Serializes to the same JSON schema accepted by parse_chain.
std::string serialize_chain(const InteractionChain& chain);

enum class Preset {
    single_pass,
    loop121,
    loop212,
    double_loop,
    double_pass,
    self_loop2,
    self_loop3,
    fig6,
    fig7,
    fig8_12,
    fig8_121,
    fig8_212,
    fig8_1212,
};

Preset preset_from_name(std::string_view name);
std::string_view preset_name(Preset p);
std::vector<std::string_view> preset_names();

/// Builds a named chain. `params` supplies free scalars (eta, g, phi, ...);
/// unknown keys and missing required parameters are errors.
InteractionChain preset_chain(Preset p, const std::map<std::string, double>& params = {});

} // namespace cascade
