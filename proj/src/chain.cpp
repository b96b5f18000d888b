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

#include "cascade/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cascade {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) { throw ChainError(msg); }

void check_finite(double x, const std::string& where) {
    if (!std::isfinite(x)) fail(where + ": value must be finite");
}

} // namespace

std::size_t InteractionChain::system_index(int id) const {
    for (std::size_t i = 0; i < systems.size(); ++i) {
        if (systems[i].id == id) return i;
    }
    fail("unknown system reference: id " + std::to_string(id));
}

void InteractionChain::validate() const {
    if (systems.empty()) fail("chain has no systems");
    std::set<int> ids;
    for (const auto& s : systems) {
        if (!ids.insert(s.id).second)
            fail("duplicate system id " + std::to_string(s.id));
        check_finite(s.omega, "systems: omega");
        check_finite(s.gamma, "systems: gamma");
        check_finite(s.nbar, "systems: nbar");
        if (s.gamma < 0.0) fail("systems: gamma must be >= 0");
        if (s.nbar < 0.0) fail("systems: nbar must be >= 0");
    }
    for (std::size_t j = 0; j < passes.size(); ++j) {
        const auto& p = passes[j];
        if (!ids.count(p.system))
            fail("passes[" + std::to_string(j) + "]: unknown system reference: id " +
                 std::to_string(p.system));
        check_finite(p.g, "passes: g");
        check_finite(p.theta, "passes: theta");
        check_finite(p.phi, "passes: phi");
        if (p.g < 0.0) fail("passes[" + std::to_string(j) + "]: g must be >= 0");
    }
    const std::size_t want = passes.empty() ? 0 : passes.size() - 1;
    if (link_etas.size() != want)
        fail("link_etas: expected " + std::to_string(want) + " entries, got " +
             std::to_string(link_etas.size()));
    for (std::size_t j = 0; j < link_etas.size(); ++j) {
        if (!(link_etas[j] >= 0.0 && link_etas[j] <= 1.0))
            fail("link_etas[" + std::to_string(j) + "]: transmission out of range [0, 1]");
    }
}

double transmittance(const InteractionChain& chain, std::size_t j, std::size_t k) {
    if (j >= chain.passes.size() || k > j)
        fail("transmittance: need pass indices k <= j < " +
             std::to_string(chain.passes.size()));
    double eta = 1.0;
    for (std::size_t l = k; l < j; ++l) eta *= chain.link_etas[l];
    return eta;
}

std::vector<double> pump_rescaled_couplings(const InteractionChain& chain) {
    std::vector<double> g(chain.passes.size());
    for (std::size_t j = 0; j < chain.passes.size(); ++j) {
        g[j] = chain.passes[j].g;
        if (chain.pump_copropagating) g[j] *= transmittance(chain, j, 0);
    }
    return g;
}

// ---------------------------------------------------------------------------
// JSON configuration documents
// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where + ": missing key \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            fail(where + ": unknown key \"" + key + "\"");
    }
}

} // namespace

InteractionChain parse_chain(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) fail("malformed document: top level must be an object");
    reject_unknown_keys(doc, {"systems", "passes", "link_etas", "pump_copropagating"},
                        "document");

    InteractionChain chain;
    if (!doc.contains("systems") || !doc["systems"].is_array() || doc["systems"].empty())
        fail("document: \"systems\" must be a nonempty array");
    std::size_t i = 0;
    for (const auto& s : doc["systems"]) {
        const std::string where = "systems[" + std::to_string(i++) + "]";
        if (!s.is_object()) fail(where + ": must be an object");
        reject_unknown_keys(s, {"id", "omega", "gamma", "nbar"}, where);
        SystemSpec spec;
        if (!s.contains("id") || !s.at("id").is_number_integer())
            fail(where + ": \"id\" must be an integer");
        spec.id = s.at("id").get<int>();
        spec.omega = require_number(s, "omega", where);
        spec.gamma = s.contains("gamma") ? require_number(s, "gamma", where) : 0.0;
        spec.nbar = s.contains("nbar") ? require_number(s, "nbar", where) : 0.0;
        chain.systems.push_back(spec);
    }

    if (!doc.contains("passes") || !doc["passes"].is_array() || doc["passes"].empty())
        fail("document: \"passes\" must be a nonempty array");
    i = 0;
    for (const auto& p : doc["passes"]) {
        const std::string where = "passes[" + std::to_string(i++) + "]";
        if (!p.is_object()) fail(where + ": must be an object");
        reject_unknown_keys(p, {"system", "g", "theta", "phi"}, where);
        Pass pass;
        if (!p.contains("system") || !p.at("system").is_number_integer())
            fail(where + ": \"system\" must be an integer");
        pass.system = p.at("system").get<int>();
        pass.g = require_number(p, "g", where);
        pass.theta = p.contains("theta") ? require_number(p, "theta", where) : 0.0;
        pass.phi = p.contains("phi") ? require_number(p, "phi", where) : 0.0;
        chain.passes.push_back(pass);
    }

    if (doc.contains("link_etas")) {
        if (!doc["link_etas"].is_array()) fail("document: \"link_etas\" must be an array");
        i = 0;
        for (const auto& e : doc["link_etas"]) {
            const std::string where = "link_etas[" + std::to_string(i++) + "]";
            if (!e.is_number()) fail(where + ": must be a number");
            chain.link_etas.push_back(e.get<double>());
        }
    }
    if (doc.contains("pump_copropagating")) {
        if (!doc["pump_copropagating"].is_boolean())
            fail("document: \"pump_copropagating\" must be a boolean");
        chain.pump_copropagating = doc["pump_copropagating"].get<bool>();
    }

    chain.validate();
    return chain;
}

std::string serialize_chain(const InteractionChain& chain) {
    json doc;
    doc["systems"] = json::array();
    for (const auto& s : chain.systems) {
        doc["systems"].push_back(
            {{"id", s.id}, {"omega", s.omega}, {"gamma", s.gamma}, {"nbar", s.nbar}});
    }
    doc["passes"] = json::array();
    for (const auto& p : chain.passes) {
        doc["passes"].push_back(
            {{"system", p.system}, {"g", p.g}, {"theta", p.theta}, {"phi", p.phi}});
    }
    doc["link_etas"] = chain.link_etas;
    doc["pump_copropagating"] = chain.pump_copropagating;
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

struct PresetNameEntry {
    Preset preset;
    std::string_view name;
};

constexpr PresetNameEntry kPresetNames[] = {
    {Preset::single_pass, "single_pass"}, {Preset::loop121, "loop121"},
    {Preset::loop212, "loop212"},         {Preset::double_loop, "double_loop"},
    {Preset::double_pass, "double_pass"}, {Preset::self_loop2, "self_loop2"},
    {Preset::self_loop3, "self_loop3"},   {Preset::fig6, "fig6"},
    {Preset::fig7, "fig7"},               {Preset::fig8_12, "fig8_12"},
    {Preset::fig8_121, "fig8_121"},       {Preset::fig8_212, "fig8_212"},
    {Preset::fig8_1212, "fig8_1212"},
};

/// Parameter map with allowed-key checking and defaults.
class Params {
public:
    Params(const std::map<std::string, double>& values,
           std::initializer_list<const char*> allowed, std::string_view preset)
        : values_(values) {
        for (const auto& [key, value] : values) {
            if (std::find_if(allowed.begin(), allowed.end(),
                             [&](const char* k) { return key == k; }) == allowed.end())
                fail("preset " + std::string(preset) + ": unknown parameter \"" + key + "\"");
        }
    }

    double get(const char* key, double fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double require(const char* key, std::string_view preset) const {
        auto it = values_.find(key);
        if (it == values_.end())
            fail("preset " + std::string(preset) + ": missing required parameter \"" +
                 std::string(key) + "\"");
        return it->second;
    }

    bool has(const char* key) const { return values_.count(key) != 0; }

private:
    const std::map<std::string, double>& values_;
};

SystemSpec make_system(int id, double omega, double gamma, double nbar) {
    return SystemSpec{id, omega, gamma, nbar};
}

// Two oscillators with per-system overrides taken from the common keys.
std::vector<SystemSpec> two_systems(const Params& p) {
    return {make_system(1, p.get("omega1", 1.0), p.get("gamma1", 0.0), p.get("nbar1", 0.0)),
            make_system(2, p.get("omega2", 1.0), p.get("gamma2", 0.0), p.get("nbar2", 0.0))};
}

// Thermal decoherence rates fixed by the entanglement scenario; couplings
// follow from the requested single-pass cooperativities c_i = g_i^2 / gamma_i,th.
InteractionChain fig8_chain(double c1, double c2, double theta2, bool looped_order_21,
                            bool double_loop, double eta) {
    const double gamma1 = 1e-3, nbar1 = 0.0;
    const double gamma2 = 1e-4, nbar2 = 10.0;
    const double g1 = std::sqrt(c1 * gamma1 * (nbar1 + 0.5));
    const double g2 = std::sqrt(c2 * gamma2 * (nbar2 + 0.5));
    const double theta1 = kPi / 4.0;

    InteractionChain chain;
    chain.systems = {make_system(1, -1.0, gamma1, nbar1), make_system(2, 1.0, gamma2, nbar2)};
    if (double_loop) {
        chain.passes = {{1, g1, theta1, 0.0},
                        {2, g2, theta2, 0.0},
                        {1, g1, theta1, kPi},
                        {2, g2, theta2, kPi}};
        chain.link_etas = {eta, eta, eta};
    } else if (looped_order_21) {
        chain.passes = {{2, g2, theta2, 0.0}, {1, g1, theta1, 0.0}, {2, g2, theta2, kPi}};
        chain.link_etas = {eta, eta};
    } else {
        chain.passes = {{1, g1, theta1, 0.0}, {2, g2, theta2, 0.0}};
        chain.link_etas = {eta};
    }
    return chain;
}

} // namespace

Preset preset_from_name(std::string_view name) {
    for (const auto& e : kPresetNames) {
        if (e.name == name) return e.preset;
    }
    fail("unknown preset \"" + std::string(name) + "\"");
}

std::string_view preset_name(Preset p) {
    for (const auto& e : kPresetNames) {
        if (e.preset == p) return e.name;
    }
    return "?";
}

std::vector<std::string_view> preset_names() {
    std::vector<std::string_view> names;
    for (const auto& e : kPresetNames) names.push_back(e.name);
    return names;
}

InteractionChain preset_chain(Preset preset, const std::map<std::string, double>& params) {
    const std::string_view name = preset_name(preset);
    InteractionChain chain;

    switch (preset) {
    case Preset::single_pass: {
        Params p(params, {"eta", "g1", "g2", "theta1", "theta2", "omega1", "omega2",
                          "gamma1", "gamma2", "nbar1", "nbar2"}, name);
        chain.systems = two_systems(p);
        chain.passes = {{1, p.get("g1", 1.0), p.get("theta1", kPi / 4), 0.0},
                        {2, p.get("g2", 1.0), p.get("theta2", -kPi / 4), 0.0}};
        chain.link_etas = {p.get("eta", 1.0)};
        break;
    }
    case Preset::loop121:
    case Preset::loop212: {
        Params p(params, {"eta", "eta1", "eta2", "g1", "g2", "phi", "theta1", "theta2",
                          "omega1", "omega2", "gamma1", "gamma2", "nbar1", "nbar2"}, name);
        chain.systems = two_systems(p);
        const double eta = p.get("eta", 1.0);
        const double eta1 = p.get("eta1", eta), eta2 = p.get("eta2", eta);
        const double phi = p.get("phi", kPi);
        const Pass p1{1, p.get("g1", 1.0), p.get("theta1", kPi / 4), 0.0};
        const Pass p2{2, p.get("g2", 1.0), p.get("theta2", -kPi / 4), 0.0};
        if (preset == Preset::loop121) {
            Pass p3 = p1;
            p3.phi = phi;
            chain.passes = {p1, p2, p3};
        } else {
            Pass p3 = p2;
            p3.phi = phi;
            chain.passes = {p2, p1, p3};
        }
        chain.link_etas = {eta1, eta2};
        break;
    }
    case Preset::double_loop: {
        Params p(params, {"eta", "g1", "g2", "theta1", "theta2", "omega1", "omega2",
                          "gamma1", "gamma2", "nbar1", "nbar2"}, name);
        chain.systems = two_systems(p);
        const double eta = p.get("eta", 1.0);
        const Pass p1{1, p.get("g1", 1.0), p.get("theta1", kPi / 4), 0.0};
        const Pass p2{2, p.get("g2", 1.0), p.get("theta2", -kPi / 4), 0.0};
        Pass p3 = p1, p4 = p2;
        p3.phi = kPi;
        p4.phi = kPi;
        chain.passes = {p1, p2, p3, p4};
        chain.link_etas = {eta, eta, eta};
        break;
    }
    case Preset::double_pass: {
        // Counter-propagating double pass: forward 1->2 and backward 2->1 on
        // independent vacuum inputs. The zero transmission in the middle link
        // decorrelates the two halves, which is exactly the sum of two
        // independent single-pass chains. phi = pi on the final pass makes the
        // backward interaction with system 1 the time reversal of the forward one.
        Params p(params, {"eta", "g1", "g2", "g1m", "g2m", "phi", "theta1", "theta2",
                          "omega1", "omega2", "gamma1", "gamma2", "nbar1", "nbar2"}, name);
        chain.systems = two_systems(p);
        const double eta = p.get("eta", 1.0);
        const double g1 = p.get("g1", 1.0), g2 = p.get("g2", 1.0);
        const double theta1 = p.get("theta1", kPi / 4), theta2 = p.get("theta2", -kPi / 4);
        chain.passes = {{1, g1, theta1, 0.0},
                        {2, g2, theta2, 0.0},
                        {2, p.get("g2m", g2), theta2, 0.0},
                        {1, p.get("g1m", g1), theta1, p.get("phi", kPi)}};
        chain.link_etas = {eta, 0.0, eta};
        break;
    }
    case Preset::self_loop2: {
        Params p(params, {"eta", "g1", "phi", "theta", "omega", "gamma", "nbar"}, name);
        const double phi = p.require("phi", name);
        chain.systems = {make_system(1, p.get("omega", 1.0), p.get("gamma", 0.0),
                                     p.get("nbar", 0.0))};
        const double g1 = p.get("g1", 1.0), theta = p.get("theta", kPi / 4);
        chain.passes = {{1, g1, theta, 0.0}, {1, g1, theta, phi}};
        chain.link_etas = {p.get("eta", 1.0)};
        break;
    }
    case Preset::self_loop3: {
        Params p(params, {"eta", "g1", "phi12", "phi23", "theta", "omega", "gamma", "nbar"},
                 name);
        chain.systems = {make_system(1, p.get("omega", 1.0), p.get("gamma", 0.0),
                                     p.get("nbar", 0.0))};
        const double g1 = p.get("g1", 1.0), theta = p.get("theta", kPi / 4);
        const double phi12 = p.get("phi12", 2.0 * kPi / 3.0);
        const double phi23 = p.get("phi23", 2.0 * kPi / 3.0);
        const double eta = p.get("eta", 1.0);
        chain.passes = {{1, g1, theta, 0.0}, {1, g1, theta, phi12}, {1, g1, theta, phi12 + phi23}};
        chain.link_etas = {eta, eta};
        break;
    }
    case Preset::fig6: {
        // Single-loop chain with c1 = 25, c2 = 4 at vacuum baths, used for the
        // cooperativity-vs-loss curves.
        Params p(params, {"eta", "g1", "g2"}, name);
        const double g1 = p.get("g1", 0.1), g2 = p.get("g2", 0.1);
        const double gamma1 = 2.0 * g1 * g1 / 25.0;
        const double gamma2 = 2.0 * g2 * g2 / 4.0;
        chain.systems = {make_system(1, 1.0, gamma1, 0.0), make_system(2, 1.0, gamma2, 0.0)};
        const double eta = p.get("eta", 1.0);
        chain.passes = {{1, g1, kPi / 4, 0.0}, {2, g2, -kPi / 4, 0.0}, {1, g1, kPi / 4, kPi}};
        chain.link_etas = {eta, eta};
        break;
    }
    case Preset::fig7: {
        // Sympathetic cooling: oscillator 1 is heavily damped to a vacuum bath,
        // oscillator 2 nearly undamped but hot. g is the loop coupling 2 eta g1 g2
        // with the pass couplings held at ratio g1/g2 = 10.
        Params p(params, {"eta", "g"}, name);
        const double g = p.require("g", name);
        const double eta = p.get("eta", 1.0);
        if (!(g > 0.0) || !(eta > 0.0)) fail("preset fig7: need g > 0 and eta > 0");
        const double g2 = std::sqrt(g / (20.0 * eta));
        const double g1 = 10.0 * g2;
        chain.systems = {make_system(1, 1.0, 0.1, 0.0), make_system(2, 1.0, 1e-7, 1e4)};
        chain.passes = {{1, g1, kPi / 4, 0.0}, {2, g2, -kPi / 4, 0.0}, {1, g1, kPi / 4, kPi}};
        chain.link_etas = {eta, eta};
        break;
    }
    case Preset::fig8_12: {
        Params p(params, {"eta"}, name);
        chain = fig8_chain(10.0, 10.0, 0.8 * kPi / 4.0, false, false, p.get("eta", 1.0));
        break;
    }
    case Preset::fig8_121: {
        Params p(params, {"eta"}, name);
        InteractionChain base = fig8_chain(25.0, 4.0, -0.8 * kPi / 4.0, false, false, 1.0);
        const double eta = p.get("eta", 1.0);
        Pass loop = base.passes[0];
        loop.phi = kPi;
        base.passes.push_back(loop);
        base.link_etas = {eta, eta};
        chain = base;
        break;
    }
    case Preset::fig8_212: {
        Params p(params, {"eta"}, name);
        chain = fig8_chain(4.0, 25.0, -0.8 * kPi / 4.0, true, false, p.get("eta", 1.0));
        break;
    }
    case Preset::fig8_1212: {
        Params p(params, {"eta"}, name);
        chain = fig8_chain(10.0, 10.0, -0.8 * kPi / 4.0, false, true, p.get("eta", 1.0));
        break;
    }
    }

    chain.validate();
    return chain;
}

} // namespace cascade
