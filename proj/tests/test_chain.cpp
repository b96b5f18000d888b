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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cascade/chain.hpp"

using namespace cascade;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("parse: minimal document") {
    const auto chain = parse_chain(R"({
        "systems": [{"id": 1, "omega": 1.0, "gamma": 0.0, "nbar": 0.0}],
        "passes": [{"system": 1, "g": 0.5, "theta": 0.7853981633974483, "phi": 0.0}]
    })");
    CHECK(chain.num_systems() == 1);
    CHECK(chain.num_passes() == 1);
    CHECK(chain.link_etas.empty());
    CHECK(!chain.pump_copropagating);
}

TEST_CASE("parse: transmission out of range") {
    const std::string doc = R"({
        "systems": [{"id": 1, "omega": 1.0}, {"id": 2, "omega": 1.0}],
        "passes": [{"system": 1, "g": 1.0}, {"system": 2, "g": 1.0}],
        "link_etas": [1.2]
    })";
    CHECK_THROWS_WITH_AS(parse_chain(doc),
                         "link_etas[0]: transmission out of range [0, 1]", ChainError);
}

TEST_CASE("parse: error reporting") {
    CHECK_THROWS_AS(parse_chain("{nope"), ChainError);
    CHECK_THROWS_AS(parse_chain(R"({"systems": [], "passes": []})"), ChainError);
    // unknown system reference
    CHECK_THROWS_AS(parse_chain(R"({
        "systems": [{"id": 1, "omega": 1.0}],
        "passes": [{"system": 7, "g": 1.0}]
    })"),
                    ChainError);
    // empty pass list
    CHECK_THROWS_AS(parse_chain(R"({
        "systems": [{"id": 1, "omega": 1.0}],
        "passes": []
    })"),
                    ChainError);
    // typo in a key
    CHECK_THROWS_AS(parse_chain(R"({
        "systems": [{"id": 1, "omega": 1.0, "gama": 0.1}],
        "passes": [{"system": 1, "g": 1.0}]
    })"),
                    ChainError);
}

TEST_CASE("serialize/parse round trip") {
    for (const auto name : {"fig8_121", "fig8_1212", "fig7", "double_pass", "self_loop3"}) {
        std::map<std::string, double> params;
        if (std::string(name) == "fig7") params["g"] = 0.1;
        const auto chain = preset_chain(preset_from_name(name), params);
        const auto round = parse_chain(serialize_chain(chain));
        CHECK(round == chain);
    }
}

TEST_CASE("transmittance products") {
    auto chain = preset_chain(Preset::loop121, {{"g1", 1.0}, {"g2", 1.0}});
    chain.link_etas = {0.9, 0.8};
    CHECK(transmittance(chain, 2, 0) == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(transmittance(chain, 1, 1) == 1.0);

    chain.link_etas = {0.5, 0.9};
    CHECK(transmittance(chain, 1, 0) == doctest::Approx(0.5).epsilon(1e-15));

    chain.link_etas = {1.0, 1.0};
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k <= j; ++k) CHECK(transmittance(chain, j, k) == 1.0);
    }

    CHECK_THROWS_AS(transmittance(chain, 0, 1), ChainError);
    CHECK_THROWS_AS(transmittance(chain, 5, 0), ChainError);
}

TEST_CASE("transmittance is multiplicative and bounded") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> eta_dist(0.0, 1.0);
    InteractionChain chain;
    chain.systems = {{1, 1.0, 0.0, 0.0}};
    for (int trial = 0; trial < 50; ++trial) {
        chain.passes.assign(6, Pass{1, 1.0, 0.0, 0.0});
        chain.link_etas.clear();
        for (int l = 0; l < 5; ++l) chain.link_etas.push_back(eta_dist(rng));
        for (std::size_t j = 0; j < 6; ++j) {
            for (std::size_t k = 0; k <= j; ++k) {
                const double eta_jk = transmittance(chain, j, k);
                CHECK(eta_jk >= 0.0);
                CHECK(eta_jk <= 1.0);
                for (std::size_t l = 0; l <= k; ++l) {
                    const double prod = eta_jk * transmittance(chain, k, l);
                    const double direct = transmittance(chain, j, l);
                    CHECK(prod == doctest::Approx(direct).epsilon(1e-15));
                }
            }
        }
    }
}

TEST_CASE("pump rescaling") {
    auto chain = preset_chain(Preset::loop121,
                              {{"g1", 2.0}, {"g2", 3.0}, {"eta", 0.8}, {"phi", kPi}});
    SUBCASE("flag off: identity") {
        const auto g = pump_rescaled_couplings(chain);
        CHECK(g == std::vector<double>{2.0, 3.0, 2.0});
    }
    SUBCASE("flag on: total transmission to each pass") {
        chain.pump_copropagating = true;
        const auto g = pump_rescaled_couplings(chain);
        CHECK(g[0] == doctest::Approx(2.0));
        CHECK(g[1] == doctest::Approx(0.8 * 3.0));
        CHECK(g[2] == doctest::Approx(0.64 * 2.0));
    }
    SUBCASE("lossless: identity") {
        chain.link_etas = {1.0, 1.0};
        chain.pump_copropagating = true;
        const auto g = pump_rescaled_couplings(chain);
        CHECK(g == std::vector<double>{2.0, 3.0, 2.0});
    }
}

TEST_CASE("preset: loop121 pass order and loop phase") {
    const auto chain = preset_chain(
        Preset::loop121, {{"eta", 1.0}, {"g1", 1.0}, {"g2", 1.0}, {"phi", kPi}});
    REQUIRE(chain.num_passes() == 3);
    CHECK(chain.passes[0].system == 1);
    CHECK(chain.passes[1].system == 2);
    CHECK(chain.passes[2].system == 1);
    CHECK(chain.passes[0].phi == 0.0);
    CHECK(chain.passes[2].phi == kPi);
}

TEST_CASE("preset: single_pass shape") {
    const auto chain = preset_chain(Preset::single_pass, {{"eta", 1.0}});
    CHECK(chain.num_passes() == 2);
    CHECK(chain.link_etas.size() == 1);
}

TEST_CASE("preset: fig8_121 single-pass cooperativities") {
    const auto chain = preset_chain(Preset::fig8_121);
    const auto& s1 = chain.systems[0];
    const auto& s2 = chain.systems[1];
    const double c1 =
        chain.passes[0].g * chain.passes[0].g / (s1.gamma * (s1.nbar + 0.5));
    const double c2 =
        chain.passes[1].g * chain.passes[1].g / (s2.gamma * (s2.nbar + 0.5));
    CHECK(c1 == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(c2 == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(chain.systems[0].omega == -1.0);
    CHECK(chain.systems[1].omega == 1.0);
}

TEST_CASE("preset: fig7 parameters") {
    const auto chain = preset_chain(Preset::fig7, {{"g", 0.1}, {"eta", 0.9}});
    CHECK(chain.systems[0].gamma == doctest::Approx(0.1));
    CHECK(chain.systems[1].gamma == doctest::Approx(1e-7));
    CHECK(chain.systems[1].nbar == doctest::Approx(1e4));
    const double g1 = chain.passes[0].g, g2 = chain.passes[1].g;
    CHECK(g1 / g2 == doctest::Approx(10.0));
    CHECK(2.0 * 0.9 * g1 * g2 == doctest::Approx(0.1));
}

TEST_CASE("preset: errors") {
    CHECK_THROWS_AS(preset_from_name("no_such_preset"), ChainError);
    CHECK_THROWS_AS(preset_chain(Preset::fig7, {}), ChainError);          // missing g
    CHECK_THROWS_AS(preset_chain(Preset::self_loop2, {}), ChainError);    // missing phi
    CHECK_THROWS_AS(preset_chain(Preset::loop121, {{"bogus", 1.0}}), ChainError);
}

TEST_CASE("preset names round trip") {
    for (const auto name : preset_names()) {
        CHECK(preset_name(preset_from_name(name)) == name);
    }
}
