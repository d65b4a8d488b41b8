// Copyright 2026 The xcqaoa developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "json.hpp"
#include "xcq/errors.hpp"
#include "xcq/instance.hpp"
#include "xcq/ising.hpp"
#include "xcq/rng.hpp"

using namespace xcq;

namespace {

ExactCoverInstance toy_instance() {
    return make_instance(2, {{0}, {1}, {0, 1}});
}

}  // namespace

TEST_CASE("build_ising on the toy instance") {
    const auto m = build_ising(toy_instance());
    REQUIRE(m.n == 3);
    CHECK(m.coupling(0, 1) == doctest::Approx(0.0));
    CHECK(m.coupling(0, 2) == doctest::Approx(0.5));
    CHECK(m.coupling(1, 2) == doctest::Approx(0.5));
    for (int r = 0; r < 3; ++r) {
        CHECK(m.coupling(r, r) == 0.0);
        CHECK(m.h[static_cast<std::size_t>(r)] == doctest::Approx(0.0));
    }
    CHECK(m.offset == doctest::Approx(1.0));
}

TEST_CASE("build_ising on a single route") {
    const auto m = build_ising(make_instance(1, {{0}}));
    REQUIRE(m.n == 1);
    CHECK(m.h[0] == doctest::Approx(-0.5));
    CHECK(m.offset == doctest::Approx(0.5));
    CHECK(energy(m, 0b1) == doctest::Approx(0.0));
    CHECK(energy(m, 0b0) == doctest::Approx(1.0));
}

TEST_CASE("energy values on the toy instance") {
    const auto m = build_ising(toy_instance());
    // Routes {0,1} cover both flights.
    CHECK(energy(m, 0b011) == doctest::Approx(0.0));
    CHECK(energy(m, 0b100) == doctest::Approx(0.0));
    // All routes: both flights double-covered.
    CHECK(energy(m, 0b111) == doctest::Approx(2.0));
    // Nothing selected: both flights uncovered.
    CHECK(energy(m, 0b000) == doctest::Approx(2.0));
    CHECK_THROWS_AS(energy(m, 0b1000), ValidationError);
}

TEST_CASE("penalty_energy agrees with energy on the toy instance") {
    const auto inst = toy_instance();
    const auto m = build_ising(inst);
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(energy(m, x) == doctest::Approx(static_cast<double>(penalty_energy(inst, x))));
    }
    CHECK(penalty_energy(inst, 0b011) == 0);
    CHECK(penalty_energy(inst, 0b111) == 2);
    CHECK(penalty_energy(inst, 0b000) == 2);
    CHECK_THROWS_AS(penalty_energy(inst, 0b10000), ValidationError);
}

TEST_CASE("both energy routes agree exhaustively on planted instances") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto inst =
            generate_planted(10 + static_cast<int>(seed), 8 + static_cast<int>(seed % 5),
                             3, 500 + seed);
        const auto m = build_ising(inst);
        const auto table = energy_table(m);
        for (std::uint64_t x = 0; x < (1ull << inst.n_routes()); ++x) {
            const std::int64_t reference = penalty_energy(inst, x);
            REQUIRE(std::abs(energy(m, x) - static_cast<double>(reference)) < 1e-9);
            REQUIRE(table[x] == reference);
        }
    }
}

TEST_CASE("both energy routes agree on random bitstrings at larger n") {
    const auto inst = generate_planted(30, 22, 6, 77);
    const auto m = build_ising(inst);
    Rng rng(123);
    for (int k = 0; k < 10000; ++k) {
        const std::uint64_t x = rng.next_below(1ull << inst.n_routes());
        CHECK(std::abs(energy(m, x) - static_cast<double>(penalty_energy(inst, x))) < 1e-9);
    }
}

TEST_CASE("energies are integral under floating-point evaluation") {
    const auto inst = generate_planted(13, 9, 4, 5);
    const auto m = build_ising(inst);
    for (std::uint64_t x = 0; x < (1ull << m.n); ++x) {
        const double e = energy(m, x);
        CHECK(std::abs(e - std::round(e)) < 1e-9);
        CHECK(e >= -1e-9);
    }
}

TEST_CASE("J is symmetric with zero diagonal and half-integer entries") {
    const auto inst = generate_planted(20, 12, 4, 9);
    const auto m = build_ising(inst);
    for (int r = 0; r < m.n; ++r) {
        CHECK(m.coupling(r, r) == 0.0);
        CHECK(std::abs(2.0 * m.h[static_cast<std::size_t>(r)] -
                       std::round(2.0 * m.h[static_cast<std::size_t>(r)])) < 1e-12);
        for (int rp = 0; rp < m.n; ++rp) {
            CHECK(m.coupling(r, rp) == m.coupling(rp, r));
            CHECK(m.coupling(r, rp) >= 0.0);
            CHECK(std::abs(2.0 * m.coupling(r, rp) - std::round(2.0 * m.coupling(r, rp))) <
                  1e-12);
        }
    }
}

TEST_CASE("zero-energy set equals the oracle solutions and the gap is at least 1") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto inst = generate_planted(12, 10, 3, 900 + seed);
        const auto m = build_ising(inst);
        const auto table = energy_table(m);
        std::vector<std::uint64_t> zero_set;
        std::int64_t smallest_nonzero = INT64_MAX;
        for (std::uint64_t x = 0; x < table.size(); ++x) {
            if (table[x] == 0) {
                zero_set.push_back(x);
            } else {
                smallest_nonzero = std::min(smallest_nonzero, table[x]);
            }
        }
        CHECK(zero_set == solution_masks(inst));
        CHECK(smallest_nonzero >= 1);
    }
}

TEST_CASE("graph edges coincide with positive couplings") {
    const auto inst = generate_planted(16, 11, 4, 31);
    const auto m = build_ising(inst);
    const auto g = to_graph(inst);
    std::vector<std::pair<int, int>> coupled;
    for (int r = 0; r < m.n; ++r) {
        for (int rp = r + 1; rp < m.n; ++rp) {
            if (m.coupling(r, rp) > 0.0) {
                coupled.emplace_back(r, rp);
            }
        }
    }
    CHECK(coupled == g.edges);
}

TEST_CASE("spectrum of the toy instance") {
    const auto m = build_ising(toy_instance());
    const auto counts = spectrum(m);
    REQUIRE(counts.size() == 3);
    CHECK(counts.at(0) == 2);
    CHECK(counts.at(1) == 4);
    CHECK(counts.at(2) == 2);
}

TEST_CASE("spectrum of a single route") {
    const auto counts = spectrum(build_ising(make_instance(1, {{0}})));
    REQUIRE(counts.size() == 2);
    CHECK(counts.at(0) == 1);
    CHECK(counts.at(1) == 1);
}

TEST_CASE("spectrum counts sum to 2^n and planted instances are unique at zero") {
    const auto inst = generate_planted(15, 12, 5, 8);
    const auto counts = spectrum(build_ising(inst));
    std::uint64_t total = 0;
    for (const auto& [e, count] : counts) {
        total += count;
    }
    CHECK(total == (1ull << inst.n_routes()));
    CHECK(counts.at(0) == 1);
}

TEST_CASE("spectrum enforces its exhaustive limit") {
    IsingModel fake;
    fake.n = 26;
    CHECK_THROWS_AS(spectrum(fake), LimitError);
}

TEST_CASE("ising_to_json carries the full model") {
    const auto m = build_ising(toy_instance());
    const auto doc = nlohmann::json::parse(ising_to_json(m));
    CHECK(doc["n"] == 3);
    CHECK(doc["offset"] == doctest::Approx(1.0));
    CHECK(doc["J"][0][2] == doctest::Approx(0.5));
    CHECK(doc["h"].size() == 3);
}
