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
#include <complex>
#include <numbers>
#include <vector>

#include "xcq/anneal.hpp"
#include "xcq/errors.hpp"
#include "xcq/instance.hpp"
#include "xcq/ising.hpp"
#include "xcq/noise.hpp"
#include "xcq/rng.hpp"
#include "xcq/simulator.hpp"

using namespace xcq;

namespace {

constexpr double kPi = std::numbers::pi;

ExactCoverInstance toy_instance() {
    return make_instance(2, {{0}, {1}, {0, 1}});
}

// Reference circuit built from dense matrices: a diagonal phase from
// per-state energy() calls followed by an explicit n-fold Kronecker product
// of the single-qubit mixer. Only usable for tiny n.
StateVector dense_reference_layer(const IsingModel& m, double gamma, double beta) {
    const int n = m.n;
    const std::size_t dim = 1ull << n;
    std::vector<std::complex<double>> psi(dim, std::pow(2.0, -0.5 * n));
    for (std::size_t x = 0; x < dim; ++x) {
        psi[x] *= std::polar(1.0, -gamma * (energy(m, x) - m.offset));
    }
    const std::complex<double> mix[2][2] = {
        {std::cos(beta), std::complex<double>(0.0, -std::sin(beta))},
        {std::complex<double>(0.0, -std::sin(beta)), std::cos(beta)}};
    std::vector<std::complex<double>> out(dim, 0.0);
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            std::complex<double> element = 1.0;
            for (int q = 0; q < n; ++q) {
                element *= mix[(row >> q) & 1ull][(col >> q) & 1ull];
            }
            out[row] += element * psi[col];
        }
    }
    StateVector s;
    s.n = n;
    s.amps = std::move(out);
    return s;
}

double overlap_magnitude(const StateVector& a, const StateVector& b) {
    std::complex<double> dot = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        dot += std::conj(a.amps[i]) * b.amps[i];
    }
    return std::abs(dot);
}

}  // namespace

TEST_CASE("prepare_plus is the uniform superposition") {
    const auto one = prepare_plus(1);
    CHECK(one.amps[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(one.amps[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    const auto three = prepare_plus(3);
    REQUIRE(three.amps.size() == 8);
    for (const auto& a : three.amps) {
        CHECK(a.real() == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
        CHECK(a.imag() == 0.0);
    }
    CHECK(std::abs(norm_squared(prepare_plus(10)) - 1.0) < 1e-10);
    CHECK_THROWS_AS(prepare_plus(0), LimitError);
    CHECK_THROWS_AS(prepare_plus(max_qubits() + 1), LimitError);
}

TEST_CASE("cost phase at gamma = 0 is the identity") {
    const auto table = CostTable::build(build_ising(toy_instance()));
    auto s = prepare_plus(3);
    const auto before = s.amps;
    apply_cost_phase(s, 0.0, table);
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
        CHECK(std::abs(s.amps[i] - before[i]) < 1e-15);
    }
}

TEST_CASE("cost phase at gamma = 2 pi is the identity up to a global phase") {
    const auto table = CostTable::build(build_ising(toy_instance()));
    auto full_turn = prepare_plus(3);
    apply_cost_phase(full_turn, 2.0 * kPi, table);
    const auto reference = prepare_plus(3);
    CHECK(overlap_magnitude(full_turn, reference) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cost phase of the all-routes state at gamma = pi/2") {
    // E(111) = 2, offset = 1, so the phase factor is exp(-i pi/2) = -i.
    const auto table = CostTable::build(build_ising(toy_instance()));
    auto s = prepare_plus(3);
    const auto before = s.amps[0b111];
    apply_cost_phase(s, kPi / 2.0, table);
    const auto expected = before * std::complex<double>(0.0, -1.0);
    CHECK(std::abs(s.amps[0b111] - expected) < 1e-12);
}

TEST_CASE("mixer examples") {
    StateVector s;
    s.n = 1;
    s.amps = {1.0, 0.0};
    apply_mixer(s, 0.0);
    CHECK(std::abs(s.amps[0] - 1.0) < 1e-15);

    apply_mixer(s, kPi / 4.0);
    CHECK(std::abs(s.amps[0] - std::complex<double>(std::cos(kPi / 4), 0.0)) < 1e-12);
    CHECK(std::abs(s.amps[1] - std::complex<double>(0.0, -std::sin(kPi / 4))) < 1e-12);
}

TEST_CASE("mixer at beta = pi is a global sign per qubit") {
    auto s = prepare_plus(4);
    apply_mixer(s, 0.7);
    auto shifted = s;
    apply_mixer(shifted, kPi);
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
        CHECK(std::abs(shifted.amps[i] - s.amps[i]) < 1e-12);  // (-1)^4 = +1
    }
    CHECK(std::abs(norm_squared(shifted) - 1.0) < 1e-10);
}

TEST_CASE("run_qaoa with zero parameters leaves the plus state") {
    const auto table = CostTable::build(build_ising(toy_instance()));
    const auto s = run_qaoa(table, {{0.0}, {0.0}});
    const auto plus = prepare_plus(3);
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
        CHECK(std::abs(s.amps[i] - plus.amps[i]) < 1e-12);
    }
    CHECK_THROWS_AS(run_qaoa(table, {{}, {}}), ValidationError);
    CHECK_THROWS_AS(run_qaoa(table, {{0.1, 0.2}, {0.1}}), ValidationError);
}

TEST_CASE("run_qaoa preserves the norm after every layer") {
    const auto table = CostTable::build(build_ising(toy_instance()));
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        VariationalParams params;
        const int p = 1 + static_cast<int>(rng.next_below(4));
        for (int k = 0; k < p; ++k) {
            params.gammas.push_back(rng.uniform(0.0, 2.0 * kPi));
            params.betas.push_back(rng.uniform(0.0, kPi));
        }
        const auto s = run_qaoa(table, params);
        CHECK(std::abs(norm_squared(s) - 1.0) < 1e-10);
    }
}

TEST_CASE("p = 1 state matches the dense reference on small instances") {
    Rng rng(99);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto inst = seed == 0 ? toy_instance()
                                    : generate_planted(4 + static_cast<int>(seed), 4, 2,
                                                       40 + seed);
        const auto m = build_ising(inst);
        const auto table = CostTable::build(m);
        for (int trial = 0; trial < 5; ++trial) {
            const double gamma = rng.uniform(0.0, 2.0 * kPi);
            const double beta = rng.uniform(0.0, kPi);
            const auto fast = run_qaoa(table, {{gamma}, {beta}});
            const auto reference = dense_reference_layer(m, gamma, beta);
            for (std::size_t i = 0; i < fast.amps.size(); ++i) {
                REQUIRE(std::abs(fast.amps[i] - reference.amps[i]) < 1e-8);
            }
        }
    }
}

TEST_CASE("expectation examples") {
    const auto inst = toy_instance();
    const auto table = CostTable::build(build_ising(inst));
    // Mean of the spectrum {0:2, 1:4, 2:2} over 8 states.
    CHECK(expectation(prepare_plus(3), table) == doctest::Approx(1.0));

    StateVector cover;
    cover.n = 3;
    cover.amps.assign(8, 0.0);
    cover.amps[0b011] = 1.0;
    CHECK(expectation(cover, table) == doctest::Approx(0.0));

    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = run_qaoa(table, {{rng.uniform(0.0, 2.0 * kPi)},
                                        {rng.uniform(0.0, kPi)}});
        const double e = expectation(s, table);
        CHECK(e >= -1e-12);
        CHECK(e <= 2.0 + 1e-12);
    }
}

TEST_CASE("success probability examples") {
    const auto sols = solution_masks(toy_instance());
    CHECK(success_probability(prepare_plus(3), {0b100}) == doctest::Approx(0.125));
    CHECK(success_probability(prepare_plus(3), sols) == doctest::Approx(0.25));

    StateVector basis;
    basis.n = 3;
    basis.amps.assign(8, 0.0);
    basis.amps[0b100] = 1.0;
    CHECK(success_probability(basis, {0b100}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(success_probability(basis, {}), ValidationError);
}

TEST_CASE("cost histogram examples") {
    const auto inst = toy_instance();
    const auto table = CostTable::build(build_ising(inst));
    const auto hist = cost_histogram(prepare_plus(3), table);
    REQUIRE(hist.size() == 3);
    CHECK(hist.at(0) == doctest::Approx(0.25));
    CHECK(hist.at(1) == doctest::Approx(0.5));
    CHECK(hist.at(2) == doctest::Approx(0.25));

    StateVector basis;
    basis.n = 3;
    basis.amps.assign(8, 0.0);
    basis.amps[0b100] = 1.0;
    const auto solution_hist = cost_histogram(basis, table);
    CHECK(solution_hist.at(0) == doctest::Approx(1.0));

    double total = 0.0;
    for (const auto& [e, prob] : hist) {
        total += prob;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("sampling is deterministic and matches the distribution") {
    StateVector basis;
    basis.n = 2;
    basis.amps.assign(4, 0.0);
    basis.amps[0b10] = 1.0;
    for (std::uint64_t draw : sample(basis, 50, 3)) {
        CHECK(draw == 0b10);
    }

    const auto a = sample(prepare_plus(4), 200, 11);
    const auto b = sample(prepare_plus(4), 200, 11);
    CHECK(a == b);
    const auto c = sample(prepare_plus(4), 200, 12);
    CHECK(a != c);

    // Single qubit Bernoulli check within 5 sigma.
    const auto draws = sample(prepare_plus(1), 100000, 17);
    double ones = 0.0;
    for (std::uint64_t d : draws) {
        ones += static_cast<double>(d);
    }
    const double freq = ones / 100000.0;
    CHECK(std::abs(freq - 0.5) < 5.0 * std::sqrt(0.25 / 100000.0));
}

TEST_CASE("objective has even symmetry in the parameters") {
    const auto inst = generate_planted(12, 8, 3, 21);
    const auto table = CostTable::build(build_ising(inst));
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_below(3));
        VariationalParams params, negated;
        for (int k = 0; k < p; ++k) {
            const double g = rng.uniform(0.0, 2.0 * kPi);
            const double b = rng.uniform(0.0, kPi);
            params.gammas.push_back(g);
            params.betas.push_back(b);
            negated.gammas.push_back(-g);
            negated.betas.push_back(-b);
        }
        const double e = expectation(run_qaoa(table, params), table);
        const double e_neg = expectation(run_qaoa(table, negated), table);
        CHECK(std::abs(e - e_neg) < 1e-9);
    }
}

TEST_CASE("shifting any single beta by pi changes nothing observable") {
    const auto inst = generate_planted(12, 8, 3, 22);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    Rng rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_below(3));
        VariationalParams params;
        for (int k = 0; k < p; ++k) {
            params.gammas.push_back(rng.uniform(0.0, 2.0 * kPi));
            params.betas.push_back(rng.uniform(0.0, kPi));
        }
        auto shifted = params;
        shifted.betas[rng.next_below(static_cast<std::uint64_t>(p))] += kPi;

        const auto s = run_qaoa(table, params);
        const auto s_shifted = run_qaoa(table, shifted);
        CHECK(std::abs(expectation(s, table) - expectation(s_shifted, table)) < 1e-9);
        CHECK(std::abs(success_probability(s, sols) - success_probability(s_shifted, sols)) <
              1e-9);
    }
}

TEST_CASE("low expectation guarantees ground-state weight") {
    const auto inst = generate_planted(12, 8, 3, 23);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    // A state with <H_C> < 1 must overlap the zero-energy set, since every
    // excited level is at least 1.
    const auto s = run_qaoa(table, {{0.4}, {0.35}});
    const double e = expectation(s, table);
    const double f = success_probability(s, sols);
    if (e < 1.0) {
        CHECK(f > 0.0);
        CHECK(f >= 1.0 - e - 1e-9);
    }
}

TEST_CASE("noiseless trajectories reproduce the exact state") {
    const auto inst = generate_planted(10, 6, 3, 13);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const VariationalParams params{{0.5, 0.3}, {0.4, 0.2}};
    const double exact = success_probability(run_qaoa(table, params), sols);

    NoiseConfig cfg;
    cfg.eta = 0.0;
    cfg.trajectories = 25;
    cfg.seed = 77;
    const auto result = run_noisy(table, params, cfg, sols);
    CHECK(result.mean == exact);
    CHECK(result.std_error == 0.0);
}

namespace {

// Coarse p = 1 grid argmax of the success probability; good enough to stand
// in for an optimized layer in the noise checks.
VariationalParams grid_best_f(const CostTable& table, const std::vector<std::uint64_t>& sols) {
    VariationalParams best{{0.0}, {0.0}};
    double best_f = -1.0;
    for (int ig = 0; ig < 24; ++ig) {
        for (int ib = 0; ib < 24; ++ib) {
            const VariationalParams params{{kPi * ig / 23.0}, {kPi * ib / 23.0}};
            const double f = success_probability(run_qaoa(table, params), sols);
            if (f > best_f) {
                best_f = f;
                best = params;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("full-strength noise wrecks the optimized state") {
    const auto inst = generate_planted(8, 4, 2, 19);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const VariationalParams params = grid_best_f(table, sols);
    const double noiseless = success_probability(run_qaoa(table, params), sols);
    REQUIRE(noiseless > 2.0 * std::pow(2.0, -4.0));

    NoiseConfig cfg;
    cfg.eta = 1.0;
    cfg.trajectories = 600;
    cfg.seed = 5;
    const auto result = run_noisy(table, params, cfg, sols);
    CHECK(result.mean < 0.5 * noiseless);
    CHECK(result.mean < 0.25);
    CHECK(result.std_error > 0.0);
    CHECK(result.std_error < 0.05);
}

TEST_CASE("trajectory averages do not depend on the thread count") {
    const auto inst = generate_planted(8, 4, 2, 21);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const VariationalParams params{{0.5, 0.2}, {0.4, 0.3}};
    NoiseConfig cfg;
    cfg.eta = 0.05;
    cfg.trajectories = 300;
    cfg.seed = 99;
    const auto sequential = run_noisy(table, params, cfg, sols);
    cfg.threads = 4;
    const auto threaded = run_noisy(table, params, cfg, sols);
    CHECK(sequential.mean == threaded.mean);
    CHECK(sequential.std_error == threaded.std_error);
}

TEST_CASE("noise placement flag reduces the round count") {
    const auto inst = generate_planted(8, 4, 2, 20);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const VariationalParams params = grid_best_f(table, sols);
    const double noiseless = success_probability(run_qaoa(table, params), sols);
    REQUIRE(noiseless > 2.0 * std::pow(2.0, -4.0));

    NoiseConfig cfg;
    cfg.eta = 0.08;
    cfg.trajectories = 800;
    cfg.seed = 31;
    const auto both = run_noisy(table, params, cfg, sols);
    cfg.placement = NoisePlacement::kAfterEachLayer;
    const auto layer_only = run_noisy(table, params, cfg, sols);
    // Half the rounds keeps more of the noiseless success probability.
    CHECK(layer_only.mean > both.mean);
    CHECK(both.mean < noiseless);
}

TEST_CASE("annealing limits") {
    const auto inst = generate_planted(6, 3, 2, 2);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));

    AnnealConfig snap;
    snap.total_time = 1e-3;
    snap.dt = 0.05;
    snap.convergence_check = false;
    const auto fast = anneal(table, sols, snap);
    CHECK(fast.steps == 1);
    CHECK(fast.f_gs == doctest::Approx(std::pow(2.0, -3.0)).epsilon(1e-3));

    AnnealConfig slow;
    slow.total_time = 100.0;
    slow.dt = 0.01;
    const auto adiabatic = anneal(table, sols, slow);
    CHECK(adiabatic.f_gs > 0.9);
    CHECK(adiabatic.converged);
    CHECK(std::abs(adiabatic.f_gs_refined - adiabatic.f_gs) < 1e-3);

    CHECK_THROWS_AS(anneal(table, sols, AnnealConfig{-1.0, 0.05, false}), ValidationError);
    CHECK_THROWS_AS(anneal(table, sols, AnnealConfig{1.0, 0.0, false}), ValidationError);
}

TEST_CASE("annealing covers the whole solution set") {
    // Two covers: the anneal target sums the overlap over both.
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    AnnealConfig cfg;
    cfg.total_time = 60.0;
    cfg.dt = 0.02;
    cfg.convergence_check = false;
    const auto result = anneal(table, sols, cfg);
    double per_state = 0.0;
    for (std::uint64_t sol : sols) {
        AnnealConfig single = cfg;
        per_state += anneal(table, {sol}, single).f_gs;
    }
    CHECK(result.f_gs == doctest::Approx(per_state).epsilon(1e-9));
    CHECK(result.f_gs > 0.5);
}

TEST_CASE("qubit cap is enforced and adjustable") {
    const int original = max_qubits();
    set_max_qubits(4);
    CHECK_THROWS_AS(prepare_plus(5), LimitError);
    const auto inst = generate_planted(10, 6, 3, 4);
    CHECK_THROWS_AS(CostTable::build(build_ising(inst)), LimitError);
    set_max_qubits(original);
    CHECK(prepare_plus(5).n == 5);
}
