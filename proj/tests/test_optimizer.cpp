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
#include <numbers>
#include <sstream>
#include <vector>

#include "xcq/errors.hpp"
#include "xcq/instance.hpp"
#include "xcq/ising.hpp"
#include "xcq/optimizer.hpp"
#include "xcq/rng.hpp"
#include "xcq/simulator.hpp"

using namespace xcq;

namespace {

constexpr double kPi = std::numbers::pi;

ExactCoverInstance toy_instance() {
    return make_instance(2, {{0}, {1}, {0, 1}});
}

double objective(const CostTable& table, const std::vector<double>& gammas,
                 const std::vector<double>& betas) {
    return expectation(run_qaoa(table, {gammas, betas}), table);
}

// Projected finite-difference gradient: components pushing outside [0, pi]
// at an active bound do not count against stationarity.
double projected_gradient_norm(const CostTable& table, const TraceEntry& entry) {
    std::vector<double> x(entry.gammas);
    x.insert(x.end(), entry.betas.begin(), entry.betas.end());
    const int p = entry.p;
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto probe = x;
        probe[i] = x[i] + 1e-6;
        const double hi = objective(table, {probe.begin(), probe.begin() + p},
                                    {probe.begin() + p, probe.end()});
        probe[i] = x[i] - 1e-6;
        const double lo = objective(table, {probe.begin(), probe.begin() + p},
                                    {probe.begin() + p, probe.end()});
        double g = (hi - lo) / 2e-6;
        if ((x[i] <= 1e-12 && g > 0.0) || (x[i] >= kPi - 1e-12 && g < 0.0)) {
            g = 0.0;
        }
        norm_sq += g * g;
    }
    return std::sqrt(norm_sq);
}

}  // namespace

TEST_CASE("landscape identity cell and bounds") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const auto grid = landscape_scan(table, sols, 17);

    CHECK(grid.gamma_axis.front() == 0.0);
    CHECK(grid.gamma_axis.back() == doctest::Approx(kPi));
    // (0, 0) is the identity circuit on |+>^n.
    CHECK(grid.e_at(0, 0) == doctest::Approx(1.0));
    CHECK(grid.f_at(0, 0) == doctest::Approx(2.0 / 8.0));
    for (double e : grid.e_values) {
        CHECK(e >= -1e-12);
        CHECK(e <= 2.0 + 1e-12);
    }
    CHECK_THROWS_AS(landscape_scan(table, sols, 1), ValidationError);
}

TEST_CASE("landscape minima in E and maxima in F sit close together") {
    const auto inst = generate_planted(14, 8, 4, 63);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const auto grid = landscape_scan(table, sols, 64);

    int best_e = 0, best_f = 0;
    for (int cell = 1; cell < 64 * 64; ++cell) {
        if (grid.e_values[static_cast<std::size_t>(cell)] <
            grid.e_values[static_cast<std::size_t>(best_e)]) {
            best_e = cell;
        }
        if (grid.f_values[static_cast<std::size_t>(cell)] >
            grid.f_values[static_cast<std::size_t>(best_f)]) {
            best_f = cell;
        }
    }
    const double dg = grid.gamma_axis[static_cast<std::size_t>(best_e / 64)] -
                      grid.gamma_axis[static_cast<std::size_t>(best_f / 64)];
    const double db = grid.beta_axis[static_cast<std::size_t>(best_e % 64)] -
                      grid.beta_axis[static_cast<std::size_t>(best_f % 64)];
    CHECK(std::sqrt(dg * dg + db * db) < 0.5);
}

TEST_CASE("landscape scan is independent of the thread count") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const auto sequential = landscape_scan(table, sols, 9, 1);
    const auto threaded = landscape_scan(table, sols, 9, 4);
    CHECK(sequential.e_values == threaded.e_values);
    CHECK(sequential.f_values == threaded.f_values);
}

TEST_CASE("landscape CSV shape") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const auto csv = landscape_to_csv(landscape_scan(table, sols, 4));
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "gamma,beta,E,F");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
    }
    CHECK(rows == 16);
    CHECK(csv.substr(csv.find('\n') + 1, 4) == "0,0,");
}

TEST_CASE("multistart lands on the fine-grid minimum") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));

    const auto grid = landscape_scan(table, sols, 256);
    const double grid_min = *std::min_element(grid.e_values.begin(), grid.e_values.end());

    MultistartConfig cfg;
    cfg.n_starts = 100;
    cfg.seed = 17;
    const auto entry = multistart_optimize(table, sols, 1, cfg);
    CHECK(entry.e <= grid_min + 1e-4);
    CHECK(entry.evaluations > 0);
}

TEST_CASE("multistart never loses to its own start points") {
    const auto inst = generate_planted(12, 7, 3, 51);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 12;
    cfg.seed = 4;
    const int p = 2;
    const auto entry = multistart_optimize(table, sols, p, cfg);

    // Re-draw the same start points through the documented seeding rule.
    double min_initial = 1e300;
    for (int k = 0; k < cfg.n_starts; ++k) {
        Rng rng(cfg.seed ^ static_cast<std::uint64_t>(k));
        std::vector<double> x(2 * p);
        for (double& v : x) {
            v = rng.uniform(0.0, kPi);
        }
        min_initial = std::min(min_initial,
                               objective(table, {x.begin(), x.begin() + p},
                                         {x.begin() + p, x.end()}));
    }
    CHECK(entry.e <= min_initial + 1e-12);
}

TEST_CASE("multistart is deterministic and thread-count independent") {
    const auto inst = generate_planted(10, 6, 3, 52);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 10;
    cfg.seed = 9;
    const auto a = multistart_optimize(table, sols, 1, cfg);
    const auto b = multistart_optimize(table, sols, 1, cfg);
    cfg.threads = 4;
    const auto c = multistart_optimize(table, sols, 1, cfg);
    CHECK(a.gammas == b.gammas);
    CHECK(a.betas == b.betas);
    CHECK(a.e == b.e);
    CHECK(a.gammas == c.gammas);
    CHECK(a.e == c.e);
    CHECK(a.evaluations == c.evaluations);
}

TEST_CASE("multistart optimum is first-order stationary") {
    for (int p = 1; p <= 2; ++p) {
        const auto inst = generate_planted(10, 6, 3, 53);
        const auto sols = solution_masks(inst);
        const auto table = CostTable::build(build_ising(inst));
        MultistartConfig cfg;
        cfg.n_starts = 40;
        cfg.seed = 6;
        const auto entry = multistart_optimize(table, sols, p, cfg);
        CHECK(projected_gradient_norm(table, entry) < 1e-3);
    }
}

TEST_CASE("reported E values are fresh evaluations") {
    const auto inst = generate_planted(10, 6, 3, 54);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 8;
    cfg.seed = 2;
    const auto base = multistart_optimize(table, sols, 1, cfg);
    const auto trace = interp_pipeline(table, sols, 4, base);
    for (const auto& entry : trace) {
        const double fresh = objective(table, entry.gammas, entry.betas);
        CHECK(std::abs(entry.e - fresh) < 1e-10);
        const double fresh_f =
            success_probability(run_qaoa(table, {entry.gammas, entry.betas}), sols);
        CHECK(std::abs(entry.f - fresh_f) < 1e-10);
    }
}

TEST_CASE("nelder_mead stays at a strict local minimum") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 60;
    cfg.seed = 14;
    const auto optimum = multistart_optimize(table, sols, 1, cfg);
    const auto refined = nelder_mead(table, sols, {optimum.gammas, optimum.betas});
    CHECK(refined.e <= optimum.e + 1e-9);
    CHECK(std::abs(refined.e - optimum.e) < 1e-4);
}

TEST_CASE("nelder_mead improves on its start and respects the budget") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    const VariationalParams start{{kPi / 2.0}, {kPi / 2.0}};
    const double initial = objective(table, start.gammas, start.betas);
    const auto entry = nelder_mead(table, sols, start);
    CHECK(entry.e <= initial + 1e-12);
    CHECK(entry.evaluations <= 60);

    const auto inst8 = generate_planted(12, 8, 4, 55);
    const auto sols8 = solution_masks(inst8);
    const auto table8 = CostTable::build(build_ising(inst8));
    VariationalParams wide{{0.2, 0.3, 0.4}, {0.5, 0.4, 0.3}};
    const auto entry3 = nelder_mead(table8, sols8, wide);
    CHECK(entry3.evaluations <= 180);
    CHECK(entry3.p == 3);
}

TEST_CASE("interp_start follows the interpolation rule") {
    const auto doubled = interp_start({{0.7}, {0.3}});
    REQUIRE(doubled.p() == 2);
    CHECK(doubled.gammas[0] == doctest::Approx(0.7));
    CHECK(doubled.gammas[1] == doctest::Approx(0.7));
    CHECK(doubled.betas[0] == doctest::Approx(0.3));
    CHECK(doubled.betas[1] == doctest::Approx(0.3));

    const auto zeros = interp_start({{0.0, 0.0}, {0.0, 0.0}});
    for (double v : zeros.gammas) {
        CHECK(v == 0.0);
    }
    for (double v : zeros.betas) {
        CHECK(v == 0.0);
    }

    // Hand-expanded p = 2 case.
    const auto next = interp_start({{0.2, 0.6}, {0.5, 0.1}});
    REQUIRE(next.p() == 3);
    CHECK(next.gammas[0] == doctest::Approx(0.2));
    CHECK(next.gammas[1] == doctest::Approx(0.5 * 0.2 + 0.5 * 0.6));
    CHECK(next.gammas[2] == doctest::Approx(0.6));
    CHECK(next.betas[1] == doctest::Approx(0.5 * 0.5 + 0.5 * 0.1));
}

TEST_CASE("interp_start keeps monotone sequences monotone") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_below(6));
        std::vector<double> inc(static_cast<std::size_t>(p));
        double acc = 0.0;
        for (double& v : inc) {
            acc += rng.uniform(0.0, 0.4);
            v = acc;
        }
        const auto out = interp_start({inc, inc});
        REQUIRE(out.p() == p + 1);
        for (int i = 1; i <= p; ++i) {
            CHECK(out.gammas[static_cast<std::size_t>(i)] >=
                  out.gammas[static_cast<std::size_t>(i - 1)] - 1e-12);
        }
    }
}

TEST_CASE("interp_start treats the two families symmetrically") {
    const VariationalParams params{{0.2, 0.7, 0.9}, {0.6, 0.1, 0.4}};
    const auto straight = interp_start(params);
    const auto swapped = interp_start({params.betas, params.gammas});
    CHECK(straight.gammas == swapped.betas);
    CHECK(straight.betas == swapped.gammas);
}

TEST_CASE("pipeline with p_max 1 echoes the base entry") {
    const auto inst = toy_instance();
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 10;
    cfg.seed = 3;
    const auto base = multistart_optimize(table, sols, 1, cfg);
    const auto trace = interp_pipeline(table, sols, 1, base);
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].e == base.e);
    CHECK(trace[0].gammas == base.gammas);
}

TEST_CASE("pipeline levels keep lowering the objective on a planted instance") {
    const auto inst = generate_planted(14, 8, 4, 56);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 30;
    cfg.seed = 12;
    const auto base = multistart_optimize(table, sols, 1, cfg);
    const auto trace = interp_pipeline(table, sols, 3, base);
    REQUIRE(trace.size() == 3);
    CHECK(trace[1].e < trace[0].e);
    CHECK(trace[2].e < trace[1].e);
    CHECK(trace[2].f > trace[0].f);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(trace[i].p == static_cast<int>(i) + 1);
    }
}

TEST_CASE("denser overlap graphs are harder at fixed depth") {
    // Two planted families with the same qubit count: wide-spread routes
    // over many flights versus heavily overlapping routes over few.
    double sparse_valency = 0.0, dense_valency = 0.0;
    double sparse_f = 0.0, dense_f = 0.0;
    for (std::uint64_t k = 0; k < 3; ++k) {
        const auto sparse = generate_planted(60, 8, 6, 900 + k);
        const auto dense = generate_planted(12, 8, 2, 900 + k);
        sparse_valency += valency_stats(to_graph(sparse)).mean;
        dense_valency += valency_stats(to_graph(dense)).mean;
        for (const auto* inst : {&sparse, &dense}) {
            const auto sols = solution_masks(*inst);
            const auto table = CostTable::build(build_ising(*inst));
            MultistartConfig cfg;
            cfg.n_starts = 40;
            cfg.seed = 5;
            const auto base = multistart_optimize(table, sols, 1, cfg);
            const double f = interp_pipeline(table, sols, 3, base).back().f;
            (inst == &sparse ? sparse_f : dense_f) += f;
        }
    }
    CHECK(dense_valency > 1.5 * sparse_valency);
    CHECK(sparse_f > dense_f);
}

TEST_CASE("optimized shallow circuits beat the uniform baseline") {
    const auto inst = generate_planted(10, 6, 3, 77);
    const auto sols = solution_masks(inst);
    const auto table = CostTable::build(build_ising(inst));
    MultistartConfig cfg;
    cfg.n_starts = 30;
    cfg.seed = 8;
    const auto base = multistart_optimize(table, sols, 1, cfg);
    const auto trace = interp_pipeline(table, sols, 5, base);
    CHECK(trace.back().f > std::pow(2.0, -6.0));
}

TEST_CASE("trace JSON round trip") {
    OptimizationTrace trace;
    trace.push_back({1, {0.25}, {0.5}, 1.75, 0.125, 42, 0.001});
    trace.push_back({2, {0.25, 0.3}, {0.5, 0.4}, 1.25, 0.25, 120, 0.002});
    const auto text = trace_to_json(trace);
    const auto parsed = trace_from_json(text);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].gammas == trace[0].gammas);
    CHECK(parsed[1].betas == trace[1].betas);
    CHECK(parsed[1].e == trace[1].e);
    CHECK(parsed[1].evaluations == 120);

    CHECK_THROWS_AS(trace_from_json("{"), ParseError);
    CHECK_THROWS_AS(trace_from_json("{}"), ParseError);
    CHECK_THROWS_AS(trace_from_json(R"([{"p": 2, "gammas": [0.1], "betas": [0.2]}])"),
                    ParseError);
}
