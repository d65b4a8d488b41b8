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

#ifndef XCQ_OPTIMIZER_HPP
#define XCQ_OPTIMIZER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xcq/simulator.hpp"

namespace xcq {

// p = 1 objective and success probability on a resolution x resolution grid
// over [0, pi] x [0, pi], endpoints included. Values are stored row-major
// with gamma as the outer index.
struct LandscapeGrid {
    int resolution = 0;
    std::vector<double> gamma_axis;
    std::vector<double> beta_axis;
    std::vector<double> e_values;
    std::vector<double> f_values;

    double e_at(int ig, int ib) const {
        return e_values[static_cast<std::size_t>(ig) * static_cast<std::size_t>(resolution) +
                        static_cast<std::size_t>(ib)];
    }
    double f_at(int ig, int ib) const {
        return f_values[static_cast<std::size_t>(ig) * static_cast<std::size_t>(resolution) +
                        static_cast<std::size_t>(ib)];
    }
};

struct TraceEntry {
    int p = 0;
    std::vector<double> gammas;
    std::vector<double> betas;
    double e = 0.0;
    double f = 0.0;
    std::uint64_t evaluations = 0;
    double seconds = 0.0;
};

using OptimizationTrace = std::vector<TraceEntry>;

LandscapeGrid landscape_scan(const CostTable& table,
                             const std::vector<std::uint64_t>& solutions, int resolution,
                             int threads = 1);

// "gamma,beta,E,F" header plus one row per cell.
std::string landscape_to_csv(const LandscapeGrid& grid);

struct MultistartConfig {
    int n_starts = 100;
    std::uint64_t seed = 0;
    int threads = 1;
    int max_iterations = 100;  // per descent
};

// n_starts uniform starts in [0, pi]^2p, each refined by a quasi-Newton
// descent projected onto the box, with central-difference gradients
// (step 1e-6) and 1e-6 function/step tolerances. Ties in the final value
// resolve to the lexicographically smallest parameter vector.
TraceEntry multistart_optimize(const CostTable& table,
                               const std::vector<std::uint64_t>& solutions, int p,
                               const MultistartConfig& cfg);

// Nelder-Mead (reflection 1, expansion 2, contraction 0.5, shrink 0.5) from
// the given start, simplex seeded by +0.05 offsets per coordinate, hard
// capped at 60p evaluations and 60p iterations.
TraceEntry nelder_mead(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                       const VariationalParams& start);

// Level p optimum -> level p+1 start by per-family linear interpolation.
VariationalParams interp_start(const VariationalParams& prev);

// Warm-started ladder: from the given p = 1 entry, interpolate and re-optimize
// through p_max, recording every level.
OptimizationTrace interp_pipeline(const CostTable& table,
                                  const std::vector<std::uint64_t>& solutions, int p_max,
                                  const TraceEntry& base);

// JSON array of {p, gammas, betas, E, F, evals, seconds}.
std::string trace_to_json(const OptimizationTrace& trace);
OptimizationTrace trace_from_json(std::string_view json_text);

}  // namespace xcq

#endif
