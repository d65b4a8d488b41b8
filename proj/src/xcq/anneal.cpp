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

#include "xcq/anneal.hpp"

#include <cmath>

#include "xcq/errors.hpp"

namespace xcq {

namespace {

double integrate(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                 double total_time, double dt, int* steps_out) {
    const int steps = std::max(1, static_cast<int>(std::llround(total_time / dt)));
    const double dt_eff = total_time / steps;

    StateVector s = prepare_plus(table.n());
    for (int k = 0; k < steps; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * dt_eff;
        const double a = mid / total_time;        // cost weight
        const double b = 1.0 - a;                 // mixer weight
        apply_cost_phase(s, 0.5 * a * dt_eff, table);
        // exp(-i dt b (-H_M)) is a mixer rotation with negated angle.
        apply_mixer(s, -b * dt_eff);
        apply_cost_phase(s, 0.5 * a * dt_eff, table);
    }
    if (steps_out != nullptr) {
        *steps_out = steps;
    }
    return success_probability(s, solutions);
}

}  // namespace

AnnealResult anneal(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                    const AnnealConfig& cfg) {
    if (cfg.total_time <= 0.0) {
        throw ValidationError("anneal: total_time must be positive");
    }
    if (cfg.dt <= 0.0) {
        throw ValidationError("anneal: dt must be positive");
    }
    AnnealResult result;
    result.f_gs = integrate(table, solutions, cfg.total_time, cfg.dt, &result.steps);
    result.f_gs_refined = result.f_gs;
    if (cfg.convergence_check) {
        result.checked = true;
        result.f_gs_refined = integrate(table, solutions, cfg.total_time, cfg.dt / 2.0, nullptr);
        result.converged = std::abs(result.f_gs_refined - result.f_gs) <= 1e-3;
    }
    return result;
}

}  // namespace xcq
