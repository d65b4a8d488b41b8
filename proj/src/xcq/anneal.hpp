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

#ifndef XCQ_ANNEAL_HPP
#define XCQ_ANNEAL_HPP

#include <cstdint>
#include <vector>

#include "xcq/simulator.hpp"

namespace xcq {

struct AnnealConfig {
    double total_time = 10.0;
    double dt = 0.05;
    // Re-run at dt/2 and flag the result unconverged when the ground-state
    // probability moves by more than 1e-3.
    bool convergence_check = true;
};

struct AnnealResult {
    double f_gs = 0.0;          // at the configured dt
    double f_gs_refined = 0.0;  // at dt/2 (equals f_gs when the check is off)
    bool checked = false;
    bool converged = true;
    int steps = 0;
};

// Linear-schedule annealing H(t) = (t/T) H_C + (1 - t/T) (-H_M), integrated
// by Strang splitting with the schedule frozen at each step midpoint. Starts
// from |+>^n, the ground state of -H_M, and returns the overlap-squared with
// the solution set.
AnnealResult anneal(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                    const AnnealConfig& cfg);

}  // namespace xcq

#endif
