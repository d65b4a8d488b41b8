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

#ifndef XCQ_NOISE_HPP
#define XCQ_NOISE_HPP

#include <cstdint>
#include <vector>

#include "xcq/simulator.hpp"

namespace xcq {

// Where the depolarizing rounds sit in the circuit. The default inserts a
// round after every cost phase and after every mixer (2p rounds); the
// alternative fires once per full layer (p rounds).
enum class NoisePlacement {
    kAfterEachHalfLayer,
    kAfterEachLayer,
};

struct NoiseConfig {
    double eta = 0.01;  // per-qubit error probability per round
    std::uint64_t trajectories = 2000;
    std::uint64_t seed = 0;
    NoisePlacement placement = NoisePlacement::kAfterEachHalfLayer;
    int threads = 1;
};

struct NoisyResult {
    double mean = 0.0;
    double std_error = 0.0;
};

// Trajectory-sampled success probability: each qubit independently suffers
// X, Y or Z with probability eta/3 each per noise round. Trajectory t draws
// from the stream seeded with seed ^ t, so results do not depend on the
// thread count, and eta = 0 reproduces the noiseless value exactly.
NoisyResult run_noisy(const CostTable& table, const VariationalParams& params,
                      const NoiseConfig& cfg, const std::vector<std::uint64_t>& solutions);

}  // namespace xcq

#endif
