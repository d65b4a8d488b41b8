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

#ifndef XCQ_INSTANCE_HPP
#define XCQ_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xcq {

// Routes over flights. Selecting a subset of routes so that every flight is
// covered exactly once is the decision problem everything downstream works
// on. Route order is significant: route r is qubit r, and bit r of a basis
// state index is the selection variable of route r (route 0 = least
// significant bit).
struct ExactCoverInstance {
    int n_flights = 0;
    std::vector<std::vector<int>> routes;            // sorted flight indices
    std::vector<std::vector<int>> known_solutions;   // sorted route indices

    int n_routes() const { return static_cast<int>(routes.size()); }
};

// Route-overlap graph: one vertex per route, an edge where two routes share
// at least one flight.
struct ProblemGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // (r, r') with r < r', sorted
};

struct ValencyStats {
    double mean = 0.0;
    double std_dev = 0.0;  // population standard deviation over vertices
};

// Routes may reference at most this many qubits; basis states are stored in
// a 64-bit index.
inline constexpr int kMaxRoutes = 62;

// Largest route count solve_exact accepts by default.
inline constexpr int kDefaultOracleLimit = 30;

// Validates the invariants above; throws ValidationError with the offending
// location on failure.
ExactCoverInstance make_instance(int n_flights,
                                 std::vector<std::vector<int>> routes,
                                 std::vector<std::vector<int>> known_solutions = {});

// Instance file format:
//   {"n_flights": int, "routes": [[int,...],...],
//    "known_solutions": [[int,...],...]}   (known_solutions optional)
ExactCoverInstance parse_instance(std::string_view json_text);
std::string instance_to_json(const ExactCoverInstance& inst);

// All exact covers, as sorted route-index sets in lexicographic order.
// Exhaustive enumeration up to 20 routes, dancing-links search above.
std::vector<std::vector<int>> solve_exact(const ExactCoverInstance& inst,
                                          int oracle_limit = kDefaultOracleLimit);

// Partitions the flights into planted_size disjoint routes (the unique
// solution) and fills up with random decoy routes; decoy sets are resampled
// until the planted cover is the only one. Deterministic in seed.
ExactCoverInstance generate_planted(int n_flights, int n_routes, int planted_size,
                                    std::uint64_t seed);

ProblemGraph to_graph(const ExactCoverInstance& inst);
ValencyStats valency_stats(const ProblemGraph& g);

// Basis-state index of a route set.
std::uint64_t routes_to_mask(const std::vector<int>& route_indices);
std::vector<int> mask_to_routes(std::uint64_t mask);

// Solution set as basis-state indices: the oracle result when n is within
// oracle_limit, the recorded known_solutions otherwise. Throws LimitError
// when neither is available.
std::vector<std::uint64_t> solution_masks(const ExactCoverInstance& inst,
                                          int oracle_limit = kDefaultOracleLimit);

namespace detail {
// Both search strategies, exposed for cross-checking.
std::vector<std::vector<int>> solve_exhaustive(const ExactCoverInstance& inst);
std::vector<std::vector<int>> solve_dancing_links(const ExactCoverInstance& inst);
}  // namespace detail

}  // namespace xcq

#endif
