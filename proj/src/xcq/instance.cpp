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

#include "xcq/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "xcq/errors.hpp"
#include "xcq/rng.hpp"

namespace xcq {

namespace {

void validate_route_list(int n_flights, const std::vector<std::vector<int>>& routes) {
    if (n_flights <= 0) {
        throw ValidationError("n_flights must be positive");
    }
    if (routes.empty()) {
        throw ValidationError("instance has no routes");
    }
    if (static_cast<int>(routes.size()) > kMaxRoutes) {
        throw ValidationError("instance has " + std::to_string(routes.size()) +
                              " routes; at most " + std::to_string(kMaxRoutes) +
                              " are supported");
    }
    for (std::size_t r = 0; r < routes.size(); ++r) {
        const auto& route = routes[r];
        if (route.empty()) {
            throw ValidationError("routes[" + std::to_string(r) + "]: empty route");
        }
        for (std::size_t k = 0; k < route.size(); ++k) {
            const int f = route[k];
            if (f < 0 || f >= n_flights) {
                throw ValidationError("routes[" + std::to_string(r) + "][" +
                                      std::to_string(k) + "]: flight index " +
                                      std::to_string(f) + " out of range [0, " +
                                      std::to_string(n_flights) + ")");
            }
        }
        for (std::size_t k = 1; k < route.size(); ++k) {
            if (route[k] == route[k - 1]) {
                throw ValidationError("routes[" + std::to_string(r) +
                                      "]: duplicate flight " + std::to_string(route[k]));
            }
        }
    }
}

// Per-flight bitmask of the routes covering it.
std::vector<std::uint64_t> flight_route_masks(const ExactCoverInstance& inst) {
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(inst.n_flights), 0);
    for (int r = 0; r < inst.n_routes(); ++r) {
        for (int f : inst.routes[static_cast<std::size_t>(r)]) {
            masks[static_cast<std::size_t>(f)] |= 1ull << r;
        }
    }
    return masks;
}

bool is_exact_cover(const ExactCoverInstance& inst, std::uint64_t mask,
                    const std::vector<std::uint64_t>& fmasks) {
    for (int f = 0; f < inst.n_flights; ++f) {
        if (std::popcount(mask & fmasks[static_cast<std::size_t>(f)]) != 1) {
            return false;
        }
    }
    return true;
}

}  // namespace

ExactCoverInstance make_instance(int n_flights, std::vector<std::vector<int>> routes,
                                 std::vector<std::vector<int>> known_solutions) {
    for (auto& route : routes) {
        std::sort(route.begin(), route.end());
    }
    validate_route_list(n_flights, routes);

    ExactCoverInstance inst;
    inst.n_flights = n_flights;
    inst.routes = std::move(routes);

    const auto fmasks = flight_route_masks(inst);
    for (std::size_t s = 0; s < known_solutions.size(); ++s) {
        auto& sol = known_solutions[s];
        std::sort(sol.begin(), sol.end());
        for (int r : sol) {
            if (r < 0 || r >= inst.n_routes()) {
                throw ValidationError("known_solutions[" + std::to_string(s) +
                                      "]: route index " + std::to_string(r) +
                                      " out of range [0, " +
                                      std::to_string(inst.n_routes()) + ")");
            }
        }
        if (std::adjacent_find(sol.begin(), sol.end()) != sol.end()) {
            throw ValidationError("known_solutions[" + std::to_string(s) +
                                  "]: duplicate route index");
        }
        if (!is_exact_cover(inst, routes_to_mask(sol), fmasks)) {
            throw ValidationError("known_solutions[" + std::to_string(s) +
                                  "]: not an exact cover");
        }
    }
    inst.known_solutions = std::move(known_solutions);
    return inst;
}

ExactCoverInstance parse_instance(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("instance JSON: top level must be an object");
    }
    if (!doc.contains("n_flights") || !doc["n_flights"].is_number_integer()) {
        throw ParseError("instance JSON: missing integer field \"n_flights\"");
    }
    if (!doc.contains("routes") || !doc["routes"].is_array()) {
        throw ParseError("instance JSON: missing array field \"routes\"");
    }

    auto read_index_lists = [](const nlohmann::json& arr, const char* name) {
        std::vector<std::vector<int>> lists;
        lists.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& row = arr[i];
            if (!row.is_array()) {
                throw ParseError(std::string("instance JSON: ") + name + "[" +
                                 std::to_string(i) + "] must be an array");
            }
            std::vector<int> ids;
            ids.reserve(row.size());
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (!row[k].is_number_integer()) {
                    throw ParseError(std::string("instance JSON: ") + name + "[" +
                                     std::to_string(i) + "][" + std::to_string(k) +
                                     "] must be an integer");
                }
                ids.push_back(row[k].get<int>());
            }
            lists.push_back(std::move(ids));
        }
        return lists;
    };

    auto routes = read_index_lists(doc["routes"], "routes");
    std::vector<std::vector<int>> known;
    if (doc.contains("known_solutions")) {
        if (!doc["known_solutions"].is_array()) {
            throw ParseError("instance JSON: \"known_solutions\" must be an array");
        }
        known = read_index_lists(doc["known_solutions"], "known_solutions");
    }
    return make_instance(doc["n_flights"].get<int>(), std::move(routes), std::move(known));
}

std::string instance_to_json(const ExactCoverInstance& inst) {
    nlohmann::ordered_json doc;
    doc["n_flights"] = inst.n_flights;
    doc["routes"] = inst.routes;
    if (!inst.known_solutions.empty()) {
        doc["known_solutions"] = inst.known_solutions;
    }
    return doc.dump();
}

std::uint64_t routes_to_mask(const std::vector<int>& route_indices) {
    std::uint64_t mask = 0;
    for (int r : route_indices) {
        mask |= 1ull << r;
    }
    return mask;
}

std::vector<int> mask_to_routes(std::uint64_t mask) {
    std::vector<int> ids;
    for (int r = 0; mask != 0; ++r, mask >>= 1) {
        if (mask & 1ull) {
            ids.push_back(r);
        }
    }
    return ids;
}

namespace detail {

std::vector<std::vector<int>> solve_exhaustive(const ExactCoverInstance& inst) {
    const auto fmasks = flight_route_masks(inst);
    const std::uint64_t total = 1ull << inst.n_routes();
    std::vector<std::vector<int>> solutions;
    for (std::uint64_t x = 0; x < total; ++x) {
        if (is_exact_cover(inst, x, fmasks)) {
            solutions.push_back(mask_to_routes(x));
        }
    }
    std::sort(solutions.begin(), solutions.end());
    return solutions;
}

namespace {

// Knuth's Algorithm X on a dancing-links matrix; rows are routes, columns
// are flights. Enumerates every solution.
class DancingLinks {
  public:
    explicit DancingLinks(const ExactCoverInstance& inst) {
        const int n_cols = inst.n_flights;
        std::size_t n_cells = static_cast<std::size_t>(n_cols) + 1;
        for (const auto& route : inst.routes) {
            n_cells += route.size();
        }
        left_.resize(n_cells);
        right_.resize(n_cells);
        up_.resize(n_cells);
        down_.resize(n_cells);
        col_of_.resize(n_cells);
        row_of_.resize(n_cells, -1);
        col_size_.resize(static_cast<std::size_t>(n_cols), 0);

        // Header ring: node 0 is the root, nodes 1..n_cols the columns.
        for (int c = 0; c <= n_cols; ++c) {
            const std::size_t i = static_cast<std::size_t>(c);
            left_[i] = (c == 0) ? static_cast<std::size_t>(n_cols) : i - 1;
            right_[i] = (c == n_cols) ? 0 : i + 1;
            up_[i] = i;
            down_[i] = i;
            col_of_[i] = static_cast<int>(c) - 1;
        }

        std::size_t next = static_cast<std::size_t>(n_cols) + 1;
        for (int r = 0; r < inst.n_routes(); ++r) {
            std::size_t row_start = next;
            for (int f : inst.routes[static_cast<std::size_t>(r)]) {
                const std::size_t node = next++;
                const std::size_t header = static_cast<std::size_t>(f) + 1;
                col_of_[node] = f;
                row_of_[node] = r;
                up_[node] = up_[header];
                down_[node] = header;
                down_[up_[header]] = node;
                up_[header] = node;
                ++col_size_[static_cast<std::size_t>(f)];
                if (node == row_start) {
                    left_[node] = node;
                    right_[node] = node;
                } else {
                    left_[node] = next - 2;
                    right_[node] = row_start;
                    right_[next - 2] = node;
                    left_[row_start] = node;
                }
            }
        }
    }

    std::vector<std::vector<int>> run() {
        search();
        std::sort(solutions_.begin(), solutions_.end());
        return std::move(solutions_);
    }

  private:
    void cover(std::size_t header) {
        right_[left_[header]] = right_[header];
        left_[right_[header]] = left_[header];
        for (std::size_t i = down_[header]; i != header; i = down_[i]) {
            for (std::size_t j = right_[i]; j != i; j = right_[j]) {
                down_[up_[j]] = down_[j];
                up_[down_[j]] = up_[j];
                --col_size_[static_cast<std::size_t>(col_of_[j])];
            }
        }
    }

    void uncover(std::size_t header) {
        for (std::size_t i = up_[header]; i != header; i = up_[i]) {
            for (std::size_t j = left_[i]; j != i; j = left_[j]) {
                ++col_size_[static_cast<std::size_t>(col_of_[j])];
                down_[up_[j]] = j;
                up_[down_[j]] = j;
            }
        }
        right_[left_[header]] = header;
        left_[right_[header]] = header;
    }

    void search() {
        if (right_[0] == 0) {
            std::vector<int> sol = partial_;
            std::sort(sol.begin(), sol.end());
            solutions_.push_back(std::move(sol));
            return;
        }
        // Smallest column first, lowest flight index on ties.
        std::size_t best = right_[0];
        for (std::size_t c = right_[0]; c != 0; c = right_[c]) {
            if (col_size_[static_cast<std::size_t>(col_of_[c])] <
                col_size_[static_cast<std::size_t>(col_of_[best])]) {
                best = c;
            }
        }
        cover(best);
        for (std::size_t i = down_[best]; i != best; i = down_[i]) {
            partial_.push_back(row_of_[i]);
            for (std::size_t j = right_[i]; j != i; j = right_[j]) {
                cover(static_cast<std::size_t>(col_of_[j]) + 1);
            }
            search();
            for (std::size_t j = left_[i]; j != i; j = left_[j]) {
                uncover(static_cast<std::size_t>(col_of_[j]) + 1);
            }
            partial_.pop_back();
        }
        uncover(best);
    }

    std::vector<std::size_t> left_, right_, up_, down_;
    std::vector<int> col_of_, row_of_;
    std::vector<std::size_t> col_size_;
    std::vector<int> partial_;
    std::vector<std::vector<int>> solutions_;
};

}  // namespace

std::vector<std::vector<int>> solve_dancing_links(const ExactCoverInstance& inst) {
    return DancingLinks(inst).run();
}

}  // namespace detail

std::vector<std::vector<int>> solve_exact(const ExactCoverInstance& inst, int oracle_limit) {
    if (inst.n_routes() > oracle_limit) {
        throw LimitError("solve_exact: " + std::to_string(inst.n_routes()) +
                         " routes exceeds the oracle limit of " +
                         std::to_string(oracle_limit));
    }
    if (inst.n_routes() <= 20) {
        return detail::solve_exhaustive(inst);
    }
    return detail::solve_dancing_links(inst);
}

std::vector<std::uint64_t> solution_masks(const ExactCoverInstance& inst, int oracle_limit) {
    std::vector<std::vector<int>> sets;
    if (inst.n_routes() <= oracle_limit) {
        sets = solve_exact(inst, oracle_limit);
    } else if (!inst.known_solutions.empty()) {
        sets = inst.known_solutions;
    } else {
        throw LimitError("instance exceeds the oracle limit and carries no known solutions");
    }
    std::vector<std::uint64_t> masks;
    masks.reserve(sets.size());
    for (const auto& s : sets) {
        masks.push_back(routes_to_mask(s));
    }
    return masks;
}

ExactCoverInstance generate_planted(int n_flights, int n_routes, int planted_size,
                                    std::uint64_t seed) {
    if (planted_size < 1) {
        throw ValidationError("planted_size must be positive");
    }
    if (planted_size > n_routes) {
        throw ValidationError("planted_size exceeds n_routes");
    }
    if (n_flights < planted_size) {
        throw ValidationError("n_flights must be at least planted_size");
    }
    if (n_routes > kDefaultOracleLimit) {
        throw ValidationError("generate_planted: n_routes exceeds the oracle limit of " +
                              std::to_string(kDefaultOracleLimit));
    }

    Rng rng(seed);

    // Partition the flights into planted_size nonempty chunks.
    std::vector<int> flights(static_cast<std::size_t>(n_flights));
    std::iota(flights.begin(), flights.end(), 0);
    for (std::size_t i = flights.size(); i > 1; --i) {
        std::swap(flights[i - 1], flights[rng.next_below(i)]);
    }
    std::vector<int> cuts{0, n_flights};
    while (static_cast<int>(cuts.size()) < planted_size + 1) {
        const int c = 1 + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(n_flights - 1)));
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) {
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<std::vector<int>> planted;
    std::size_t min_size = static_cast<std::size_t>(n_flights);
    std::size_t max_size = 1;
    for (int k = 0; k < planted_size; ++k) {
        std::vector<int> route(flights.begin() + cuts[static_cast<std::size_t>(k)],
                               flights.begin() + cuts[static_cast<std::size_t>(k) + 1]);
        std::sort(route.begin(), route.end());
        min_size = std::min(min_size, route.size());
        max_size = std::max(max_size, route.size());
        planted.push_back(std::move(route));
    }

    const int n_decoys = n_routes - planted_size;
    std::vector<int> scratch(static_cast<std::size_t>(n_flights));
    std::iota(scratch.begin(), scratch.end(), 0);

    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        // Decoy sizes are drawn from the planted routes' size range.
        std::vector<std::vector<int>> routes = planted;
        for (int d = 0; d < n_decoys; ++d) {
            const std::size_t size =
                min_size + rng.next_below(max_size - min_size + 1);
            for (std::size_t i = 0; i < size; ++i) {
                std::swap(scratch[i], scratch[i + rng.next_below(scratch.size() - i)]);
            }
            std::vector<int> route(scratch.begin(),
                                   scratch.begin() + static_cast<std::ptrdiff_t>(size));
            std::sort(route.begin(), route.end());
            routes.push_back(std::move(route));
        }

        // Shuffle route order so the planted cover lands on random qubits.
        std::vector<int> order(routes.size());
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.next_below(i)]);
        }
        std::vector<std::vector<int>> shuffled(routes.size());
        std::vector<int> planted_ids;
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            shuffled[pos] = std::move(routes[static_cast<std::size_t>(order[pos])]);
            if (order[pos] < planted_size) {
                planted_ids.push_back(static_cast<int>(pos));
            }
        }
        std::sort(planted_ids.begin(), planted_ids.end());

        auto inst = make_instance(n_flights, std::move(shuffled), {planted_ids});
        if (solve_exact(inst).size() == 1) {
            return inst;
        }
    }
    throw GenerationError("generate_planted: no unique-solution instance after " +
                          std::to_string(kMaxAttempts) + " decoy resamples");
}

ProblemGraph to_graph(const ExactCoverInstance& inst) {
    ProblemGraph g;
    g.n_vertices = inst.n_routes();
    const auto fmasks = flight_route_masks(inst);
    std::vector<std::uint64_t> adjacency(static_cast<std::size_t>(g.n_vertices), 0);
    for (std::uint64_t fm : fmasks) {
        std::uint64_t rest = fm;
        while (rest != 0) {
            const int r = std::countr_zero(rest);
            rest &= rest - 1;
            adjacency[static_cast<std::size_t>(r)] |= rest;
        }
    }
    for (int r = 0; r < g.n_vertices; ++r) {
        std::uint64_t rest = adjacency[static_cast<std::size_t>(r)];
        while (rest != 0) {
            const int rp = std::countr_zero(rest);
            rest &= rest - 1;
            g.edges.emplace_back(r, rp);
        }
    }
    return g;
}

ValencyStats valency_stats(const ProblemGraph& g) {
    ValencyStats stats;
    if (g.n_vertices == 0) {
        return stats;
    }
    std::vector<int> degree(static_cast<std::size_t>(g.n_vertices), 0);
    for (const auto& [r, rp] : g.edges) {
        ++degree[static_cast<std::size_t>(r)];
        ++degree[static_cast<std::size_t>(rp)];
    }
    const double n = static_cast<double>(g.n_vertices);
    stats.mean = 2.0 * static_cast<double>(g.edges.size()) / n;
    double var = 0.0;
    for (int d : degree) {
        const double delta = static_cast<double>(d) - stats.mean;
        var += delta * delta;
    }
    stats.std_dev = std::sqrt(var / n);
    return stats;
}

}  // namespace xcq
