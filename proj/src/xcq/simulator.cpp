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

#include "xcq/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "xcq/errors.hpp"
#include "xcq/rng.hpp"

namespace xcq {

namespace {
std::atomic<int> g_max_qubits{26};
}

int max_qubits() {
    return g_max_qubits.load();
}

void set_max_qubits(int n) {
    if (n < 1) {
        throw ValidationError("max_qubits must be positive");
    }
    g_max_qubits.store(n);
}

CostTable CostTable::build(const IsingModel& m) {
    if (m.n < 1 || m.n > max_qubits()) {
        throw LimitError("cost table: " + std::to_string(m.n) +
                         " qubits outside the supported range [1, " +
                         std::to_string(max_qubits()) + "]");
    }
    const auto energies = energy_table(m);
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());

    CostTable t;
    t.n_ = m.n;
    t.offset_ = m.offset;
    t.e_min_ = *lo;
    t.n_levels_ = static_cast<int>(*hi - *lo) + 1;
    t.level_of_.resize(energies.size());
    t.level_counts_.assign(static_cast<std::size_t>(t.n_levels_), 0);
    for (std::size_t x = 0; x < energies.size(); ++x) {
        const std::uint32_t lvl = static_cast<std::uint32_t>(energies[x] - t.e_min_);
        t.level_of_[x] = lvl;
        ++t.level_counts_[lvl];
    }
    return t;
}

StateVector prepare_plus(int n) {
    if (n < 1 || n > max_qubits()) {
        throw LimitError("prepare_plus: " + std::to_string(n) +
                         " qubits outside the supported range [1, " +
                         std::to_string(max_qubits()) + "]");
    }
    StateVector s;
    s.n = n;
    const double amp = std::pow(2.0, -0.5 * n);
    s.amps.assign(1ull << n, std::complex<double>(amp, 0.0));
    return s;
}

void apply_cost_phase(StateVector& s, double gamma, const CostTable& table) {
    if (s.n != table.n()) {
        throw ValidationError("apply_cost_phase: state and model dimensions differ");
    }
    // One phasor per energy level, then a streaming multiply.
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(table.n_levels()));
    for (int k = 0; k < table.n_levels(); ++k) {
        const double shifted =
            static_cast<double>(table.e_min() + k) - table.offset();
        phase[static_cast<std::size_t>(k)] = std::polar(1.0, -gamma * shifted);
    }
    const auto& levels = table.levels();
    for (std::size_t x = 0; x < s.amps.size(); ++x) {
        s.amps[x] *= phase[levels[x]];
    }
}

void apply_mixer(StateVector& s, double beta) {
    const double c = std::cos(beta);
    const std::complex<double> ms(0.0, -std::sin(beta));
    for (int q = 0; q < s.n; ++q) {
        const std::size_t step = 1ull << q;
        for (std::size_t base = 0; base < s.amps.size(); base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                const auto a0 = s.amps[i];
                const auto a1 = s.amps[i + step];
                s.amps[i] = c * a0 + ms * a1;
                s.amps[i + step] = ms * a0 + c * a1;
            }
        }
    }
}

StateVector run_qaoa(const CostTable& table, const VariationalParams& params) {
    if (params.p() < 1) {
        throw ValidationError("run_qaoa: at least one layer required");
    }
    if (params.gammas.size() != params.betas.size()) {
        throw ValidationError("run_qaoa: gamma and beta counts differ");
    }
    StateVector s = prepare_plus(table.n());
    for (int k = 0; k < params.p(); ++k) {
        apply_cost_phase(s, params.gammas[static_cast<std::size_t>(k)], table);
        apply_mixer(s, params.betas[static_cast<std::size_t>(k)]);
    }
    return s;
}

double expectation(const StateVector& s, const CostTable& table) {
    if (s.n != table.n()) {
        throw ValidationError("expectation: state and model dimensions differ");
    }
    const auto& levels = table.levels();
    double e = 0.0;
    for (std::size_t x = 0; x < s.amps.size(); ++x) {
        e += std::norm(s.amps[x]) *
             static_cast<double>(table.e_min() + levels[x]);
    }
    return e;
}

double success_probability(const StateVector& s, const std::vector<std::uint64_t>& solutions) {
    if (solutions.empty()) {
        throw ValidationError("success_probability: empty solution set");
    }
    double f = 0.0;
    for (std::uint64_t x : solutions) {
        if (x >= s.amps.size()) {
            throw ValidationError("success_probability: solution index outside the register");
        }
        f += std::norm(s.amps[x]);
    }
    return f;
}

std::map<std::int64_t, double> cost_histogram(const StateVector& s, const CostTable& table) {
    if (s.n != table.n()) {
        throw ValidationError("cost_histogram: state and model dimensions differ");
    }
    std::vector<double> acc(static_cast<std::size_t>(table.n_levels()), 0.0);
    const auto& levels = table.levels();
    for (std::size_t x = 0; x < s.amps.size(); ++x) {
        acc[levels[x]] += std::norm(s.amps[x]);
    }
    std::map<std::int64_t, double> hist;
    for (int k = 0; k < table.n_levels(); ++k) {
        if (table.degeneracy(k) > 0) {
            hist[table.e_min() + k] = acc[static_cast<std::size_t>(k)];
        }
    }
    return hist;
}

std::vector<std::uint64_t> sample(const StateVector& s, std::uint64_t shots,
                                  std::uint64_t seed) {
    if (shots < 1) {
        throw ValidationError("sample: at least one shot required");
    }
    std::vector<double> cumulative(s.amps.size());
    double total = 0.0;
    for (std::size_t x = 0; x < s.amps.size(); ++x) {
        total += std::norm(s.amps[x]);
        cumulative[x] = total;
    }
    Rng rng(seed);
    std::vector<std::uint64_t> draws(shots);
    for (std::uint64_t k = 0; k < shots; ++k) {
        const double u = rng.next_double() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        draws[k] = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                     static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
    }
    return draws;
}

double norm_squared(const StateVector& s) {
    double t = 0.0;
    for (const auto& a : s.amps) {
        t += std::norm(a);
    }
    return t;
}

}  // namespace xcq
