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

#include "xcq/noise.hpp"

#include <cmath>

#include "xcq/errors.hpp"
#include "xcq/parallel.hpp"
#include "xcq/rng.hpp"

namespace xcq {

namespace {

void apply_pauli_x(StateVector& s, int q) {
    const std::size_t step = 1ull << q;
    for (std::size_t base = 0; base < s.amps.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            std::swap(s.amps[i], s.amps[i + step]);
        }
    }
}

void apply_pauli_y(StateVector& s, int q) {
    const std::complex<double> pos_i(0.0, 1.0);
    const std::size_t step = 1ull << q;
    for (std::size_t base = 0; base < s.amps.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const auto a0 = s.amps[i];
            const auto a1 = s.amps[i + step];
            s.amps[i] = -pos_i * a1;
            s.amps[i + step] = pos_i * a0;
        }
    }
}

void apply_pauli_z(StateVector& s, int q) {
    const std::size_t step = 1ull << q;
    for (std::size_t base = 0; base < s.amps.size(); base += 2 * step) {
        for (std::size_t i = base + step; i < base + 2 * step; ++i) {
            s.amps[i] = -s.amps[i];
        }
    }
}

void noise_round(StateVector& s, double eta, Rng& rng) {
    for (int q = 0; q < s.n; ++q) {
        if (rng.next_double() < eta) {
            switch (rng.next_below(3)) {
                case 0:
                    apply_pauli_x(s, q);
                    break;
                case 1:
                    apply_pauli_y(s, q);
                    break;
                default:
                    apply_pauli_z(s, q);
                    break;
            }
        }
    }
}

}  // namespace

NoisyResult run_noisy(const CostTable& table, const VariationalParams& params,
                      const NoiseConfig& cfg, const std::vector<std::uint64_t>& solutions) {
    if (cfg.trajectories < 1) {
        throw ValidationError("run_noisy: at least one trajectory required");
    }
    if (cfg.eta < 0.0 || cfg.eta > 1.0) {
        throw ValidationError("run_noisy: eta must lie in [0, 1]");
    }
    if (params.p() < 1) {
        throw ValidationError("run_noisy: at least one layer required");
    }

    std::vector<double> f(cfg.trajectories);
    parallel_for(cfg.trajectories, cfg.threads, [&](std::size_t t) {
        Rng rng(cfg.seed ^ static_cast<std::uint64_t>(t));
        StateVector s = prepare_plus(table.n());
        for (int k = 0; k < params.p(); ++k) {
            apply_cost_phase(s, params.gammas[static_cast<std::size_t>(k)], table);
            if (cfg.placement == NoisePlacement::kAfterEachHalfLayer) {
                noise_round(s, cfg.eta, rng);
            }
            apply_mixer(s, params.betas[static_cast<std::size_t>(k)]);
            noise_round(s, cfg.eta, rng);
        }
        f[t] = success_probability(s, solutions);
    });

    // Fixed-order reduction keeps the result independent of scheduling.
    // Accumulating deviations from the first value keeps the mean bitwise
    // equal to the per-trajectory value when all trajectories agree (eta 0).
    double deviation_sum = 0.0;
    for (double v : f) {
        deviation_sum += v - f[0];
    }
    const double mean = f[0] + deviation_sum / static_cast<double>(cfg.trajectories);

    NoisyResult result;
    result.mean = mean;
    if (cfg.trajectories > 1) {
        double var = 0.0;
        for (double v : f) {
            var += (v - mean) * (v - mean);
        }
        var /= static_cast<double>(cfg.trajectories - 1);
        result.std_error = std::sqrt(var / static_cast<double>(cfg.trajectories));
    }
    return result;
}

}  // namespace xcq
