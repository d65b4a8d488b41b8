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

#ifndef XCQ_ANALYSIS_HPP
#define XCQ_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xcq/anneal.hpp"
#include "xcq/optimizer.hpp"
#include "xcq/simulator.hpp"

namespace xcq {

// Smallest m with m > log(eps) / log(1 - f): repeating a measurement with
// single-shot success f observes the solution at least once with
// probability above 1 - eps.
std::int64_t required_measurements(double f, double eps);

// beta reduced modulo pi to its minimal-magnitude representative; the state
// is pi-periodic in beta up to a global phase, so this is the shortest
// schedule realizing the same layer.
double canonical_beta(double beta);

// T_p = sum_i |gamma_i| + |canonical beta_i|.
double qaoa_total_time(const VariationalParams& params);

struct TtsReport {
    std::string algorithm;  // "QAOA" or "QA"
    double schedule = 0.0;  // p for QAOA, T for QA
    double f = 0.0;         // single-shot success probability
    double p_d = 0.99;
    double tts = 0.0;
};

struct TtsSweepRow {
    double t = 0.0;
    double f_gs = 0.0;
    double tts = 0.0;  // +inf where f_gs vanishes
};

struct TtsQaResult {
    TtsReport best;
    std::vector<TtsSweepRow> sweep;
    bool finite = false;
};

inline constexpr double kDefaultTargetProbability = 0.99;

// TTS(p) = T_p log(1 - p_d) / log(1 - F_p), minimized over the recorded
// levels; levels with zero success probability are skipped.
TtsReport tts_qaoa(const OptimizationTrace& trace, double p_d = kDefaultTargetProbability);

// Anneals once per grid point and minimizes T log(1 - p_d) / log(1 - F_gs(T)).
TtsQaResult tts_qa(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                   const std::vector<double>& t_grid, double p_d = kDefaultTargetProbability,
                   double dt = 0.05, bool convergence_check = false, int threads = 1);

// 16 log-spaced times over [0.5, 200].
std::vector<double> default_t_grid();

std::string tts_report_to_json(const TtsReport& report);

// "T,F_gs,tts" rows.
std::string tts_sweep_to_csv(const std::vector<TtsSweepRow>& sweep);

}  // namespace xcq

#endif
