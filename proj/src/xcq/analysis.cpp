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

#include "xcq/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "xcq/errors.hpp"
#include "xcq/parallel.hpp"
#include "xcq/text.hpp"

namespace xcq {

namespace {

double repetition_factor(double f, double p_d) {
    if (f >= 1.0) {
        return 0.0;  // continuum limit of log(1-p_d)/log(1-f)
    }
    return std::log1p(-p_d) / std::log1p(-f);
}

}  // namespace

std::int64_t required_measurements(double f, double eps) {
    if (f <= 0.0) {
        throw ValidationError("required_measurements: success probability must be positive");
    }
    if (f > 1.0) {
        throw ValidationError("required_measurements: success probability above 1");
    }
    if (eps <= 0.0 || eps >= 1.0) {
        throw ValidationError("required_measurements: eps must lie in (0, 1)");
    }
    if (f == 1.0) {
        return 1;
    }
    const double ratio = std::log(eps) / std::log1p(-f);
    // Smallest integer strictly above the ratio.
    return static_cast<std::int64_t>(std::floor(ratio)) + 1;
}

double canonical_beta(double beta) {
    return std::remainder(beta, std::numbers::pi);
}

double qaoa_total_time(const VariationalParams& params) {
    double total = 0.0;
    for (double g : params.gammas) {
        total += std::abs(g);
    }
    for (double b : params.betas) {
        total += std::abs(canonical_beta(b));
    }
    return total;
}

TtsReport tts_qaoa(const OptimizationTrace& trace, double p_d) {
    if (trace.empty()) {
        throw ValidationError("tts_qaoa: empty trace");
    }
    if (p_d <= 0.0 || p_d >= 1.0) {
        throw ValidationError("tts_qaoa: p_d must lie in (0, 1)");
    }
    TtsReport best;
    bool found = false;
    for (const auto& entry : trace) {
        if (entry.f <= 0.0) {
            continue;  // infinite TTS
        }
        const double t_p = qaoa_total_time({entry.gammas, entry.betas});
        const double tts = t_p * repetition_factor(entry.f, p_d);
        if (!found || tts < best.tts) {
            best = {"QAOA", static_cast<double>(entry.p), entry.f, p_d, tts};
            found = true;
        }
    }
    if (!found) {
        throw ValidationError("tts_qaoa: no level has positive success probability");
    }
    return best;
}

TtsQaResult tts_qa(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                   const std::vector<double>& t_grid, double p_d, double dt,
                   bool convergence_check, int threads) {
    if (t_grid.empty()) {
        throw ValidationError("tts_qa: empty schedule grid");
    }
    if (p_d <= 0.0 || p_d >= 1.0) {
        throw ValidationError("tts_qa: p_d must lie in (0, 1)");
    }
    TtsQaResult result;
    result.sweep.resize(t_grid.size());
    parallel_for(t_grid.size(), threads, [&](std::size_t i) {
        AnnealConfig cfg;
        cfg.total_time = t_grid[i];
        cfg.dt = dt;
        cfg.convergence_check = convergence_check;
        const AnnealResult run = anneal(table, solutions, cfg);
        TtsSweepRow row;
        row.t = t_grid[i];
        row.f_gs = run.f_gs;
        row.tts = run.f_gs > 0.0 ? t_grid[i] * repetition_factor(run.f_gs, p_d)
                                 : std::numeric_limits<double>::infinity();
        result.sweep[i] = row;
    });
    bool found = false;
    for (const auto& row : result.sweep) {
        if (!std::isfinite(row.tts)) {
            continue;
        }
        if (!found || row.tts < result.best.tts) {
            result.best = {"QA", row.t, row.f_gs, p_d, row.tts};
            found = true;
        }
    }
    result.finite = found;
    return result;
}

std::vector<double> default_t_grid() {
    constexpr int kPoints = 16;
    constexpr double kLo = 0.5;
    constexpr double kHi = 200.0;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        grid[static_cast<std::size_t>(i)] =
            kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kPoints - 1));
    }
    return grid;
}

std::string tts_report_to_json(const TtsReport& report) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = report.algorithm;
    doc["schedule"] = report.schedule;
    doc["F"] = report.f;
    doc["p_d"] = report.p_d;
    doc["tts"] = report.tts;
    return doc.dump();
}

std::string tts_sweep_to_csv(const std::vector<TtsSweepRow>& sweep) {
    std::string csv = "T,F_gs,tts\n";
    for (const auto& row : sweep) {
        csv += format_double(row.t);
        csv += ',';
        csv += format_double(row.f_gs);
        csv += ',';
        csv += std::isfinite(row.tts) ? format_double(row.tts) : std::string("inf");
        csv += '\n';
    }
    return csv;
}

}  // namespace xcq
