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

#include "xcq/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "xcq/errors.hpp"
#include "xcq/parallel.hpp"
#include "xcq/rng.hpp"
#include "xcq/text.hpp"

namespace xcq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFunctionTolerance = 1e-6;
constexpr double kStepTolerance = 1e-6;
constexpr double kGradientStep = 1e-6;

// Flat parameter layout used by both optimizers: [gamma_1..gamma_p, beta_1..beta_p].
VariationalParams unflatten(const std::vector<double>& x, int p) {
    VariationalParams params;
    params.gammas.assign(x.begin(), x.begin() + p);
    params.betas.assign(x.begin() + p, x.end());
    return params;
}

class Objective {
  public:
    Objective(const CostTable& table, int p) : table_(table), p_(p) {}

    double operator()(const std::vector<double>& x) {
        ++evaluations_;
        return expectation(run_qaoa(table_, unflatten(x, p_)), table_);
    }

    std::uint64_t evaluations() const { return evaluations_; }

  private:
    const CostTable& table_;
    int p_;
    std::uint64_t evaluations_ = 0;
};

std::vector<double> central_gradient(Objective& fn, const std::vector<double>& x) {
    std::vector<double> g(x.size());
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + kGradientStep;
        const double hi = fn(probe);
        probe[i] = x[i] - kGradientStep;
        const double lo = fn(probe);
        probe[i] = x[i];
        g[i] = (hi - lo) / (2.0 * kGradientStep);
    }
    return g;
}

void project_box(std::vector<double>& x) {
    for (double& v : x) {
        v = std::clamp(v, 0.0, kPi);
    }
}

struct DescentResult {
    std::vector<double> x;
    double value = 0.0;
};

// Quasi-Newton descent with an inverse-Hessian BFGS update, iterates
// projected onto [0, pi]^d. Stops on the 1e-6 function/step tolerances.
DescentResult bfgs_descent(Objective& fn, std::vector<double> x, int max_iterations) {
    const std::size_t d = x.size();
    project_box(x);
    double value = fn(x);
    std::vector<double> grad = central_gradient(fn, x);

    // Inverse Hessian approximation, row-major identity to start.
    std::vector<double> hinv(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        hinv[i * d + i] = 1.0;
    }

    std::vector<double> direction(d), x_new(d), grad_new(d);
    for (int iter = 0; iter < max_iterations; ++iter) {
        double descent = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                v += hinv[i * d + k] * grad[k];
            }
            direction[i] = -v;
            descent += direction[i] * grad[i];
        }
        if (descent >= 0.0) {
            // Curvature information went stale; fall back to steepest descent.
            for (std::size_t i = 0; i < d; ++i) {
                hinv[i * d + i] = 1.0;
                for (std::size_t k = 0; k < d; ++k) {
                    if (k != i) {
                        hinv[i * d + k] = 0.0;
                    }
                }
                direction[i] = -grad[i];
            }
            descent = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                descent += direction[i] * grad[i];
            }
            if (descent >= 0.0) {
                break;  // zero gradient
            }
        }

        // Backtracking line search on the projected step.
        double t = 1.0;
        double value_new = value;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t i = 0; i < d; ++i) {
                x_new[i] = x[i] + t * direction[i];
            }
            project_box(x_new);
            value_new = fn(x_new);
            if (value_new <= value + 1e-4 * t * descent) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            break;
        }

        double step_norm_sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double si = x_new[i] - x[i];
            step_norm_sq += si * si;
        }
        const double delta_value = value - value_new;

        grad_new = central_gradient(fn, x_new);

        // BFGS update of the inverse Hessian (skipped on tiny curvature).
        double sy = 0.0;
        std::vector<double> step(d), y(d);
        for (std::size_t i = 0; i < d; ++i) {
            step[i] = x_new[i] - x[i];
            y[i] = grad_new[i] - grad[i];
            sy += step[i] * y[i];
        }
        if (sy > 1e-12) {
            const double rho = 1.0 / sy;
            std::vector<double> hy(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t k = 0; k < d; ++k) {
                    hy[i] += hinv[i * d + k] * y[k];
                }
            }
            double yhy = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                yhy += y[i] * hy[i];
            }
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t k = 0; k < d; ++k) {
                    hinv[i * d + k] += rho * rho * (sy + yhy) * step[i] * step[k] -
                                       rho * (hy[i] * step[k] + step[i] * hy[k]);
                }
            }
        }

        x = x_new;
        value = value_new;
        grad = grad_new;

        if (std::sqrt(step_norm_sq) < kStepTolerance || std::abs(delta_value) < kFunctionTolerance) {
            break;
        }
    }
    return {std::move(x), value};
}

double wall_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TraceEntry finish_entry(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                        int p, const std::vector<double>& x, std::uint64_t evaluations,
                        double seconds) {
    TraceEntry entry;
    entry.p = p;
    const VariationalParams params = unflatten(x, p);
    entry.gammas = params.gammas;
    entry.betas = params.betas;
    const StateVector s = run_qaoa(table, params);
    entry.e = expectation(s, table);
    entry.f = success_probability(s, solutions);
    entry.evaluations = evaluations;
    entry.seconds = seconds;
    return entry;
}

}  // namespace

LandscapeGrid landscape_scan(const CostTable& table,
                             const std::vector<std::uint64_t>& solutions, int resolution,
                             int threads) {
    if (resolution < 2) {
        throw ValidationError("landscape_scan: resolution must be at least 2");
    }
    LandscapeGrid grid;
    grid.resolution = resolution;
    grid.gamma_axis.resize(static_cast<std::size_t>(resolution));
    grid.beta_axis.resize(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        const double v = kPi * static_cast<double>(i) / static_cast<double>(resolution - 1);
        grid.gamma_axis[static_cast<std::size_t>(i)] = v;
        grid.beta_axis[static_cast<std::size_t>(i)] = v;
    }
    const std::size_t cells =
        static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
    grid.e_values.resize(cells);
    grid.f_values.resize(cells);
    parallel_for(cells, threads, [&](std::size_t cell) {
        const int ig = static_cast<int>(cell) / resolution;
        const int ib = static_cast<int>(cell) % resolution;
        VariationalParams params;
        params.gammas = {grid.gamma_axis[static_cast<std::size_t>(ig)]};
        params.betas = {grid.beta_axis[static_cast<std::size_t>(ib)]};
        const StateVector s = run_qaoa(table, params);
        grid.e_values[cell] = expectation(s, table);
        grid.f_values[cell] = success_probability(s, solutions);
    });
    return grid;
}

std::string landscape_to_csv(const LandscapeGrid& grid) {
    std::string csv = "gamma,beta,E,F\n";
    for (int ig = 0; ig < grid.resolution; ++ig) {
        for (int ib = 0; ib < grid.resolution; ++ib) {
            csv += format_double(grid.gamma_axis[static_cast<std::size_t>(ig)]);
            csv += ',';
            csv += format_double(grid.beta_axis[static_cast<std::size_t>(ib)]);
            csv += ',';
            csv += format_double(grid.e_at(ig, ib));
            csv += ',';
            csv += format_double(grid.f_at(ig, ib));
            csv += '\n';
        }
    }
    return csv;
}

TraceEntry multistart_optimize(const CostTable& table,
                               const std::vector<std::uint64_t>& solutions, int p,
                               const MultistartConfig& cfg) {
    if (p < 1) {
        throw ValidationError("multistart_optimize: p must be at least 1");
    }
    if (cfg.n_starts < 1) {
        throw ValidationError("multistart_optimize: at least one start required");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t d = 2 * static_cast<std::size_t>(p);

    struct StartResult {
        std::vector<double> x;
        double value = 0.0;
        std::uint64_t evaluations = 0;
    };
    std::vector<StartResult> results(static_cast<std::size_t>(cfg.n_starts));

    parallel_for(static_cast<std::size_t>(cfg.n_starts), cfg.threads, [&](std::size_t k) {
        Rng rng(cfg.seed ^ static_cast<std::uint64_t>(k));
        std::vector<double> x0(d);
        for (double& v : x0) {
            v = rng.uniform(0.0, kPi);
        }
        Objective fn(table, p);
        auto res = bfgs_descent(fn, std::move(x0), cfg.max_iterations);
        results[k] = {std::move(res.x), res.value, fn.evaluations()};
    });

    // Sequential selection; equal values fall back to lexicographic order.
    std::size_t best = 0;
    std::uint64_t total_evaluations = 0;
    for (std::size_t k = 0; k < results.size(); ++k) {
        total_evaluations += results[k].evaluations;
        if (k == 0) {
            continue;
        }
        const double dv = results[k].value - results[best].value;
        if (dv < -1e-12 || (std::abs(dv) <= 1e-12 && results[k].x < results[best].x)) {
            best = k;
        }
    }
    return finish_entry(table, solutions, p, results[best].x, total_evaluations,
                        wall_seconds(t0));
}

TraceEntry nelder_mead(const CostTable& table, const std::vector<std::uint64_t>& solutions,
                       const VariationalParams& start) {
    const int p = start.p();
    if (p < 1 || static_cast<int>(start.betas.size()) != p) {
        throw ValidationError("nelder_mead: malformed start point");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t d = 2 * static_cast<std::size_t>(p);
    const std::uint64_t max_evaluations = 60ull * static_cast<std::uint64_t>(p);
    const std::uint64_t max_iterations = max_evaluations;

    Objective fn(table, p);
    std::vector<double> x0(start.gammas);
    x0.insert(x0.end(), start.betas.begin(), start.betas.end());

    struct Vertex {
        std::vector<double> x;
        double value;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(d + 1);
    auto budget_left = [&] { return fn.evaluations() < max_evaluations; };

    simplex.push_back({x0, fn(x0)});
    for (std::size_t i = 0; i < d && budget_left(); ++i) {
        std::vector<double> v = x0;
        v[i] += 0.05;
        simplex.push_back({v, fn(v)});
    }

    auto best_vertex = [&] {
        std::size_t b = 0;
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            if (simplex[i].value < simplex[b].value) {
                b = i;
            }
        }
        return simplex[b];
    };

    if (simplex.size() < d + 1) {
        const Vertex b = best_vertex();
        return finish_entry(table, solutions, p, b.x, fn.evaluations(), wall_seconds(t0));
    }

    for (std::uint64_t iter = 0; iter < max_iterations && budget_left(); ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.value < b.value; });

        // Converged simplex: all vertices agree to machine-level spread.
        double value_spread = 0.0;
        double x_spread = 0.0;
        for (std::size_t i = 1; i <= d; ++i) {
            value_spread = std::max(value_spread,
                                    std::abs(simplex[i].value - simplex[0].value));
            for (std::size_t k = 0; k < d; ++k) {
                x_spread = std::max(x_spread, std::abs(simplex[i].x[k] - simplex[0].x[k]));
            }
        }
        if (value_spread < 1e-10 && x_spread < 1e-10) {
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                centroid[k] += simplex[i].x[k];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(d);
        }

        auto blend = [&](double coeff) {
            std::vector<double> v(d);
            for (std::size_t k = 0; k < d; ++k) {
                v[k] = centroid[k] + coeff * (simplex[d].x[k] - centroid[k]);
            }
            return v;
        };

        auto reflected = blend(-1.0);
        const double fr = fn(reflected);
        if (fr < simplex[0].value) {
            if (budget_left()) {
                auto expanded = blend(-2.0);
                const double fe = fn(expanded);
                simplex[d] = fe < fr ? Vertex{std::move(expanded), fe}
                                     : Vertex{std::move(reflected), fr};
            } else {
                simplex[d] = {std::move(reflected), fr};
            }
            continue;
        }
        if (fr < simplex[d - 1].value) {
            simplex[d] = {std::move(reflected), fr};
            continue;
        }
        if (!budget_left()) {
            break;
        }
        if (fr < simplex[d].value) {
            auto outside = blend(-0.5);
            const double fo = fn(outside);
            if (fo <= fr) {
                simplex[d] = {std::move(outside), fo};
                continue;
            }
        } else {
            auto inside = blend(0.5);
            const double fi = fn(inside);
            if (fi < simplex[d].value) {
                simplex[d] = {std::move(inside), fi};
                continue;
            }
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i <= d && budget_left(); ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                simplex[i].x[k] = simplex[0].x[k] + 0.5 * (simplex[i].x[k] - simplex[0].x[k]);
            }
            simplex[i].value = fn(simplex[i].x);
        }
    }

    const Vertex b = best_vertex();
    return finish_entry(table, solutions, p, b.x, fn.evaluations(), wall_seconds(t0));
}

VariationalParams interp_start(const VariationalParams& prev) {
    const int p = prev.p();
    if (p < 1 || static_cast<int>(prev.betas.size()) != p) {
        throw ValidationError("interp_start: malformed parameter vector");
    }
    auto stretch = [p](const std::vector<double>& v) {
        std::vector<double> out(static_cast<std::size_t>(p) + 1);
        for (int j = 0; j <= p; ++j) {
            const double lo = (j == 0) ? 0.0 : v[static_cast<std::size_t>(j - 1)];
            const double hi = (j == p) ? 0.0 : v[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(j)] =
                (static_cast<double>(j) * lo + static_cast<double>(p - j) * hi) /
                static_cast<double>(p);
        }
        return out;
    };
    VariationalParams next;
    next.gammas = stretch(prev.gammas);
    next.betas = stretch(prev.betas);
    return next;
}

OptimizationTrace interp_pipeline(const CostTable& table,
                                  const std::vector<std::uint64_t>& solutions, int p_max,
                                  const TraceEntry& base) {
    if (base.p != 1) {
        throw ValidationError("interp_pipeline: base entry must be a p = 1 optimum");
    }
    if (p_max < 1) {
        throw ValidationError("interp_pipeline: p_max must be at least 1");
    }
    OptimizationTrace trace{base};
    for (int p = 2; p <= p_max; ++p) {
        const TraceEntry& prev = trace.back();
        VariationalParams start = interp_start({prev.gammas, prev.betas});
        trace.push_back(nelder_mead(table, solutions, start));
    }
    return trace;
}

std::string trace_to_json(const OptimizationTrace& trace) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& entry : trace) {
        nlohmann::ordered_json e;
        e["p"] = entry.p;
        e["gammas"] = entry.gammas;
        e["betas"] = entry.betas;
        e["E"] = entry.e;
        e["F"] = entry.f;
        e["evals"] = entry.evaluations;
        e["seconds"] = entry.seconds;
        arr.push_back(std::move(e));
    }
    return arr.dump();
}

OptimizationTrace trace_from_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("trace JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw ParseError("trace JSON: top level must be an array");
    }
    OptimizationTrace trace;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& e = doc[i];
        const std::string at = "trace JSON: entry " + std::to_string(i);
        if (!e.is_object() || !e.contains("p") || !e.contains("gammas") ||
            !e.contains("betas")) {
            throw ParseError(at + " must be an object with p, gammas and betas");
        }
        TraceEntry entry;
        entry.p = e["p"].get<int>();
        entry.gammas = e["gammas"].get<std::vector<double>>();
        entry.betas = e["betas"].get<std::vector<double>>();
        if (entry.p < 1 || entry.gammas.size() != static_cast<std::size_t>(entry.p) ||
            entry.betas.size() != static_cast<std::size_t>(entry.p)) {
            throw ParseError(at + ": parameter lengths do not match p");
        }
        entry.e = e.value("E", 0.0);
        entry.f = e.value("F", 0.0);
        entry.evaluations = e.value("evals", std::uint64_t{0});
        entry.seconds = e.value("seconds", 0.0);
        trace.push_back(std::move(entry));
    }
    return trace;
}

}  // namespace xcq
