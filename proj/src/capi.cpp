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

#include "xcqaoa.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "xcq/analysis.hpp"
#include "xcq/anneal.hpp"
#include "xcq/errors.hpp"
#include "xcq/instance.hpp"
#include "xcq/ising.hpp"
#include "xcq/noise.hpp"
#include "xcq/optimizer.hpp"
#include "xcq/simulator.hpp"

struct xcq_instance {
    xcq::ExactCoverInstance inst;
};

struct xcq_ising {
    xcq::IsingModel model;
    // Built on first simulation use; 2^n entries, so never eager.
    mutable std::unique_ptr<xcq::CostTable> table;

    const xcq::CostTable& cost_table() const {
        if (!table) {
            table = std::make_unique<xcq::CostTable>(xcq::CostTable::build(model));
        }
        return *table;
    }
};

struct xcq_state {
    xcq::StateVector state;
};

struct xcq_trace {
    xcq::OptimizationTrace trace;
};

namespace {

thread_local std::string t_last_error;

xcq_status fail(xcq_status code, const char* what) {
    t_last_error = what;
    return code;
}

// Runs fn inside the exception barrier and maps core exceptions to codes.
template <typename Fn>
xcq_status guarded(Fn&& fn) {
    try {
        fn();
        return XCQ_OK;
    } catch (const xcq::ParseError& e) {
        return fail(XCQ_ERROR_PARSE, e.what());
    } catch (const xcq::ValidationError& e) {
        return fail(XCQ_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const xcq::LimitError& e) {
        return fail(XCQ_ERROR_LIMIT, e.what());
    } catch (const xcq::GenerationError& e) {
        return fail(XCQ_ERROR_GENERATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(XCQ_ERROR_LIMIT, "out of memory");
    } catch (const std::exception& e) {
        return fail(XCQ_ERROR_RUNTIME, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

// Trivially-copyable payloads only; released by xcq_buffer_free.
template <typename T>
T* copy_buffer(const std::vector<T>& v) {
    T* out = static_cast<T*>(::operator new[](v.size() * sizeof(T)));
    if (!v.empty()) {
        std::memcpy(out, v.data(), v.size() * sizeof(T));
    }
    return out;
}

void put_solutions(const std::vector<std::uint64_t>& masks, uint64_t** solutions_out,
                   size_t* count_out) {
    *solutions_out = copy_buffer(masks);
    *count_out = masks.size();
}

std::vector<std::uint64_t> solution_vector(const uint64_t* solutions, size_t n_solutions) {
    if (solutions == nullptr && n_solutions > 0) {
        throw xcq::ValidationError("null solution array");
    }
    return {solutions, solutions + n_solutions};
}

xcq::VariationalParams make_params(const double* gammas, const double* betas, int p) {
    if (p < 1) {
        throw xcq::ValidationError("at least one layer required");
    }
    if (gammas == nullptr || betas == nullptr) {
        throw xcq::ValidationError("null parameter array");
    }
    xcq::VariationalParams params;
    params.gammas.assign(gammas, gammas + p);
    params.betas.assign(betas, betas + p);
    return params;
}

const xcq::TraceEntry& trace_at(const xcq_trace* trace, int index) {
    if (trace == nullptr) {
        throw xcq::ValidationError("null trace");
    }
    if (index < 0 || index >= static_cast<int>(trace->trace.size())) {
        throw xcq::ValidationError("trace index out of range");
    }
    return trace->trace[static_cast<std::size_t>(index)];
}

}  // namespace

extern "C" {

const char* xcq_version(void) {
    return "0.1.0";
}

const char* xcq_last_error(void) {
    return t_last_error.c_str();
}

void xcq_string_free(char* s) {
    delete[] s;
}

void xcq_buffer_free(void* p) {
    ::operator delete[](p);
}

int xcq_max_qubits(void) {
    return xcq::max_qubits();
}

xcq_status xcq_set_max_qubits(int n) {
    return guarded([&] { xcq::set_max_qubits(n); });
}

/* ---- instance ---------------------------------------------------------- */

xcq_status xcq_instance_parse(const char* json_text, xcq_instance** out) {
    return guarded([&] {
        if (json_text == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *out = new xcq_instance{xcq::parse_instance(json_text)};
    });
}

xcq_status xcq_instance_generate(int n_flights, int n_routes, int planted_size,
                                 uint64_t seed, xcq_instance** out) {
    return guarded([&] {
        if (out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *out = new xcq_instance{
            xcq::generate_planted(n_flights, n_routes, planted_size, seed)};
    });
}

void xcq_instance_free(xcq_instance* inst) {
    delete inst;
}

xcq_status xcq_instance_to_json(const xcq_instance* inst, char** json_out) {
    return guarded([&] {
        if (inst == nullptr || json_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *json_out = copy_string(xcq::instance_to_json(inst->inst));
    });
}

int xcq_instance_n_routes(const xcq_instance* inst) {
    return inst == nullptr ? 0 : inst->inst.n_routes();
}

int xcq_instance_n_flights(const xcq_instance* inst) {
    return inst == nullptr ? 0 : inst->inst.n_flights;
}

xcq_status xcq_instance_solve(const xcq_instance* inst, int oracle_limit,
                              uint64_t** solutions_out, size_t* count_out) {
    return guarded([&] {
        if (inst == nullptr || solutions_out == nullptr || count_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const int limit = oracle_limit > 0 ? oracle_limit : xcq::kDefaultOracleLimit;
        const auto sets = xcq::solve_exact(inst->inst, limit);
        std::vector<std::uint64_t> masks;
        masks.reserve(sets.size());
        for (const auto& s : sets) {
            masks.push_back(xcq::routes_to_mask(s));
        }
        put_solutions(masks, solutions_out, count_out);
    });
}

xcq_status xcq_instance_solution_masks(const xcq_instance* inst, int oracle_limit,
                                       uint64_t** solutions_out, size_t* count_out) {
    return guarded([&] {
        if (inst == nullptr || solutions_out == nullptr || count_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const int limit = oracle_limit > 0 ? oracle_limit : xcq::kDefaultOracleLimit;
        put_solutions(xcq::solution_masks(inst->inst, limit), solutions_out,
                             count_out);
    });
}

xcq_status xcq_instance_known_solutions(const xcq_instance* inst, uint64_t** solutions_out,
                                        size_t* count_out) {
    return guarded([&] {
        if (inst == nullptr || solutions_out == nullptr || count_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        std::vector<std::uint64_t> masks;
        masks.reserve(inst->inst.known_solutions.size());
        for (const auto& s : inst->inst.known_solutions) {
            masks.push_back(xcq::routes_to_mask(s));
        }
        put_solutions(masks, solutions_out, count_out);
    });
}

xcq_status xcq_instance_graph_stats(const xcq_instance* inst, double* valency_mean,
                                    double* valency_std, size_t* n_edges) {
    return guarded([&] {
        if (inst == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const auto graph = xcq::to_graph(inst->inst);
        const auto stats = xcq::valency_stats(graph);
        if (valency_mean != nullptr) {
            *valency_mean = stats.mean;
        }
        if (valency_std != nullptr) {
            *valency_std = stats.std_dev;
        }
        if (n_edges != nullptr) {
            *n_edges = graph.edges.size();
        }
    });
}

/* ---- ising -------------------------------------------------------------- */

xcq_status xcq_ising_build(const xcq_instance* inst, xcq_ising** out) {
    return guarded([&] {
        if (inst == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        auto handle = std::make_unique<xcq_ising>();
        handle->model = xcq::build_ising(inst->inst);
        *out = handle.release();
    });
}

void xcq_ising_free(xcq_ising* model) {
    delete model;
}

int xcq_ising_n(const xcq_ising* model) {
    return model == nullptr ? 0 : model->model.n;
}

double xcq_ising_offset(const xcq_ising* model) {
    return model == nullptr ? 0.0 : model->model.offset;
}

xcq_status xcq_ising_to_json(const xcq_ising* model, char** json_out) {
    return guarded([&] {
        if (model == nullptr || json_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *json_out = copy_string(xcq::ising_to_json(model->model));
    });
}

xcq_status xcq_ising_energy(const xcq_ising* model, uint64_t x, double* energy_out) {
    return guarded([&] {
        if (model == nullptr || energy_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *energy_out = xcq::energy(model->model, x);
    });
}

xcq_status xcq_penalty_energy(const xcq_instance* inst, uint64_t x, int64_t* energy_out) {
    return guarded([&] {
        if (inst == nullptr || energy_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *energy_out = xcq::penalty_energy(inst->inst, x);
    });
}

/* ---- simulator ----------------------------------------------------------- */

xcq_status xcq_run_qaoa(const xcq_ising* model, const double* gammas, const double* betas,
                        int p, xcq_state** out) {
    return guarded([&] {
        if (model == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *out = new xcq_state{
            xcq::run_qaoa(model->cost_table(), make_params(gammas, betas, p))};
    });
}

void xcq_state_free(xcq_state* state) {
    delete state;
}

xcq_status xcq_state_expectation(const xcq_state* state, const xcq_ising* model,
                                 double* out) {
    return guarded([&] {
        if (state == nullptr || model == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *out = xcq::expectation(state->state, model->cost_table());
    });
}

xcq_status xcq_state_success_probability(const xcq_state* state, const uint64_t* solutions,
                                         size_t n_solutions, double* out) {
    return guarded([&] {
        if (state == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *out = xcq::success_probability(state->state,
                                        solution_vector(solutions, n_solutions));
    });
}

xcq_status xcq_state_histogram(const xcq_state* state, const xcq_ising* model,
                               int64_t** energies_out, double** probs_out,
                               size_t* count_out) {
    return guarded([&] {
        if (state == nullptr || model == nullptr || energies_out == nullptr ||
            probs_out == nullptr || count_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const auto hist = xcq::cost_histogram(state->state, model->cost_table());
        std::vector<std::int64_t> energies;
        std::vector<double> probs;
        energies.reserve(hist.size());
        probs.reserve(hist.size());
        for (const auto& [e, prob] : hist) {
            energies.push_back(e);
            probs.push_back(prob);
        }
        *energies_out = copy_buffer(energies);
        *probs_out = copy_buffer(probs);
        *count_out = hist.size();
    });
}

xcq_status xcq_state_sample(const xcq_state* state, uint64_t shots, uint64_t seed,
                            uint64_t** draws_out) {
    return guarded([&] {
        if (state == nullptr || draws_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *draws_out = copy_buffer(xcq::sample(state->state, shots, seed));
    });
}

xcq_status xcq_run_noisy(const xcq_ising* model, const double* gammas, const double* betas,
                         int p, double eta, uint64_t trajectories, uint64_t seed,
                         int per_layer_only, const uint64_t* solutions, size_t n_solutions,
                         int threads, double* mean_out, double* std_error_out) {
    return guarded([&] {
        if (model == nullptr || mean_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        xcq::NoiseConfig cfg;
        cfg.eta = eta;
        cfg.trajectories = trajectories;
        cfg.seed = seed;
        cfg.placement = per_layer_only != 0 ? xcq::NoisePlacement::kAfterEachLayer
                                            : xcq::NoisePlacement::kAfterEachHalfLayer;
        cfg.threads = threads;
        const auto result =
            xcq::run_noisy(model->cost_table(), make_params(gammas, betas, p), cfg,
                           solution_vector(solutions, n_solutions));
        *mean_out = result.mean;
        if (std_error_out != nullptr) {
            *std_error_out = result.std_error;
        }
    });
}

xcq_status xcq_anneal(const xcq_ising* model, const uint64_t* solutions, size_t n_solutions,
                      double total_time, double dt, int convergence_check, double* f_gs_out,
                      double* f_gs_refined_out, int* converged_out) {
    return guarded([&] {
        if (model == nullptr || f_gs_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        xcq::AnnealConfig cfg;
        cfg.total_time = total_time;
        cfg.dt = dt;
        cfg.convergence_check = convergence_check != 0;
        const auto result = xcq::anneal(model->cost_table(),
                                        solution_vector(solutions, n_solutions), cfg);
        *f_gs_out = result.f_gs;
        if (f_gs_refined_out != nullptr) {
            *f_gs_refined_out = result.f_gs_refined;
        }
        if (converged_out != nullptr) {
            *converged_out = result.converged ? 1 : 0;
        }
    });
}

/* ---- optimizer ------------------------------------------------------------ */

xcq_status xcq_landscape(const xcq_ising* model, const uint64_t* solutions,
                         size_t n_solutions, int resolution, int threads, double** rows_out,
                         size_t* n_rows_out) {
    return guarded([&] {
        if (model == nullptr || rows_out == nullptr || n_rows_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const auto grid =
            xcq::landscape_scan(model->cost_table(), solution_vector(solutions, n_solutions),
                                resolution, threads);
        const std::size_t cells = grid.e_values.size();
        std::vector<double> rows(cells * 4);
        for (int ig = 0; ig < grid.resolution; ++ig) {
            for (int ib = 0; ib < grid.resolution; ++ib) {
                const std::size_t cell = static_cast<std::size_t>(ig) *
                                             static_cast<std::size_t>(grid.resolution) +
                                         static_cast<std::size_t>(ib);
                rows[cell * 4 + 0] = grid.gamma_axis[static_cast<std::size_t>(ig)];
                rows[cell * 4 + 1] = grid.beta_axis[static_cast<std::size_t>(ib)];
                rows[cell * 4 + 2] = grid.e_values[cell];
                rows[cell * 4 + 3] = grid.f_values[cell];
            }
        }
        *rows_out = copy_buffer(rows);
        *n_rows_out = cells;
    });
}

xcq_status xcq_landscape_csv(const xcq_ising* model, const uint64_t* solutions,
                             size_t n_solutions, int resolution, int threads,
                             char** csv_out) {
    return guarded([&] {
        if (model == nullptr || csv_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const auto grid =
            xcq::landscape_scan(model->cost_table(), solution_vector(solutions, n_solutions),
                                resolution, threads);
        *csv_out = copy_string(xcq::landscape_to_csv(grid));
    });
}

xcq_status xcq_multistart(const xcq_ising* model, const uint64_t* solutions,
                          size_t n_solutions, int p, int n_starts, uint64_t seed,
                          int threads, xcq_trace** out) {
    return guarded([&] {
        if (model == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        xcq::MultistartConfig cfg;
        cfg.n_starts = n_starts;
        cfg.seed = seed;
        cfg.threads = threads;
        const auto entry = xcq::multistart_optimize(
            model->cost_table(), solution_vector(solutions, n_solutions), p, cfg);
        *out = new xcq_trace{xcq::OptimizationTrace{entry}};
    });
}

xcq_status xcq_interp_pipeline(const xcq_ising* model, const uint64_t* solutions,
                               size_t n_solutions, int p_max, int n_starts, uint64_t seed,
                               int threads, xcq_trace** out) {
    return guarded([&] {
        if (model == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        const auto sols = solution_vector(solutions, n_solutions);
        xcq::MultistartConfig cfg;
        cfg.n_starts = n_starts;
        cfg.seed = seed;
        cfg.threads = threads;
        const auto base =
            xcq::multistart_optimize(model->cost_table(), sols, 1, cfg);
        *out = new xcq_trace{
            xcq::interp_pipeline(model->cost_table(), sols, p_max, base)};
    });
}

void xcq_trace_free(xcq_trace* trace) {
    delete trace;
}

int xcq_trace_size(const xcq_trace* trace) {
    return trace == nullptr ? 0 : static_cast<int>(trace->trace.size());
}

xcq_status xcq_trace_entry(const xcq_trace* trace, int index, int* p_out, double* e_out,
                           double* f_out, uint64_t* evaluations_out, double* seconds_out) {
    return guarded([&] {
        const auto& entry = trace_at(trace, index);
        if (p_out != nullptr) {
            *p_out = entry.p;
        }
        if (e_out != nullptr) {
            *e_out = entry.e;
        }
        if (f_out != nullptr) {
            *f_out = entry.f;
        }
        if (evaluations_out != nullptr) {
            *evaluations_out = entry.evaluations;
        }
        if (seconds_out != nullptr) {
            *seconds_out = entry.seconds;
        }
    });
}

xcq_status xcq_trace_params(const xcq_trace* trace, int index, double* gammas_out,
                            double* betas_out) {
    return guarded([&] {
        const auto& entry = trace_at(trace, index);
        if (gammas_out == nullptr || betas_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        std::memcpy(gammas_out, entry.gammas.data(), entry.gammas.size() * sizeof(double));
        std::memcpy(betas_out, entry.betas.data(), entry.betas.size() * sizeof(double));
    });
}

xcq_status xcq_trace_to_json(const xcq_trace* trace, char** json_out) {
    return guarded([&] {
        if (trace == nullptr || json_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *json_out = copy_string(xcq::trace_to_json(trace->trace));
    });
}

xcq_status xcq_trace_parse(const char* json_text, xcq_trace** out) {
    return guarded([&] {
        if (json_text == nullptr || out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *out = new xcq_trace{xcq::trace_from_json(json_text)};
    });
}

/* ---- analysis -------------------------------------------------------------- */

xcq_status xcq_required_measurements(double f, double eps, int64_t* m_out) {
    return guarded([&] {
        if (m_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *m_out = xcq::required_measurements(f, eps);
    });
}

xcq_status xcq_qaoa_total_time(const double* gammas, const double* betas, int p,
                               double* time_out) {
    return guarded([&] {
        if (time_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *time_out = xcq::qaoa_total_time(make_params(gammas, betas, p));
    });
}

xcq_status xcq_tts_qaoa(const xcq_trace* trace, double p_d, char** report_json_out) {
    return guarded([&] {
        if (trace == nullptr || report_json_out == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        *report_json_out = copy_string(xcq::tts_report_to_json(xcq::tts_qaoa(trace->trace, p_d)));
    });
}

xcq_status xcq_tts_qa(const xcq_ising* model, const uint64_t* solutions, size_t n_solutions,
                      const double* t_grid, size_t n_t, double p_d, double dt, int threads,
                      char** report_json_out, char** sweep_csv_out) {
    return guarded([&] {
        if (model == nullptr) {
            throw xcq::ValidationError("null argument");
        }
        std::vector<double> grid;
        if (n_t == 0) {
            grid = xcq::default_t_grid();
        } else {
            if (t_grid == nullptr) {
                throw xcq::ValidationError("null schedule grid");
            }
            grid.assign(t_grid, t_grid + n_t);
        }
        const auto result =
            xcq::tts_qa(model->cost_table(), solution_vector(solutions, n_solutions), grid,
                        p_d, dt, false, threads);
        if (!result.finite) {
            throw xcq::Error("tts_qa: no finite time to solution on the grid");
        }
        if (report_json_out != nullptr) {
            *report_json_out = copy_string(xcq::tts_report_to_json(result.best));
        }
        if (sweep_csv_out != nullptr) {
            *sweep_csv_out = copy_string(xcq::tts_sweep_to_csv(result.sweep));
        }
    });
}

}  // extern "C"
