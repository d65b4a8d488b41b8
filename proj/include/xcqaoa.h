/* Copyright 2026 The xcqaoa developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the xcqaoa shared library.
 *
 * The library solves Exact Cover instances (routes over flights, every
 * flight covered exactly once) by exact state-vector simulation of QAOA,
 * plus the surrounding analysis: Ising reduction, landscape scans,
 * warm-started variational optimization, Monte-Carlo depolarizing noise,
 * quantum-annealing integration and time-to-solution estimates.
 *
 * Conventions:
 *   - Route r is qubit r; bit r of a basis-state index is route r's
 *     selection variable (route 0 = least significant bit). Solution sets
 *     are passed around as such 64-bit basis-state indices.
 *   - Functions returning xcq_status set a thread-local message readable
 *     via xcq_last_error() on failure; out-parameters are untouched then.
 *   - Strings returned through char** are heap-allocated; release them
 *     with xcq_string_free. Arrays returned through pointer-out params are
 *     released with xcq_buffer_free.
 *   - Handles are not thread-safe for concurrent mutation; distinct
 *     handles are independent.
 */

#ifndef XCQAOA_H
#define XCQAOA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define XCQ_API __declspec(dllexport)
#else
#define XCQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xcq_status {
    XCQ_OK = 0,
    XCQ_ERROR_INVALID_ARGUMENT = 1, /* argument outside an operation's domain */
    XCQ_ERROR_PARSE = 2,            /* malformed input text */
    XCQ_ERROR_LIMIT = 3,            /* qubit cap or oracle limit exceeded */
    XCQ_ERROR_GENERATION = 4,       /* instance generation failed */
    XCQ_ERROR_RUNTIME = 5           /* anything else */
} xcq_status;

typedef struct xcq_instance xcq_instance;
typedef struct xcq_ising xcq_ising;
typedef struct xcq_state xcq_state;
typedef struct xcq_trace xcq_trace;

XCQ_API const char* xcq_version(void);

/* Message for the most recent failure on this thread; valid until the next
 * failing call on the same thread. */
XCQ_API const char* xcq_last_error(void);

XCQ_API void xcq_string_free(char* s);
XCQ_API void xcq_buffer_free(void* p);

/* Register-size cap for simulation (default 26 qubits = 1 GiB amplitudes). */
XCQ_API int xcq_max_qubits(void);
XCQ_API xcq_status xcq_set_max_qubits(int n);

/* ---- Exact Cover instances -------------------------------------------- */

/* Accepts {"n_flights": int, "routes": [[int,...],...],
 *          "known_solutions": [[int,...],...]} (known_solutions optional). */
XCQ_API xcq_status xcq_instance_parse(const char* json_text, xcq_instance** out);

/* Planted-solution generator: flights are partitioned into planted_size
 * disjoint routes and padded with random decoys until the planted cover is
 * the unique solution. Deterministic in seed. */
XCQ_API xcq_status xcq_instance_generate(int n_flights, int n_routes, int planted_size,
                                         uint64_t seed, xcq_instance** out);

XCQ_API void xcq_instance_free(xcq_instance* inst);
XCQ_API xcq_status xcq_instance_to_json(const xcq_instance* inst, char** json_out);
XCQ_API int xcq_instance_n_routes(const xcq_instance* inst);
XCQ_API int xcq_instance_n_flights(const xcq_instance* inst);

/* Every exact cover, as basis-state indices in ascending route-set order.
 * oracle_limit <= 0 selects the default (30 routes). */
XCQ_API xcq_status xcq_instance_solve(const xcq_instance* inst, int oracle_limit,
                                      uint64_t** solutions_out, size_t* count_out);

/* Solution set for simulation: the oracle result when the route count is
 * within oracle_limit, otherwise the recorded known solutions. */
XCQ_API xcq_status xcq_instance_solution_masks(const xcq_instance* inst, int oracle_limit,
                                               uint64_t** solutions_out, size_t* count_out);

XCQ_API xcq_status xcq_instance_known_solutions(const xcq_instance* inst,
                                                uint64_t** solutions_out, size_t* count_out);

/* Route-overlap graph summary: mean/population-std vertex valency and edge
 * count. */
XCQ_API xcq_status xcq_instance_graph_stats(const xcq_instance* inst, double* valency_mean,
                                            double* valency_std, size_t* n_edges);

/* ---- Ising reduction --------------------------------------------------- */

XCQ_API xcq_status xcq_ising_build(const xcq_instance* inst, xcq_ising** out);
XCQ_API void xcq_ising_free(xcq_ising* model);
XCQ_API int xcq_ising_n(const xcq_ising* model);
XCQ_API double xcq_ising_offset(const xcq_ising* model);

/* {"n":..., "J": [[...],...], "h": [...], "offset":...} */
XCQ_API xcq_status xcq_ising_to_json(const xcq_ising* model, char** json_out);

/* Ising energy of basis state x (offset included; a non-negative integer). */
XCQ_API xcq_status xcq_ising_energy(const xcq_ising* model, uint64_t x, double* energy_out);

/* Reference energy sum_f (cover_f(x) - 1)^2 straight off the incidence
 * structure; agrees with xcq_ising_energy bit for bit. */
XCQ_API xcq_status xcq_penalty_energy(const xcq_instance* inst, uint64_t x,
                                      int64_t* energy_out);

/* ---- State-vector simulation ------------------------------------------- */

/* V(beta_p) U(gamma_p) ... V(beta_1) U(gamma_1) |+>^n; gammas and betas hold
 * p entries each. */
XCQ_API xcq_status xcq_run_qaoa(const xcq_ising* model, const double* gammas,
                                const double* betas, int p, xcq_state** out);

XCQ_API void xcq_state_free(xcq_state* state);
XCQ_API xcq_status xcq_state_expectation(const xcq_state* state, const xcq_ising* model,
                                         double* out);
XCQ_API xcq_status xcq_state_success_probability(const xcq_state* state,
                                                 const uint64_t* solutions,
                                                 size_t n_solutions, double* out);

/* Probability of each cost value; parallel arrays of achievable energies
 * and probabilities. */
XCQ_API xcq_status xcq_state_histogram(const xcq_state* state, const xcq_ising* model,
                                       int64_t** energies_out, double** probs_out,
                                       size_t* count_out);

/* shots computational-basis measurements, deterministic per seed. */
XCQ_API xcq_status xcq_state_sample(const xcq_state* state, uint64_t shots, uint64_t seed,
                                    uint64_t** draws_out);

/* Monte-Carlo depolarizing noise: per noise round each qubit suffers X, Y
 * or Z with probability eta/3 each. per_layer_only = 0 inserts a round
 * after every cost phase and every mixer (2p rounds), nonzero only after
 * each full layer (p rounds). Returns the trajectory mean and its standard
 * error. */
XCQ_API xcq_status xcq_run_noisy(const xcq_ising* model, const double* gammas,
                                 const double* betas, int p, double eta,
                                 uint64_t trajectories, uint64_t seed, int per_layer_only,
                                 const uint64_t* solutions, size_t n_solutions, int threads,
                                 double* mean_out, double* std_error_out);

/* Linear-schedule quantum annealing from |+>^n over time total_time,
 * Strang-split with step dt. When convergence_check is nonzero the run is
 * repeated at dt/2: *converged_out reports whether the ground-state
 * probability moved by at most 1e-3, and *f_gs_refined_out the refined
 * value. Either refined pointer may be NULL. */
XCQ_API xcq_status xcq_anneal(const xcq_ising* model, const uint64_t* solutions,
                              size_t n_solutions, double total_time, double dt,
                              int convergence_check, double* f_gs_out,
                              double* f_gs_refined_out, int* converged_out);

/* ---- Variational optimization ------------------------------------------ */

/* p = 1 grid scan over [0, pi] x [0, pi]. rows_out receives
 * resolution*resolution quadruples (gamma, beta, E, F), gamma-major. */
XCQ_API xcq_status xcq_landscape(const xcq_ising* model, const uint64_t* solutions,
                                 size_t n_solutions, int resolution, int threads,
                                 double** rows_out, size_t* n_rows_out);

/* Same scan serialized as "gamma,beta,E,F" CSV. */
XCQ_API xcq_status xcq_landscape_csv(const xcq_ising* model, const uint64_t* solutions,
                                     size_t n_solutions, int resolution, int threads,
                                     char** csv_out);

/* Best of n_starts box-projected quasi-Newton descents at level p; the
 * result is a single-entry trace. */
XCQ_API xcq_status xcq_multistart(const xcq_ising* model, const uint64_t* solutions,
                                  size_t n_solutions, int p, int n_starts, uint64_t seed,
                                  int threads, xcq_trace** out);

/* Multistart at p = 1 followed by interpolation-seeded Nelder-Mead up to
 * p_max; one trace entry per level. */
XCQ_API xcq_status xcq_interp_pipeline(const xcq_ising* model, const uint64_t* solutions,
                                       size_t n_solutions, int p_max, int n_starts,
                                       uint64_t seed, int threads, xcq_trace** out);

XCQ_API void xcq_trace_free(xcq_trace* trace);
XCQ_API int xcq_trace_size(const xcq_trace* trace);
XCQ_API xcq_status xcq_trace_entry(const xcq_trace* trace, int index, int* p_out,
                                   double* e_out, double* f_out, uint64_t* evaluations_out,
                                   double* seconds_out);

/* Copies the level's parameters into caller arrays of at least p doubles. */
XCQ_API xcq_status xcq_trace_params(const xcq_trace* trace, int index, double* gammas_out,
                                    double* betas_out);

/* JSON array of {p, gammas, betas, E, F, evals, seconds}. */
XCQ_API xcq_status xcq_trace_to_json(const xcq_trace* trace, char** json_out);
XCQ_API xcq_status xcq_trace_parse(const char* json_text, xcq_trace** out);

/* ---- Analysis ----------------------------------------------------------- */

/* Smallest m with m > log(eps)/log(1 - f). */
XCQ_API xcq_status xcq_required_measurements(double f, double eps, int64_t* m_out);

/* Total schedule time sum_i |gamma_i| + |beta_i|, betas reduced mod pi to
 * their minimal-magnitude representative. */
XCQ_API xcq_status xcq_qaoa_total_time(const double* gammas, const double* betas, int p,
                                       double* time_out);

/* Best time-to-solution over the trace levels, as
 * {"algorithm","schedule","F","p_d","tts"} JSON. */
XCQ_API xcq_status xcq_tts_qaoa(const xcq_trace* trace, double p_d, char** report_json_out);

/* Anneals at every grid time and minimizes the annealing TTS. Emits the best
 * point as JSON and the full sweep as "T,F_gs,tts" CSV; either out pointer
 * may be NULL. n_t = 0 selects the default 16-point log grid on [0.5, 200]. */
XCQ_API xcq_status xcq_tts_qa(const xcq_ising* model, const uint64_t* solutions,
                              size_t n_solutions, const double* t_grid, size_t n_t,
                              double p_d, double dt, int threads, char** report_json_out,
                              char** sweep_csv_out);

#ifdef __cplusplus
}
#endif

#endif /* XCQAOA_H */
