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

#ifndef XCQ_SIMULATOR_HPP
#define XCQ_SIMULATOR_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "xcq/ising.hpp"

namespace xcq {

// Amplitudes of the simulated register; basis-state index i carries route r
// in bit r.
struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amps;

    std::size_t size() const { return amps.size(); }
};

struct VariationalParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int p() const { return static_cast<int>(gammas.size()); }
};

// Diagonal of the cost Hamiltonian, folded to integer levels so a phase
// layer is a lookup instead of 2^n sincos calls. e_min + level_of[x] is the
// exact integer energy of basis state x (offset included).
class CostTable {
  public:
    static CostTable build(const IsingModel& m);

    int n() const { return n_; }
    double offset() const { return offset_; }
    std::int64_t e_min() const { return e_min_; }
    std::int64_t e_max() const { return e_min_ + n_levels_ - 1; }
    int n_levels() const { return n_levels_; }
    std::int64_t energy_int(std::size_t x) const { return e_min_ + level_of_[x]; }
    const std::vector<std::uint32_t>& levels() const { return level_of_; }
    std::uint64_t degeneracy(int level) const { return level_counts_[static_cast<std::size_t>(level)]; }

  private:
    int n_ = 0;
    double offset_ = 0.0;
    std::int64_t e_min_ = 0;
    int n_levels_ = 0;
    std::vector<std::uint32_t> level_of_;
    std::vector<std::uint64_t> level_counts_;
};

// Largest register prepare_plus will allocate (2^26 amplitudes = 1 GiB).
int max_qubits();
void set_max_qubits(int n);

// |+>^n: every amplitude 2^(-n/2).
StateVector prepare_plus(int n);

// amp[x] *= exp(-i gamma (E(x) - offset)); the absorbed constant is a
// global phase and stays out of the gate.
void apply_cost_phase(StateVector& s, double gamma, const CostTable& table);

// exp(-i beta X) on every qubit, as n in-place butterfly passes.
void apply_mixer(StateVector& s, double beta);

// V(beta_p) U(gamma_p) ... V(beta_1) U(gamma_1) |+>^n.
StateVector run_qaoa(const CostTable& table, const VariationalParams& params);

// <H_C>, offset included.
double expectation(const StateVector& s, const CostTable& table);

// Summed |amplitude|^2 over the solution basis states.
double success_probability(const StateVector& s, const std::vector<std::uint64_t>& solutions);

// Probability of measuring each energy; keys are every achievable level.
std::map<std::int64_t, double> cost_histogram(const StateVector& s, const CostTable& table);

// shots i.i.d. computational-basis measurements, deterministic per seed.
std::vector<std::uint64_t> sample(const StateVector& s, std::uint64_t shots,
                                  std::uint64_t seed);

double norm_squared(const StateVector& s);

}  // namespace xcq

#endif
