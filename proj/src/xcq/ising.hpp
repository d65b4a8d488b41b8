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

#ifndef XCQ_ISING_HPP
#define XCQ_ISING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xcq/instance.hpp"

namespace xcq {

// Classical data of the cost Hamiltonian: symmetric couplings J with zero
// diagonal, fields h, and the absorbed constant. Every entry is a
// half-integer, and the total energy of any bitstring is a non-negative
// integer.
struct IsingModel {
    int n = 0;
    std::vector<double> j;  // dense n*n, row-major
    std::vector<double> h;
    double offset = 0.0;

    double coupling(int r, int rp) const {
        return j[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(rp)];
    }
};

// J_rr' = 1/2 sum_f a_fr a_fr' (r != r'); h_r = 1/2 sum_f a_fr (m_f - 2)
// with m_f the number of routes covering flight f; the diagonal of the raw
// coupling matrix and the squared-constraint constant land in offset, so
// that energy() reproduces the count-based penalty exactly.
IsingModel build_ising(const ExactCoverInstance& inst);

// sum_{r<r'} J_rr' s_r s_r' + sum_r h_r s_r + offset with s_r = 2 x_r - 1.
double energy(const IsingModel& m, std::uint64_t x);

// Reference route: sum_f (cover_f(x) - 1)^2 evaluated on the incidence
// structure directly, in integer arithmetic.
std::int64_t penalty_energy(const ExactCoverInstance& inst, std::uint64_t x);

// Energy of every basis state, integer-exact, indexed by basis state. The
// walk is a Gray-code sweep over the couplings, so it costs O(n 2^n).
std::vector<std::int64_t> energy_table(const IsingModel& m);

inline constexpr int kDefaultSpectrumLimit = 25;

// Degeneracy count per energy level.
std::map<std::int64_t, std::uint64_t> spectrum(const IsingModel& m,
                                               int exhaustive_limit = kDefaultSpectrumLimit);

// {"n": ..., "J": [[...],...], "h": [...], "offset": ...}
std::string ising_to_json(const IsingModel& m);

}  // namespace xcq

#endif
