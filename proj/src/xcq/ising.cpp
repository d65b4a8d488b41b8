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

#include "xcq/ising.hpp"

#include <bit>
#include <cmath>

#include "json.hpp"
#include "xcq/errors.hpp"

namespace xcq {

IsingModel build_ising(const ExactCoverInstance& inst) {
    const int n = inst.n_routes();
    const std::size_t nn = static_cast<std::size_t>(n);

    IsingModel m;
    m.n = n;
    m.j.assign(nn * nn, 0.0);
    m.h.assign(nn, 0.0);

    // m_f = number of routes covering flight f.
    std::vector<int> cover_count(static_cast<std::size_t>(inst.n_flights), 0);
    for (const auto& route : inst.routes) {
        for (int f : route) {
            ++cover_count[static_cast<std::size_t>(f)];
        }
    }

    double trace_raw = 0.0;
    for (int r = 0; r < n; ++r) {
        const auto& route = inst.routes[static_cast<std::size_t>(r)];
        trace_raw += 0.5 * static_cast<double>(route.size());
        for (int f : route) {
            m.h[static_cast<std::size_t>(r)] +=
                0.5 * static_cast<double>(cover_count[static_cast<std::size_t>(f)] - 2);
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int rp = r + 1; rp < n; ++rp) {
            const auto& a = inst.routes[static_cast<std::size_t>(r)];
            const auto& b = inst.routes[static_cast<std::size_t>(rp)];
            int shared = 0;
            for (std::size_t i = 0, k = 0; i < a.size() && k < b.size();) {
                if (a[i] < b[k]) {
                    ++i;
                } else if (a[i] > b[k]) {
                    ++k;
                } else {
                    ++shared;
                    ++i;
                    ++k;
                }
            }
            const double jv = 0.5 * static_cast<double>(shared);
            m.j[static_cast<std::size_t>(r) * nn + static_cast<std::size_t>(rp)] = jv;
            m.j[static_cast<std::size_t>(rp) * nn + static_cast<std::size_t>(r)] = jv;
        }
    }

    double constant = 0.0;
    for (int f = 0; f < inst.n_flights; ++f) {
        const double d = static_cast<double>(cover_count[static_cast<std::size_t>(f)] - 2);
        constant += 0.25 * d * d;
    }
    m.offset = constant + 0.5 * trace_raw;
    return m;
}

double energy(const IsingModel& m, std::uint64_t x) {
    if (m.n < 64 && (x >> m.n) != 0) {
        throw ValidationError("energy: bitstring does not fit " + std::to_string(m.n) +
                              " routes");
    }
    const std::size_t nn = static_cast<std::size_t>(m.n);
    double e = m.offset;
    for (int r = 0; r < m.n; ++r) {
        const double sr = ((x >> r) & 1ull) ? 1.0 : -1.0;
        e += m.h[static_cast<std::size_t>(r)] * sr;
        for (int rp = r + 1; rp < m.n; ++rp) {
            const double srp = ((x >> rp) & 1ull) ? 1.0 : -1.0;
            e += m.j[static_cast<std::size_t>(r) * nn + static_cast<std::size_t>(rp)] *
                 sr * srp;
        }
    }
    return e;
}

std::int64_t penalty_energy(const ExactCoverInstance& inst, std::uint64_t x) {
    if (inst.n_routes() < 64 && (x >> inst.n_routes()) != 0) {
        throw ValidationError("penalty_energy: bitstring does not fit " +
                              std::to_string(inst.n_routes()) + " routes");
    }
    std::vector<std::int64_t> cover(static_cast<std::size_t>(inst.n_flights), 0);
    for (int r = 0; r < inst.n_routes(); ++r) {
        if ((x >> r) & 1ull) {
            for (int f : inst.routes[static_cast<std::size_t>(r)]) {
                ++cover[static_cast<std::size_t>(f)];
            }
        }
    }
    std::int64_t e = 0;
    for (std::int64_t c : cover) {
        e += (c - 1) * (c - 1);
    }
    return e;
}

std::vector<std::int64_t> energy_table(const IsingModel& m) {
    const int n = m.n;
    const std::size_t nn = static_cast<std::size_t>(n);
    const std::size_t size = 1ull << n;
    std::vector<std::int64_t> table(size);

    // Gray-code walk: g[r] tracks h_r + sum_{r'!=r} J_rr' s_r'. All terms
    // are half-integers, so the double accumulation below is exact.
    std::vector<double> s(nn, -1.0);
    std::vector<double> g(m.h);
    for (int r = 0; r < n; ++r) {
        for (int rp = 0; rp < n; ++rp) {
            if (rp != r) {
                g[static_cast<std::size_t>(r)] -=
                    m.j[static_cast<std::size_t>(r) * nn + static_cast<std::size_t>(rp)];
            }
        }
    }
    double e = m.offset;  // running energy of the current state
    for (int r = 0; r < n; ++r) {
        e -= m.h[static_cast<std::size_t>(r)];
        for (int rp = r + 1; rp < n; ++rp) {
            e += m.j[static_cast<std::size_t>(r) * nn + static_cast<std::size_t>(rp)];
        }
    }
    table[0] = std::llround(e);

    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < size; ++i) {
        const int b = std::countr_zero(i);
        gray ^= 1ull << b;
        const std::size_t bb = static_cast<std::size_t>(b);
        const double delta_s = -2.0 * s[bb];
        e += delta_s * g[bb];
        s[bb] = -s[bb];
        for (int r = 0; r < n; ++r) {
            if (r != b) {
                g[static_cast<std::size_t>(r)] +=
                    m.j[static_cast<std::size_t>(r) * nn + bb] * delta_s;
            }
        }
        const std::int64_t rounded = std::llround(e);
        if (std::abs(e - static_cast<double>(rounded)) > 1e-9) {
            throw Error("energy_table: non-integral energy encountered");
        }
        table[gray] = rounded;
    }
    return table;
}

std::map<std::int64_t, std::uint64_t> spectrum(const IsingModel& m, int exhaustive_limit) {
    if (m.n > exhaustive_limit) {
        throw LimitError("spectrum: " + std::to_string(m.n) +
                         " qubits exceeds the exhaustive limit of " +
                         std::to_string(exhaustive_limit));
    }
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::int64_t e : energy_table(m)) {
        ++counts[e];
    }
    return counts;
}

std::string ising_to_json(const IsingModel& m) {
    nlohmann::ordered_json doc;
    doc["n"] = m.n;
    auto rows = nlohmann::ordered_json::array();
    for (int r = 0; r < m.n; ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int rp = 0; rp < m.n; ++rp) {
            row.push_back(m.coupling(r, rp));
        }
        rows.push_back(std::move(row));
    }
    doc["J"] = std::move(rows);
    doc["h"] = m.h;
    doc["offset"] = m.offset;
    return doc.dump();
}

}  // namespace xcq
