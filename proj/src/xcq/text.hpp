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

#ifndef XCQ_TEXT_HPP
#define XCQ_TEXT_HPP

#include <charconv>
#include <cstdint>
#include <string>

namespace xcq {

// Shortest round-trip decimal form; stable across runs, so emitted files
// are byte-reproducible.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Text form of a basis state: character i is the bit of route i
// (route 0 first, matching bit 0 of the basis-state index).
inline std::string bitstring_text(std::uint64_t x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((x >> i) & 1ull) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

}  // namespace xcq

#endif
