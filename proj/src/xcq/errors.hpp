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

#ifndef XCQ_ERRORS_HPP
#define XCQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xcq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file or text; message carries the location.
struct ParseError : Error {
    using Error::Error;
};

// Arguments outside an operation's documented domain.
struct ValidationError : Error {
    using Error::Error;
};

// A size or memory cap was exceeded (qubit cap, oracle limit, ...).
struct LimitError : Error {
    using Error::Error;
};

// Instance generation could not satisfy its postcondition.
struct GenerationError : Error {
    using Error::Error;
};

}  // namespace xcq

#endif
