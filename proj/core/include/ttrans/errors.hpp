// Copyright 2026 The ttrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TTRANS_ERRORS_HPP
#define TTRANS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ttrans {

/// Base class of all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text. Carries a 1-based source position.
struct ParseError : Error {
  ParseError(const std::string& what, int line, int col)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// A transducer value violates its structural invariants.
struct ValidationError : Error {
  using Error::Error;
};

/// An operation was called outside its stated precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// A runtime evaluation failure (circular attribute instance, undefined
/// inherited attribute at the root, invalid path, ...).
struct EvalError : Error {
  using Error::Error;
};

/// A transducer-to-transducer construction detected an inconsistent input
/// (e.g. two conflicting definitions for the same inherited attribute).
struct ConstructionError : Error {
  using Error::Error;
};

}  // namespace ttrans

#endif  // TTRANS_ERRORS_HPP
