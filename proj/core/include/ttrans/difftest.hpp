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

#ifndef TTRANS_DIFFTEST_HPP
#define TTRANS_DIFFTEST_HPP

#include <optional>
#include <string>

#include "ttrans/pipeline.hpp"

namespace ttrans {

/// Outcome of bounded differential testing of two pipelines.
struct DiffReport {
  enum class Outcome { EqualUpToBound, Counterexample, StageError } outcome =
      Outcome::EqualUpToBound;
  long tested = 0;
  int bound = 0;
  std::optional<Tree> input;
  std::optional<Tree> out1, out2;  // set on a counterexample
  std::string error;               // set on a stage error
  int error_pipeline = 0;          // 1 or 2
};

/// Applies both pipelines to every tree over the shared source alphabet up
/// to `size_bound` nodes, in enumeration order, and reports the first
/// mismatch. Equality is exact. The pipelines must accept the same source
/// alphabet.
DiffReport equivalent_up_to(const Pipeline& p1, const Pipeline& p2, int size_bound);

}  // namespace ttrans

#endif  // TTRANS_DIFFTEST_HPP
