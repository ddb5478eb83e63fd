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

#include "ttrans/difftest.hpp"

namespace ttrans {

DiffReport equivalent_up_to(const Pipeline& p1, const Pipeline& p2, int size_bound) {
  if (size_bound < 1) throw PreconditionError("difftest bound must be positive");
  // The empty pipeline is the identity over the other side's alphabet.
  const RankedAlphabet* alphabet = nullptr;
  if (!p1.empty()) alphabet = &stage_input(p1.stages.front());
  if (!p2.empty()) {
    const RankedAlphabet& a2 = stage_input(p2.stages.front());
    if (alphabet && !alphabet->same_symbols(a2))
      throw PreconditionError("difftest: the pipelines accept different source alphabets");
    if (!alphabet) alphabet = &a2;
  }
  if (!alphabet)
    throw PreconditionError("difftest: both pipelines are empty, no alphabet to enumerate");

  DiffReport report;
  report.bound = size_bound;
  for (const Tree& input : enumerate_trees(*alphabet, size_bound)) {
    ++report.tested;
    Tree out1 = input, out2 = input;
    try {
      out1 = pipeline_apply(p1, input);
    } catch (const Error& e) {
      report.outcome = DiffReport::Outcome::StageError;
      report.input = input;
      report.error = e.what();
      report.error_pipeline = 1;
      return report;
    }
    try {
      out2 = pipeline_apply(p2, input);
    } catch (const Error& e) {
      report.outcome = DiffReport::Outcome::StageError;
      report.input = input;
      report.error = e.what();
      report.error_pipeline = 2;
      return report;
    }
    if (out1 != out2) {
      report.outcome = DiffReport::Outcome::Counterexample;
      report.input = input;
      report.out1 = std::move(out1);
      report.out2 = std::move(out2);
      return report;
    }
  }
  return report;
}

}  // namespace ttrans
