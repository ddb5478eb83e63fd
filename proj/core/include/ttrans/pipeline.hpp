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

#ifndef TTRANS_PIPELINE_HPP
#define TTRANS_PIPELINE_HPP

#include <string>
#include <variant>
#include <vector>

#include "ttrans/att.hpp"
#include "ttrans/mtt.hpp"
#include "ttrans/relabel.hpp"

namespace ttrans {

using Stage = std::variant<Brel, Trel, Mtt, Att>;

const RankedAlphabet& stage_input(const Stage& s);
const RankedAlphabet& stage_output(const Stage& s);
std::string stage_kind(const Stage& s);  // "brel" | "trel" | "mtt" | "att"
std::string stage_name(const Stage& s);

/// A left-to-right composition of transducers. The empty pipeline is the
/// identity.
struct Pipeline {
  std::vector<Stage> stages;

  bool empty() const { return stages.empty(); }
};

/// Checks that every stage validates and that each stage's output symbols
/// are accepted by the next stage.
std::vector<std::string> validate_pipeline(const Pipeline& p);
void require_valid(const Pipeline& p);

/// Applies the stages left to right; relabeling stages discard their final
/// state. Stage errors (e.g. ATT circularity) propagate as EvalError.
Tree pipeline_apply(const Pipeline& p, const Tree& s);

}  // namespace ttrans

#endif  // TTRANS_PIPELINE_HPP
