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

#include "ttrans/pipeline.hpp"

namespace ttrans {

const RankedAlphabet& stage_input(const Stage& s) {
  return std::visit([](const auto& t) -> const RankedAlphabet& { return t.input; }, s);
}

const RankedAlphabet& stage_output(const Stage& s) {
  return std::visit([](const auto& t) -> const RankedAlphabet& { return t.output; }, s);
}

std::string stage_kind(const Stage& s) {
  struct {
    std::string operator()(const Brel&) { return "brel"; }
    std::string operator()(const Trel&) { return "trel"; }
    std::string operator()(const Mtt&) { return "mtt"; }
    std::string operator()(const Att&) { return "att"; }
  } kind;
  return std::visit(kind, s);
}

std::string stage_name(const Stage& s) {
  return std::visit([](const auto& t) { return t.name; }, s);
}

namespace {

std::vector<std::string> validate_report(const Brel& b) { return validate_brel(b); }
std::vector<std::string> validate_report(const Trel& t) { return validate_trel(t); }
std::vector<std::string> validate_report(const Mtt& m) { return validate_mtt(m); }
std::vector<std::string> validate_report(const Att& a) { return validate_att(a); }

}  // namespace

std::vector<std::string> validate_pipeline(const Pipeline& p) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    const Stage& s = p.stages[i];
    auto report = std::visit([](const auto& t) { return validate_report(t); }, s);
    for (auto& r : report)
      out.push_back("stage " + std::to_string(i + 1) + " (" + stage_kind(s) + " '" +
                    stage_name(s) + "'): " + r);
    if (i + 1 < p.stages.size() && !stage_output(s).subset_of(stage_input(p.stages[i + 1])))
      out.push_back("stage " + std::to_string(i + 1) + " emits symbols that stage " +
                    std::to_string(i + 2) + " does not accept");
  }
  return out;
}

void require_valid(const Pipeline& p) {
  auto report = validate_pipeline(p);
  if (!report.empty()) {
    std::string msg = "invalid pipeline:";
    for (const auto& r : report) msg += "\n  " + r;
    throw ValidationError(msg);
  }
}

Tree pipeline_apply(const Pipeline& p, const Tree& s) {
  Tree current = s;
  for (const Stage& stage : p.stages) {
    struct Apply {
      const Tree& in;
      Tree operator()(const Brel& b) { return brel_apply(b, in).first; }
      Tree operator()(const Trel& t) { return trel_apply(t, in); }
      Tree operator()(const Mtt& m) { return mtt_translate(m, in); }
      Tree operator()(const Att& a) { return att_evaluate(a, in); }
    };
    current = std::visit(Apply{current}, stage);
  }
  return current;
}

}  // namespace ttrans
