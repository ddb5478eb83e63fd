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

// Total deterministic macro tree transducers.
//
// Rule right-hand sides are ordinary trees over an extended alphabet: output
// symbols, parameter leaves y1..ym, and state-call nodes. A call of state q
// on the i-th input variable is a node labeled `q[xi]` whose rank equals
// rank(q); the hole call used by context evaluation is labeled `q[x]`.

#ifndef TTRANS_MTT_HPP
#define TTRANS_MTT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttrans/tree.hpp"

namespace ttrans {

struct State {
  std::string name;
  int rank = 0;
};

struct Mtt {
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;
  std::vector<State> states;
  std::string initial;
  /// Exactly one right-hand side per (state index, input-symbol index).
  std::map<std::pair<int, int>, Tree> rules;

  int state_index(const std::string& state) const;
  const State& state_at(int i) const { return states[static_cast<std::size_t>(i)]; }
  int state_rank(const std::string& state) const;
  /// Throws EvalError when the rule is missing.
  const Tree& rule(const std::string& state, const std::string& symbol) const;
  const Tree& rule(int state, int symbol) const;
};

/// Label of the state-call node <q, x_i>; `var` 0 encodes the context hole x.
Symbol call_symbol(const State& q, int var);

/// A decoded state-call label.
struct CallRef {
  int state = -1;  // index into m.states
  int var = 0;     // 1-based input variable, 0 for the context hole
};

/// Decodes `label` as a state call of `m`, if it is one.
std::optional<CallRef> parse_call(const Symbol& label, const Mtt& m);

/// Structural validation. Returns one message per violation; empty means the
/// value satisfies every invariant (rank-0 initial state, totality, ranked
/// calls, in-range variables and parameters, reserved-name hygiene).
std::vector<std::string> validate_mtt(const Mtt& m);

/// Throws ValidationError when validate_mtt is non-empty.
void require_valid(const Mtt& m);

/// True when every rule of a rank-m state uses each of y1..ym.
bool is_nondeleting(const Mtt& m);

/// True when no right-hand side is a bare parameter.
bool is_nonerasing(const Mtt& m);

/// The q-translation of s: a tree over the output alphabet extended with
/// parameter leaves y1..y_rank(q). Memoized on (state, node).
Tree mtt_state_semantics(const Mtt& m, const std::string& q, const Tree& s);

/// The translation of the initial state; contains no parameters.
Tree mtt_translate(const Mtt& m, const Tree& s);

/// Evaluates the initial state on s with the subtree at u replaced by a
/// context hole: hole calls `q[x]` evaluate to themselves applied to their
/// (evaluated) arguments, so the result is a tree over the output alphabet
/// plus hole-call nodes carrying actual argument trees.
Tree mtt_context_semantics(const Mtt& m, const Tree& s, const Path& u);

/// Same, starting from an arbitrary state instead of the initial one.
Tree mtt_context_semantics(const Mtt& m, const std::string& q, const Tree& s, const Path& u);

}  // namespace ttrans

#endif  // TTRANS_MTT_HPP
