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

// Reachable states at a context hole, call trees, bounded checking of the
// dynamic argument-agreement property, the state-annotating relabeling with
// its companion ATT, and the equivalence-to-property reduction gadget.

#ifndef TTRANS_DYNFV_HPP
#define TTRANS_DYNFV_HPP

#include <optional>
#include <string>
#include <vector>

#include "ttrans/constructions.hpp"
#include "ttrans/pipeline.hpp"

namespace ttrans {

/// States q such that a call of q at the hole occurs in the evaluation of
/// some state of `from` on s with the subtree at u replaced by a hole.
/// Returned in declaration order.
std::vector<std::string> reachable_states(const Mtt& m, const std::vector<std::string>& from,
                                          const Tree& s, const Path& u);

/// The call trees of q at u on s: every subtree of the context evaluation
/// rooted at a hole call of q, deduplicated, in preorder discovery order.
std::vector<Tree> call_trees(const Mtt& m, const Tree& s, const Path& u, const std::string& q);

/// Replaces every hole call `q'[x]` in t by the q'-translation of s_u.
Tree evaluate_argument(const Mtt& m, const Tree& t, const Tree& s_u);

struct DynFvViolation {
  Tree source;  // the enumerated tree fed to the look-around
  Tree input;   // the tree the mtt actually ran on (equal to source without look-around)
  Path u;
  std::string state;
  int j = 0;
  Tree call1, call2;  // differing call trees
  Tree value1, value2;  // their evaluated j-th arguments
};

struct DynFvVerdict {
  bool pass = true;  // no violation up to the bound
  long tested = 0;   // number of inputs enumerated
  int bound = 0;
  std::optional<DynFvViolation> violation;
};

/// Enumerates source trees up to `size_bound`, pushes them through the
/// optional look-around pipeline (which must consist of relabelings), and
/// checks that all same-indexed arguments of the same state at the same
/// hole evaluate to the same output tree. First violation in enumeration
/// order is reported; a pass only means no violation up to the bound.
DynFvVerdict check_dynamic_fv(const Mtt& m, const Pipeline* lookaround, int size_bound);

/// The relabeling that annotates every node with the set of states
/// processing it, starting from the initial state. States are the reachable
/// state sets; output symbols are `[sigma,{q,...}]`.
Trel build_state_annotating_trel(const Mtt& m);

struct DynFvAttResult {
  Trel relabeling;
  Att att;
  std::vector<std::string> notes;  // advisory findings (e.g. erasing rules)
};

/// Builds the companion ATT over the annotated alphabet: states become
/// synthesized attributes, parameter positions become inherited attributes
/// `q.j`, and each inherited rule is taken from the first call occurrence
/// in a post-order traversal of the annotated states' rules in declaration
/// order. Preconditions: `m` nondeleting, and no dynamic-FV violation up to
/// `check_bound` (with `lookaround` applied first when given).
DynFvAttResult build_dynfv_att(const Mtt& m, const Pipeline* lookaround = nullptr,
                               int check_bound = 5);

struct GadgetResult {
  Pipeline relabeling;  // the convolution of the two look-arounds
  Mtt mtt;              // has the dynamic property iff the pipelines agree
};

/// The reduction from pipeline equivalence to the dynamic property. Both
/// pipelines must be relabelings (at most one bottom-up then at most one
/// top-down) followed by an MTT, over the same source alphabet, which needs
/// a unary symbol. The combined MTT pairs the two translations under a
/// fresh root state; its dynamic property holds iff the pipelines agree on
/// every input.
GadgetResult equivalence_gadget(const Pipeline& p1, const Pipeline& p2);

}  // namespace ttrans

#endif  // TTRANS_DYNFV_HPP
