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

// Deterministic total finite-state relabelings: bottom-up (BREL) and
// top-down (TREL). Both are arity-preserving and shape-preserving; every
// state is final.

#ifndef TTRANS_RELABEL_HPP
#define TTRANS_RELABEL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ttrans/tree.hpp"

namespace ttrans {

struct Brel {
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;
  std::vector<std::string> states;
  /// One rule per (input-symbol index, child-state indices):
  /// sigma(p1(x1),...,pk(xk)) -> p(sigma'(x1,...,xk)), stored as
  /// (target state index, output-symbol index).
  std::map<std::pair<int, std::vector<int>>, std::pair<int, int>> rules;

  int state_index(const std::string& s) const;
};

struct Trel {
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;
  std::vector<std::string> states;
  std::string initial;
  /// One rule per (state index, input-symbol index):
  /// q(sigma(x1,...,xk)) -> sigma'(q1(x1),...,qk(xk)), stored as
  /// (output-symbol index, child-state indices).
  std::map<std::pair<int, int>, std::pair<int, std::vector<int>>> rules;

  int state_index(const std::string& s) const;
};

std::vector<std::string> validate_brel(const Brel& b);
std::vector<std::string> validate_trel(const Trel& t);
void require_valid(const Brel& b);
void require_valid(const Trel& t);

/// The unique bottom-up run: the relabeled tree and the state reached at the
/// root.
std::pair<Tree, std::string> brel_apply(const Brel& b, const Tree& s);

/// The unique top-down run from the initial state.
Tree trel_apply(const Trel& t, const Tree& s);

/// Identity relabelings over an alphabet.
Brel identity_brel(const RankedAlphabet& alphabet);
Trel identity_trel(const RankedAlphabet& alphabet);

}  // namespace ttrans

#endif  // TTRANS_RELABEL_HPP
