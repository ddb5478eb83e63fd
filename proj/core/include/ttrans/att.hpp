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

// Attributed tree transducers: synthesized/inherited attributes, per-symbol
// rule sets, dependency graphs, circularity tests, and evaluation.
//
// Rule right-hand sides are trees over the output alphabet whose leaves may
// reference attribute instances: `a(pi i)` (synthesized attribute a at child
// i) and `b(pi)` (inherited attribute b at the node itself), encoded as
// rank-0 symbols of those names.

#ifndef TTRANS_ATT_HPP
#define TTRANS_ATT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttrans/tree.hpp"

namespace ttrans {

/// Left-hand side of an attribute rule at a symbol: `attr(pi)` when child is
/// 0 (a synthesized attribute at the node), `attr(pi child)` otherwise (an
/// inherited attribute at that child).
struct AttRuleKey {
  std::string attr;
  int child = 0;
  friend bool operator<(const AttRuleKey& a, const AttRuleKey& b) {
    return a.child != b.child ? a.child < b.child
                              : a.attr < b.attr;
  }
  friend bool operator==(const AttRuleKey& a, const AttRuleKey& b) {
    return a.child == b.child && a.attr == b.attr;
  }
};

struct Att {
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;
  std::vector<std::string> syn;
  std::vector<std::string> inh;
  std::string root;  // the output attribute, a member of syn
  /// Rules grouped by input-symbol index.
  std::map<int, std::map<AttRuleKey, Tree>> rules;

  bool is_syn(const std::string& attr) const;
  bool is_inh(const std::string& attr) const;
  int syn_index(const std::string& attr) const;
  int inh_index(const std::string& attr) const;
  const Tree& rule(int symbol, const AttRuleKey& key) const;
};

/// Attribute-reference leaves of rule right-hand sides.
Symbol syn_ref(const std::string& attr, int child);  // attr(pi child), child >= 1
Symbol inh_ref(const std::string& attr);             // attr(pi)

struct AttRef {
  std::string attr;
  int child = 0;  // 0 for attr(pi), else the referenced child
};

/// Decodes a label as an attribute reference of `a`, if it is one.
std::optional<AttRef> parse_ref(const Symbol& label, const Att& a);

std::vector<std::string> validate_att(const Att& a);
void require_valid(const Att& a);

/// A vertex of the dependency graph: an attribute instance at a node.
struct DepVertex {
  std::string attr;
  Path node;
  bool synthesized = false;
  friend bool operator==(const DepVertex& x, const DepVertex& y) {
    return x.attr == y.attr && x.node == y.node;
  }
};

/// The dependency graph of an ATT on an input tree. Vertices are the output
/// attribute at the root plus every attribute at every non-root node; edges
/// run from a referenced instance to the instance it feeds.
struct DependencyGraph {
  std::vector<DepVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // (from, to) vertex indices

  int index_of(const std::string& attr, const Path& node) const;
  std::vector<std::vector<int>> adjacency() const;
};

/// Builds the dependency graph. With `all_root_vertices` the vertex set is
/// extended to every attribute at the root, which some reachability analyses
/// need; the default matches the standard vertex set.
DependencyGraph att_dependency_graph(const Att& a, const Tree& s,
                                     bool all_root_vertices = false);

/// GraphViz rendering: synthesized instances boxed, inherited elliptical.
std::string dependency_graph_to_dot(const DependencyGraph& g);

/// Shortest directed cycle of the dependency graph on `s`, if any.
std::optional<std::vector<DepVertex>> att_is_circular_on(const Att& a, const Tree& s);

/// Decides whether any input tree has a cyclic dependency graph via the
/// classical fixpoint over per-subtree inherited-to-synthesized dependency
/// relations; returns a witness input on the circular side.
std::optional<Tree> att_is_circular(const Att& a);

/// The set of achievable inherited->synthesized dependency relations, one
/// per achievable subtree behaviour, as (inh index, syn index) pairs.
/// Exposed for analyses that need "can attribute a ever demand b".
std::vector<std::vector<std::pair<int, int>>> att_dependency_relations(const Att& a);

/// Evaluates the output attribute at the root by demand-driven memoized
/// attribute evaluation. Throws EvalError on a re-entrant attribute instance
/// (with the cycle) or when a rule demands an inherited attribute at the
/// root.
Tree att_evaluate(const Att& a, const Tree& s);

}  // namespace ttrans

#endif  // TTRANS_ATT_HPP
