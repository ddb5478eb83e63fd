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

// Shared fixture loading plus the independent oracles the suites check
// against: an unmemoized transducer recursion, exhaustive attribute-instance
// rewriting, and the literal marker-survival test for importance. These
// deliberately avoid the library's evaluation paths.

#ifndef TTRANS_TESTS_FIXTURES_HPP
#define TTRANS_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ttrans/analysis.hpp"
#include "ttrans/att.hpp"
#include "ttrans/io.hpp"
#include "ttrans/mtt.hpp"

namespace ttrans::testing {

inline std::string read_data_file(const std::string& name) {
  std::string path = std::string(TTRANS_DATA_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Mtt load_mtt(const std::string& name) {
  Mtt m = parse_mtt(read_data_file(name));
  require_valid(m);
  return m;
}

inline Att load_att(const std::string& name) {
  Att a = parse_att(read_data_file(name));
  require_valid(a);
  return a;
}

// Unmemoized structural recursion, literally one substitution per node.
inline Tree naive_state_semantics(const Mtt& m, const std::string& q, const Tree& s) {
  SecondOrderSubstitution sub;
  for (const auto& state : m.states)
    for (int i = 1; i <= s.label().rank; ++i)
      sub.bind(call_symbol(state, i), naive_state_semantics(m, state.name, s.child(i)));
  return subst_second_order(m.rule(q, s.label().name), sub);
}

// Exhaustive rewriting of attribute instances to normal form. Instances are
// rank-0 leaves `attr@path`; each step replaces the first instance leaf in
// preorder by the instantiated rule right-hand side.
inline Tree rewrite_evaluate(const Att& a, const Tree& s, long max_steps = 200000) {
  auto instance = [](const std::string& attr, const Path& u) {
    return Symbol{attr + "@" + format_path(u), 0};
  };

  auto instantiate = [&](auto&& self, const Tree& rhs, const Path& rule_node) -> Tree {
    if (auto ref = parse_ref(rhs.label(), a)) {
      Path at = rule_node;
      if (ref->child > 0) at.push_back(ref->child);
      return Tree(instance(ref->attr, at));
    }
    std::vector<Tree> children;
    for (const auto& c : rhs.children()) children.push_back(self(self, c, rule_node));
    return Tree(rhs.label(), std::move(children));
  };

  auto is_instance = [&](const Symbol& sym, std::string* attr, Path* u) {
    auto at = sym.name.rfind('@');
    if (sym.rank != 0 || at == std::string::npos) return false;
    std::string candidate = sym.name.substr(0, at);
    if (!a.is_syn(candidate) && !a.is_inh(candidate)) return false;
    *attr = candidate;
    *u = parse_path(sym.name.substr(at + 1));
    return true;
  };

  auto step = [&](auto&& self, const Tree& t, bool* changed) -> Tree {
    std::string attr;
    Path u;
    if (!*changed && is_instance(t.label(), &attr, &u)) {
      *changed = true;
      Path rule_node = u;
      int child = 0;
      if (a.is_inh(attr)) {
        if (u.empty()) throw EvalError("rewriting demanded an inherited attribute at the root");
        child = rule_node.back();
        rule_node.pop_back();
      }
      int sym = a.input.index_of(subtree(s, rule_node).label().name);
      return instantiate(instantiate, a.rule(sym, AttRuleKey{attr, child}), rule_node);
    }
    std::vector<Tree> children;
    for (const auto& c : t.children()) children.push_back(self(self, c, changed));
    return Tree(t.label(), std::move(children));
  };

  Tree current(instance(a.root, {}));
  for (long i = 0; i < max_steps; ++i) {
    bool changed = false;
    Tree next = step(step, current, &changed);
    if (!changed) return current;
    current = std::move(next);
  }
  throw EvalError("rewriting did not reach a normal form (circular?)");
}

// Literal marker-survival importance: the node is important iff the marker
// placed there occurs in the substituted right-hand side for some tuple of
// input subtrees up to the bound.
inline bool importance_oracle(const Mtt& m, const std::string& q, const std::string& sigma,
                              const Path& v, int size_bound = 5) {
  const Symbol star{"@star", 0};
  const Tree& rhs = m.rule(q, sigma);
  Tree marked = replace_subtree(rhs, v, Tree(star));
  int k = m.input.find(sigma)->rank;

  auto contains_star = [&](auto&& self, const Tree& t) -> bool {
    if (t.label() == star) return true;
    for (const auto& c : t.children())
      if (self(self, c)) return true;
    return false;
  };

  std::vector<Tree> pool = enumerate_trees(m.input, size_bound);
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  while (true) {
    SecondOrderSubstitution sub;
    for (const auto& state : m.states)
      for (int i = 1; i <= k; ++i)
        sub.bind(call_symbol(state, i),
                 mtt_state_semantics(m, state.name, pool[pick[static_cast<std::size_t>(i) - 1]]));
    if (contains_star(contains_star, subst_second_order(marked, sub))) return true;
    int pos = k - 1;
    while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == pool.size()) {
      pick[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0 || k == 0) break;
  }
  return false;
}

inline Pipeline pipe(std::initializer_list<Stage> stages) {
  Pipeline p;
  for (const auto& s : stages) p.stages.push_back(s);
  return p;
}

// Equality up to the transducer's display name.
inline bool same_mtt_modulo_name(const Mtt& a, const Mtt& b) {
  if (!(a.input.symbols() == b.input.symbols())) return false;
  if (!(a.output.symbols() == b.output.symbols())) return false;
  if (a.states.size() != b.states.size()) return false;
  for (std::size_t i = 0; i < a.states.size(); ++i)
    if (a.states[i].name != b.states[i].name || a.states[i].rank != b.states[i].rank)
      return false;
  return a.initial == b.initial && a.rules == b.rules;
}

}  // namespace ttrans::testing

#endif  // TTRANS_TESTS_FIXTURES_HPP
