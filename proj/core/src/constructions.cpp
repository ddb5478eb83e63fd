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

#include "ttrans/constructions.hpp"

#include <algorithm>
#include <set>

namespace ttrans {

namespace {

const Symbol& require_bottom(const RankedAlphabet& output, const std::string& who) {
  const Symbol* bottom = output.first_of_rank(0);
  if (!bottom)
    throw PreconditionError(who + " needs a rank-0 output symbol for padding, none declared");
  return *bottom;
}

std::string subset_name(const std::string& state, const std::set<int>& I) {
  std::string out = state + ".{";
  bool first = true;
  for (int i : I) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace

Mtt expand_to_consistent(const Mtt& m, const ParamRenaming& rho) {
  if (auto v = check_fv(m, rho))
    throw PreconditionError("expand_to_consistent: '" + m.name +
                            "' does not have the renaming-consistency property with the given "
                            "renaming (first violation at symbol '" +
                            v->sigma + "')");
  const Symbol bottom = require_bottom(m.output, "expand_to_consistent");

  int mt = 0;
  for (const auto& q : m.states)
    for (int j = 1; j <= q.rank; ++j) mt = std::max(mt, rho.at(q.name, j));

  Mtt out;
  out.name = m.name.empty() ? "expanded" : m.name + "_e";
  out.input = m.input;
  out.output = m.output;
  out.initial = m.initial;
  for (const auto& q : m.states)
    out.states.push_back(State{q.name, q.rank == 0 ? 0 : mt});

  // e_q: pad calls to mt slots, moving argument i of state q' to slot
  // rho(q', i), and renames the rule's own parameters.
  auto pad = [&](auto&& self, const std::string& q, const Tree& t) -> Tree {
    if (auto j = param_index(t.label())) return Tree(param_symbol(rho.at(q, *j)));
    if (auto call = parse_call(t.label(), m)) {
      const State& callee = m.state_at(call->state);
      if (callee.rank == 0) return Tree(call_symbol(State{callee.name, 0}, call->var));
      std::vector<Tree> slots;
      for (int slot = 1; slot <= mt; ++slot) {
        int source = 0;
        for (int i = 1; i <= callee.rank; ++i)
          if (rho.at(callee.name, i) == slot) source = i;
        if (source == 0)
          slots.push_back(Tree(bottom));
        else
          slots.push_back(self(self, q, t.child(source)));
      }
      return Tree(call_symbol(State{callee.name, mt}, call->var), std::move(slots));
    }
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children()) children.push_back(self(self, q, c));
    return Tree(t.label(), std::move(children));
  };

  for (const auto& [key, rhs] : m.rules)
    out.rules.emplace(key, pad(pad, m.state_at(key.first).name, rhs));
  return out;
}

Att omega(const Mtt& m) {
  int mt = 0;
  for (const auto& q : m.states) mt = std::max(mt, q.rank);
  for (const auto& q : m.states)
    if (q.rank != 0 && q.rank != mt)
      throw PreconditionError("omega expects uniform state ranks (0 or " + std::to_string(mt) +
                              "); state '" + q.name + "' has rank " + std::to_string(q.rank));
  const Symbol bottom = require_bottom(m.output, "omega");
  ProfileSet ps = occurrence_profiles(m);

  Att a;
  a.name = m.name.empty() ? "omega" : m.name + "_att";
  a.input = m.input;
  a.output = m.output;
  for (const auto& q : m.states) a.syn.push_back(q.name);
  for (int j = 1; j <= mt; ++j) a.inh.push_back(param_symbol(j).name);
  a.root = m.initial;

  for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
    auto& rs = a.rules[static_cast<int>(sym)];
    int k = m.input.at(sym).rank;
    for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
      const Tree& rhs = m.rule(static_cast<int>(qi), static_cast<int>(sym));
      rs.emplace(AttRuleKey{m.state_at(static_cast<int>(qi)).name, 0}, top(m, rhs));
      for (const Path& v : node_set(rhs)) {
        auto call = parse_call(subtree(rhs, v).label(), m);
        if (!call || m.state_at(call->state).rank != mt || mt == 0) continue;
        for (int j = 1; j <= mt; ++j) {
          Path vj = v;
          vj.push_back(j);
          if (!is_important(m, ps, static_cast<int>(qi), static_cast<int>(sym), vj)) continue;
          Tree def = top(m, subtree(rhs, vj));
          AttRuleKey key{param_symbol(j).name, call->var};
          auto it = rs.find(key);
          if (it == rs.end()) {
            rs.emplace(std::move(key), std::move(def));
          } else if (it->second != def) {
            throw ConstructionError(
                "omega: conflicting definitions for " + key.attr + "(pi " +
                std::to_string(key.child) + ") at '" + m.input.at(sym).name +
                "'; the input is not a consistent expansion");
          }
        }
      }
    }
    for (int j = 1; j <= mt; ++j)
      for (int i = 1; i <= k; ++i)
        rs.emplace(AttRuleKey{param_symbol(j).name, i}, Tree(bottom));
  }
  return a;
}

Att omega_direct(const Mtt& m, const ParamRenaming& rho) {
  if (auto v = check_fv(m, rho))
    throw PreconditionError("omega_direct: '" + m.name +
                            "' does not have the renaming-consistency property with the given "
                            "renaming (first violation at symbol '" +
                            v->sigma + "')");
  const Symbol bottom = require_bottom(m.output, "omega_direct");

  std::set<int> targets;
  for (const auto& q : m.states)
    for (int j = 1; j <= q.rank; ++j) targets.insert(rho.at(q.name, j));

  Att a;
  a.name = m.name.empty() ? "omega" : m.name + "_att";
  a.input = m.input;
  a.output = m.output;
  for (const auto& q : m.states) a.syn.push_back(q.name);
  for (int t : targets) a.inh.push_back(param_symbol(t).name);
  a.root = m.initial;

  // Truncation with parameters renamed through rho at the owning state.
  auto top_q = [&](auto&& self, const std::string& q, const Tree& t) -> Tree {
    if (auto call = parse_call(t.label(), m))
      return Tree(syn_ref(m.state_at(call->state).name, call->var));
    if (auto j = param_index(t.label()))
      return Tree(inh_ref(param_symbol(rho.at(q, *j)).name));
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children()) children.push_back(self(self, q, c));
    return Tree(t.label(), std::move(children));
  };

  for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
    auto& rs = a.rules[static_cast<int>(sym)];
    int k = m.input.at(sym).rank;
    for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
      const std::string& q = m.state_at(static_cast<int>(qi)).name;
      const Tree& rhs = m.rule(static_cast<int>(qi), static_cast<int>(sym));
      rs.emplace(AttRuleKey{q, 0}, top_q(top_q, q, rhs));
      for (const Path& v : node_set(rhs)) {
        auto call = parse_call(subtree(rhs, v).label(), m);
        if (!call) continue;
        const State& callee = m.state_at(call->state);
        for (int j = 1; j <= callee.rank; ++j) {
          int target = rho.at(callee.name, j);
          Path vj = v;
          vj.push_back(j);
          Tree def = top_q(top_q, q, subtree(rhs, vj));
          AttRuleKey key{param_symbol(target).name, call->var};
          auto it = rs.find(key);
          if (it == rs.end()) {
            rs.emplace(std::move(key), std::move(def));
          } else if (it->second != def) {
            throw ConstructionError("omega_direct: conflicting definitions for " + key.attr +
                                    "(pi " + std::to_string(key.child) + ") at '" +
                                    m.input.at(sym).name + "'");
          }
        }
      }
    }
    for (int t : targets)
      for (int i = 1; i <= k; ++i)
        rs.emplace(AttRuleKey{param_symbol(t).name, i}, Tree(bottom));
  }
  return a;
}

Mtt att_to_consistent_mtt(const Att& a) {
  require_valid(a);
  if (auto witness = att_is_circular(a))
    throw PreconditionError("att_to_consistent_mtt: '" + a.name +
                            "' is circular (witness input " + format_tree(*witness) + ")");
  const Symbol bottom = require_bottom(a.output, "att_to_consistent_mtt");

  // possible_demand[syn][inh]: can the synthesized attribute, at some node
  // of some input, transitively depend on the inherited attribute there?
  std::vector<std::vector<bool>> possible_demand(
      a.syn.size(), std::vector<bool>(std::max<std::size_t>(a.inh.size(), 1), false));
  for (const auto& rel : att_dependency_relations(a))
    for (auto [b, s] : rel) possible_demand[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] = true;

  int ni = static_cast<int>(a.inh.size());

  Mtt m;
  m.name = a.name.empty() ? "from_att" : a.name + "_mtt";
  m.input = a.input;
  m.output = a.output;
  for (const auto& s : a.syn) m.states.push_back(State{s, ni});
  bool fresh_initial = ni > 0;
  if (fresh_initial) {
    m.states.push_back(State{"@q0", 0});
    m.initial = "@q0";
  } else {
    m.initial = a.root;
  }

  for (std::size_t sym = 0; sym < a.input.size(); ++sym) {
    // Solved arguments for inherited attributes per child, on demand. A
    // cycle through possibly-demanded slots cannot be materialized finitely.
    std::map<std::pair<int, int>, Tree> solved;
    std::set<std::pair<int, int>> in_progress;

    auto transform = [&](auto&& self, const Tree& t, bool at_root) -> Tree {
      if (auto ref = parse_ref(t.label(), a)) {
        if (ref->child == 0) {
          if (at_root) return Tree(bottom);
          return Tree(param_symbol(a.inh_index(ref->attr) + 1));
        }
        int callee = a.syn_index(ref->attr);
        std::vector<Tree> args;
        for (int b = 0; b < ni; ++b) {
          if (!possible_demand[static_cast<std::size_t>(callee)][static_cast<std::size_t>(b)]) {
            args.push_back(Tree(bottom));
            continue;
          }
          auto key = std::make_pair(b, ref->child);
          auto it = solved.find(key);
          if (it == solved.end()) {
            if (!in_progress.insert(key).second)
              throw ConstructionError(
                  "att_to_consistent_mtt: the local argument system at '" +
                  a.input.at(sym).name + "' is cyclic through " + a.inh[static_cast<std::size_t>(b)] +
                  "(pi " + std::to_string(ref->child) + ")");
            Tree def = self(self, a.rule(static_cast<int>(sym),
                                         AttRuleKey{a.inh[static_cast<std::size_t>(b)], ref->child}),
                            false);
            in_progress.erase(key);
            it = solved.emplace(key, std::move(def)).first;
          }
          args.push_back(it->second);
        }
        return Tree(call_symbol(State{ref->attr, ni}, ref->child), std::move(args));
      }
      std::vector<Tree> children;
      children.reserve(t.children().size());
      for (const auto& c : t.children()) children.push_back(self(self, c, at_root));
      return Tree(t.label(), std::move(children));
    };

    for (std::size_t si = 0; si < a.syn.size(); ++si) {
      const Tree& rhs = a.rule(static_cast<int>(sym), AttRuleKey{a.syn[si], 0});
      m.rules.emplace(std::make_pair(static_cast<int>(si), static_cast<int>(sym)),
                      transform(transform, rhs, false));
    }
    if (fresh_initial) {
      const Tree& rhs = a.rule(static_cast<int>(sym), AttRuleKey{a.root, 0});
      m.rules.emplace(
          std::make_pair(static_cast<int>(a.syn.size()), static_cast<int>(sym)),
          transform(transform, rhs, true));
    }
  }
  return m;
}

NormalFormResult nondeleting_nf(const Mtt& m) {
  require_valid(m);
  ProfileSet ps = occurrence_profiles(m);

  NormalFormResult out;
  Brel& b = out.lookahead;
  b.name = (m.name.empty() ? "core" : m.name) + "_la";
  b.input = m.input;
  for (int p = 0; p < static_cast<int>(ps.profiles.size()); ++p)
    b.states.push_back(ps.name_of(p));

  // One relabeled symbol per (symbol, child-profile tuple); nullary symbols
  // keep their names.
  std::map<std::pair<int, std::vector<int>>, int> sym_of;
  for (const auto& [key, p0] : ps.transition) {
    auto [sym, tuple] = key;
    const Symbol& s = m.input.at(static_cast<std::size_t>(sym));
    std::string name = s.name;
    if (!tuple.empty()) {
      name = "[" + s.name;
      for (int t : tuple) name += "," + ps.name_of(t);
      name += "]";
    }
    if (b.output.index_of(name) < 0) b.output.add(Symbol{name, s.rank});
    sym_of[key] = b.output.index_of(name);
    b.rules[{sym, tuple}] = {p0, sym_of[key]};
  }

  Mtt& core = out.core;
  core.name = m.name.empty() ? "core" : m.name + "_nd";
  core.input = b.output;
  core.output = m.output;

  // States (q, I) for every subset I of [rank(q)].
  std::map<std::pair<int, std::set<int>>, int> state_of;
  for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
    const State& q = m.states[qi];
    std::vector<std::set<int>> subsets{{}};
    for (int j = 1; j <= q.rank; ++j) {
      std::size_t n = subsets.size();
      for (std::size_t s = 0; s < n; ++s) {
        std::set<int> with = subsets[s];
        with.insert(j);
        subsets.push_back(std::move(with));
      }
    }
    std::sort(subsets.begin(), subsets.end());
    for (const auto& I : subsets) {
      state_of[{static_cast<int>(qi), I}] = static_cast<int>(core.states.size());
      core.states.push_back(State{subset_name(q.name, I), static_cast<int>(I.size())});
    }
  }
  core.initial = subset_name(m.initial, {});

  ParamRenaming rho;
  for (const auto& [key, idx] : state_of) {
    const auto& I = key.second;
    int j = 1;
    for (int member : I) rho.set(core.states[static_cast<std::size_t>(idx)].name, j++, member);
  }

  const Symbol* bottom0 = m.output.first_of_rank(0);
  bool need_d = false;
  Symbol dsym{"@d", 2};
  if (const Symbol* user = core.output.find("@d")) {
    if (user->rank != 2)
      throw PreconditionError("output symbol '@d' is reserved with rank 2 by nondeleting_nf");
    dsym = *user;
  }

  for (const auto& [key, p0] : ps.transition) {
    auto [sym, tuple] = key;
    int core_sym = sym_of.at(key);
    const OccurrenceProfile& prof = ps.profiles[static_cast<std::size_t>(p0)];
    for (const auto& [state_key, core_state] : state_of) {
      auto [qi, I] = state_key;
      const std::set<int>& surviving = prof.per_state[static_cast<std::size_t>(qi)];
      Tree rhs = [&]() -> Tree {
        if (I != surviving) {
          // dummy right-hand side, never reached on look-ahead images
          if (I.empty()) {
            if (!bottom0)
              throw PreconditionError("nondeleting_nf needs a rank-0 output symbol");
            return Tree(*bottom0);
          }
          if (I.size() == 1) return Tree(param_symbol(1));
          need_d = true;
          std::vector<int> members(I.begin(), I.end());
          Tree comb = Tree(param_symbol(static_cast<int>(I.size())));
          for (int j = static_cast<int>(I.size()) - 1; j >= 1; --j)
            comb = Tree(dsym, {Tree(param_symbol(j)), std::move(comb)});
          return comb;
        }
        // main right-hand side: keep surviving arguments, compact indices
        SecondOrderSubstitution theta;
        for (std::size_t r = 0; r < m.states.size(); ++r) {
          const State& callee = m.states[r];
          for (int i = 1; i <= m.input.at(static_cast<std::size_t>(sym)).rank; ++i) {
            const std::set<int>& keep =
                ps.profiles[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i) - 1])]
                    .per_state[r];
            int target = state_of.at({static_cast<int>(r), keep});
            std::vector<Tree> selected;
            for (int member : keep) selected.push_back(Tree(param_symbol(member)));
            theta.bind(call_symbol(callee, i),
                       Tree(call_symbol(core.states[static_cast<std::size_t>(target)], i),
                            std::move(selected)));
          }
        }
        Tree body = subst_second_order(m.rule(qi, sym), theta);
        LeafSubstitution compact;
        int j = 1;
        for (int member : I) compact.bind(param_symbol(member), Tree(param_symbol(j++)));
        return subst_leaves(body, compact);
      }();
      core.rules.emplace(std::make_pair(core_state, core_sym), std::move(rhs));
    }
  }
  if (need_d && core.output.index_of(dsym.name) < 0) core.output.add(dsym);
  out.renaming = std::move(rho);
  return out;
}

NormalFormResult nonerasing_nf(const Mtt& m) {
  require_valid(m);
  if (!is_nondeleting(m))
    throw PreconditionError("nonerasing_nf requires a nondeleting mtt; '" + m.name +
                            "' deletes a parameter");

  // Reachable sets of rank-1 states that erase on a subtree.
  std::vector<std::set<int>> sets;
  std::map<std::pair<int, std::vector<int>>, std::pair<int, int>> transitions;  // -> (set id, -)
  std::map<std::set<int>, int> set_id;

  auto erased_to = [&](int sym, const std::vector<int>& tuple) {
    std::set<int> p;
    for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
      SecondOrderSubstitution theta;
      for (int i = 1; i <= m.input.at(static_cast<std::size_t>(sym)).rank; ++i)
        for (int r : sets[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i) - 1])])
          theta.bind(call_symbol(m.states[static_cast<std::size_t>(r)], i), Tree(param_symbol(1)));
      Tree body = subst_second_order(m.rule(static_cast<int>(qi), sym), theta);
      if (body == Tree(param_symbol(1))) {
        if (m.states[qi].rank != 1)
          throw ConstructionError("nonerasing_nf: state '" + m.states[qi].name +
                                  "' erases to y1 with rank " + std::to_string(m.states[qi].rank));
        p.insert(static_cast<int>(qi));
      }
    }
    return p;
  };

  while (true) {
    std::size_t count = sets.size();
    for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
      int k = m.input.at(sym).rank;
      if (k == 0) {
        if (!transitions.count({static_cast<int>(sym), {}})) {
          std::set<int> p = erased_to(static_cast<int>(sym), {});
          if (!set_id.count(p)) {
            set_id[p] = static_cast<int>(sets.size());
            sets.push_back(p);
          }
          transitions[{static_cast<int>(sym), {}}] = {set_id[p], 0};
        }
        continue;
      }
      if (count == 0) continue;
      std::vector<int> tuple(static_cast<std::size_t>(k), 0);
      while (true) {
        if (!transitions.count({static_cast<int>(sym), tuple})) {
          std::set<int> p = erased_to(static_cast<int>(sym), tuple);
          if (!set_id.count(p)) {
            set_id[p] = static_cast<int>(sets.size());
            sets.push_back(p);
          }
          transitions[{static_cast<int>(sym), tuple}] = {set_id[p], 0};
        }
        int pos = k - 1;
        while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == static_cast<int>(count)) {
          tuple[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    if (sets.size() == count) break;
  }

  auto set_name = [&](int id) {
    std::string out = "{";
    bool first = true;
    for (int qi : sets[static_cast<std::size_t>(id)]) {
      if (!first) out += ',';
      out += m.states[static_cast<std::size_t>(qi)].name;
      first = false;
    }
    return out + "}";
  };

  NormalFormResult out;
  Brel& b = out.lookahead;
  b.name = (m.name.empty() ? "core" : m.name) + "_la";
  b.input = m.input;
  for (int id = 0; id < static_cast<int>(sets.size()); ++id) b.states.push_back(set_name(id));

  std::map<std::pair<int, std::vector<int>>, int> sym_of;
  for (auto& [key, target] : transitions) {
    auto [sym, tuple] = key;
    const Symbol& s = m.input.at(static_cast<std::size_t>(sym));
    std::string name = s.name;
    if (!tuple.empty()) {
      name = "[" + s.name;
      for (int t : tuple) name += "," + set_name(t);
      name += "]";
    }
    if (b.output.index_of(name) < 0) b.output.add(Symbol{name, s.rank});
    sym_of[key] = b.output.index_of(name);
    b.rules[{sym, tuple}] = {target.first, sym_of[key]};
  }

  Mtt& core = out.core;
  core.name = m.name.empty() ? "core" : m.name + "_ne";
  core.input = b.output;
  core.output = m.output;
  core.states = m.states;
  core.initial = m.initial;

  Symbol wrap{"@erase", 1};
  if (const Symbol* user = core.output.find("@erase")) {
    if (user->rank != 1)
      throw PreconditionError("output symbol '@erase' is reserved with rank 1 by nonerasing_nf");
    wrap = *user;
  }
  bool need_wrap = false;

  for (const auto& [key, target] : transitions) {
    (void)target;
    auto [sym, tuple] = key;
    int core_sym = sym_of.at(key);
    SecondOrderSubstitution theta;
    for (int i = 1; i <= m.input.at(static_cast<std::size_t>(sym)).rank; ++i)
      for (int r : sets[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i) - 1])])
        theta.bind(call_symbol(m.states[static_cast<std::size_t>(r)], i), Tree(param_symbol(1)));
    for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
      Tree body = subst_second_order(m.rule(static_cast<int>(qi), sym), theta);
      if (body == Tree(param_symbol(1))) {
        need_wrap = true;
        body = Tree(wrap, {Tree(param_symbol(1))});
      }
      core.rules.emplace(std::make_pair(static_cast<int>(qi), core_sym), std::move(body));
    }
  }
  if (need_wrap && core.output.index_of(wrap.name) < 0) core.output.add(wrap);
  return out;
}

Mtt trel_mtt_product(const Trel& e, const Mtt& m) {
  require_valid(e);
  require_valid(m);
  if (!e.output.subset_of(m.input))
    throw PreconditionError("trel_mtt_product: the relabeling emits symbols the mtt does not accept");

  Mtt out;
  out.name = (e.name.empty() ? "e" : e.name) + "." + (m.name.empty() ? "m" : m.name);
  out.input = e.input;
  out.output = m.output;
  std::map<std::pair<int, int>, int> state_of;
  for (std::size_t r = 0; r < e.states.size(); ++r)
    for (std::size_t q = 0; q < m.states.size(); ++q) {
      state_of[{static_cast<int>(r), static_cast<int>(q)}] = static_cast<int>(out.states.size());
      out.states.push_back(
          State{e.states[r] + "." + m.states[q].name, m.states[q].rank});
    }
  out.initial = e.initial + "." + m.initial;

  for (std::size_t r = 0; r < e.states.size(); ++r) {
    for (std::size_t sym = 0; sym < e.input.size(); ++sym) {
      auto it = e.rules.find({static_cast<int>(r), static_cast<int>(sym)});
      if (it == e.rules.end()) continue;
      const auto& [out_sym, child_states] = it->second;
      int msym = m.input.index_of(e.output.at(static_cast<std::size_t>(out_sym)).name);

      // Relabels calls <q', x_i> to <(r_i, q'), x_i>; everything else is kept.
      auto lift = [&](auto&& self, const Tree& t) -> Tree {
        std::vector<Tree> children;
        children.reserve(t.children().size());
        for (const auto& c : t.children()) children.push_back(self(self, c));
        if (auto call = parse_call(t.label(), m)) {
          int ri = child_states[static_cast<std::size_t>(call->var) - 1];
          int target = state_of.at({ri, call->state});
          return Tree(call_symbol(out.states[static_cast<std::size_t>(target)], call->var),
                      std::move(children));
        }
        return Tree(t.label(), std::move(children));
      };

      for (std::size_t q = 0; q < m.states.size(); ++q) {
        const Tree& rhs = m.rule(static_cast<int>(q), msym);
        out.rules.emplace(
            std::make_pair(state_of.at({static_cast<int>(r), static_cast<int>(q)}),
                           static_cast<int>(sym)),
            lift(lift, rhs));
      }
    }
  }
  return out;
}

Att fv_to_att(const Mtt& m, const ParamRenaming& rho) {
  Att a = omega(expand_to_consistent(m, rho));
  if (auto witness = att_is_circular(a))
    throw ConstructionError("fv_to_att: the constructed att is circular on " +
                            format_tree(*witness) + "; this contradicts the construction");
  return a;
}

}  // namespace ttrans
