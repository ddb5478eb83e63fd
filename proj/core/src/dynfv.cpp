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

#include "ttrans/dynfv.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ttrans {

namespace {

void collect_hole_calls(const Mtt& m, const Tree& t,
                        std::map<int, std::vector<Tree>>& by_state) {
  if (auto call = parse_call(t.label(), m); call && call->var == 0) {
    auto& bucket = by_state[call->state];
    if (std::find(bucket.begin(), bucket.end(), t) == bucket.end()) bucket.push_back(t);
  }
  for (const auto& c : t.children()) collect_hole_calls(m, c, by_state);
}

SecondOrderSubstitution hole_valuation(const Mtt& m, const Tree& s_u) {
  SecondOrderSubstitution sub;
  for (const auto& q : m.states)
    sub.bind(call_symbol(q, 0), mtt_state_semantics(m, q.name, s_u));
  return sub;
}

}  // namespace

std::vector<std::string> reachable_states(const Mtt& m, const std::vector<std::string>& from,
                                          const Tree& s, const Path& u) {
  std::set<int> reached;
  for (const auto& q : from) {
    Tree xi = mtt_context_semantics(m, q, s, u);
    std::map<int, std::vector<Tree>> calls;
    collect_hole_calls(m, xi, calls);
    for (const auto& [state, trees] : calls) {
      (void)trees;
      reached.insert(state);
    }
  }
  std::vector<std::string> out;
  for (int state : reached) out.push_back(m.state_at(state).name);
  return out;
}

std::vector<Tree> call_trees(const Mtt& m, const Tree& s, const Path& u, const std::string& q) {
  int qi = m.state_index(q);
  if (qi < 0) throw EvalError("unknown state '" + q + "'");
  Tree xi = mtt_context_semantics(m, s, u);
  std::map<int, std::vector<Tree>> calls;
  collect_hole_calls(m, xi, calls);
  auto it = calls.find(qi);
  return it == calls.end() ? std::vector<Tree>{} : it->second;
}

Tree evaluate_argument(const Mtt& m, const Tree& t, const Tree& s_u) {
  return subst_second_order(t, hole_valuation(m, s_u));
}

DynFvVerdict check_dynamic_fv(const Mtt& m, const Pipeline* lookaround, int size_bound) {
  if (lookaround)
    for (const auto& stage : lookaround->stages)
      if (stage_kind(stage) != "brel" && stage_kind(stage) != "trel")
        throw PreconditionError("the look-around pipeline must consist of relabelings");

  const RankedAlphabet& source_alphabet =
      lookaround && !lookaround->empty() ? stage_input(lookaround->stages.front()) : m.input;

  DynFvVerdict verdict;
  verdict.bound = size_bound;
  for (const Tree& source : enumerate_trees(source_alphabet, size_bound)) {
    ++verdict.tested;
    Tree input = lookaround ? pipeline_apply(*lookaround, source) : source;
    for (const Path& u : node_set(input)) {
      Tree xi = mtt_context_semantics(m, input, u);
      std::map<int, std::vector<Tree>> calls;
      collect_hole_calls(m, xi, calls);

      bool need_values = false;
      for (const auto& [state, trees] : calls)
        if (m.state_at(state).rank > 0 && trees.size() > 1) need_values = true;
      if (!need_values) continue;

      SecondOrderSubstitution valuation = hole_valuation(m, subtree(input, u));
      for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
        auto it = calls.find(static_cast<int>(qi));
        if (it == calls.end() || it->second.size() < 2) continue;
        int rank = m.state_at(static_cast<int>(qi)).rank;
        const std::vector<Tree>& cts = it->second;
        for (int j = 1; j <= rank; ++j) {
          Tree base = subst_second_order(cts.front().child(j), valuation);
          for (std::size_t t = 1; t < cts.size(); ++t) {
            Tree other = subst_second_order(cts[t].child(j), valuation);
            if (other != base) {
              verdict.pass = false;
              verdict.violation =
                  DynFvViolation{source,        input,     u,
                                 m.state_at(static_cast<int>(qi)).name,
                                 j,             cts.front(), cts[t],
                                 std::move(base), std::move(other)};
              return verdict;
            }
          }
        }
      }
    }
  }
  return verdict;
}

namespace {

std::string state_set_name(const Mtt& m, const std::set<int>& qs) {
  std::string out = "{";
  bool first = true;
  for (int q : qs) {
    if (!first) out += ',';
    out += m.state_at(q).name;
    first = false;
  }
  return out + "}";
}

// One-level reachable states: which states are sent to child i by the rules
// of `from` at `sym`. On a tree whose other children are opaque, no
// argument can be dropped, so this is the syntactic occurrence set.
std::vector<std::set<int>> states_per_child(const Mtt& m, const std::set<int>& from, int sym) {
  int k = m.input.at(static_cast<std::size_t>(sym)).rank;
  std::vector<std::set<int>> out(static_cast<std::size_t>(k));
  auto walk = [&](auto&& self, const Tree& t) -> void {
    if (auto call = parse_call(t.label(), m); call && call->var >= 1)
      out[static_cast<std::size_t>(call->var) - 1].insert(call->state);
    for (const auto& c : t.children()) self(self, c);
  };
  for (int q : from) walk(walk, m.rule(q, sym));
  return out;
}

// The deterministic automaton over reachable state sets, starting at the
// singleton of the initial state.
struct StsAutomaton {
  std::vector<std::set<int>> sets;                           // discovery order
  std::map<std::pair<int, int>, std::vector<int>> step;      // (set id, sym) -> child ids
};

StsAutomaton state_set_automaton(const Mtt& m) {
  StsAutomaton a;
  int q0 = m.state_index(m.initial);
  a.sets.push_back({q0});
  std::map<std::set<int>, int> id_of{{a.sets[0], 0}};
  for (std::size_t cur = 0; cur < a.sets.size(); ++cur) {
    for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
      auto children = states_per_child(m, a.sets[cur], static_cast<int>(sym));
      std::vector<int> child_ids;
      for (const auto& qs : children) {
        auto it = id_of.find(qs);
        if (it == id_of.end()) {
          it = id_of.emplace(qs, static_cast<int>(a.sets.size())).first;
          a.sets.push_back(qs);
        }
        child_ids.push_back(it->second);
      }
      a.step[{static_cast<int>(cur), static_cast<int>(sym)}] = std::move(child_ids);
    }
  }
  return a;
}

std::string annotated_name(const Mtt& m, const Symbol& s, const std::set<int>& qs) {
  return "[" + s.name + "," + state_set_name(m, qs) + "]";
}

}  // namespace

Trel build_state_annotating_trel(const Mtt& m) {
  require_valid(m);
  StsAutomaton sts = state_set_automaton(m);

  Trel e;
  e.name = (m.name.empty() ? "m" : m.name) + "_sts";
  e.input = m.input;
  for (const auto& qs : sts.sets) e.states.push_back(state_set_name(m, qs));
  e.initial = e.states[0];
  for (const auto& [key, child_ids] : sts.step) {
    auto [cur, sym] = key;
    const Symbol& s = m.input.at(static_cast<std::size_t>(sym));
    std::string out_name = annotated_name(m, s, sts.sets[static_cast<std::size_t>(cur)]);
    if (e.output.index_of(out_name) < 0) e.output.add(Symbol{out_name, s.rank});
    e.rules[{cur, sym}] = {e.output.index_of(out_name), child_ids};
  }
  return e;
}

DynFvAttResult build_dynfv_att(const Mtt& m, const Pipeline* lookaround, int check_bound) {
  require_valid(m);
  if (!is_nondeleting(m))
    throw PreconditionError("build_dynfv_att requires a nondeleting mtt; '" + m.name +
                            "' deletes a parameter");
  DynFvAttResult out;
  if (!is_nonerasing(m))
    out.notes.push_back("input has erasing rules; the companion att may be circular off-image");
  DynFvVerdict verdict = check_dynamic_fv(m, lookaround, check_bound);
  if (!verdict.pass)
    throw PreconditionError(
        "build_dynfv_att: dynamic argument agreement fails on " +
        format_tree(verdict.violation->input) + " at " + format_path(verdict.violation->u) +
        " (state " + verdict.violation->state + ")");

  out.relabeling = build_state_annotating_trel(m);
  const Trel& e = out.relabeling;

  Att& a = out.att;
  a.name = m.name.empty() ? "dynfv" : m.name + "_att";
  a.input = e.output;
  a.output = m.output;
  for (const auto& q : m.states) a.syn.push_back(q.name);
  for (const auto& q : m.states)
    for (int j = 1; j <= q.rank; ++j) a.inh.push_back(q.name + "." + std::to_string(j));
  a.root = m.initial;
  const Symbol* bottom = m.output.first_of_rank(0);
  if (!bottom)
    throw PreconditionError("build_dynfv_att needs a rank-0 output symbol, none declared");

  // Truncation with parameters of the owning state mapped to its inherited
  // attributes.
  auto top_q = [&](auto&& self, const std::string& q, const Tree& t) -> Tree {
    if (auto call = parse_call(t.label(), m))
      return Tree(syn_ref(m.state_at(call->state).name, call->var));
    if (auto j = param_index(t.label()))
      return Tree(inh_ref(q + "." + std::to_string(*j)));
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children()) children.push_back(self(self, q, c));
    return Tree(t.label(), std::move(children));
  };

  // Build one rule set per reachable (state set, input symbol) pair.
  StsAutomaton sts = state_set_automaton(m);
  for (const auto& [key, child_ids] : sts.step) {
    (void)child_ids;
    auto [set_id, sym] = key;
    const std::set<int>& member_set = sts.sets[static_cast<std::size_t>(set_id)];
    int att_sym = a.input.index_of(
        annotated_name(m, m.input.at(static_cast<std::size_t>(sym)), member_set));
    auto& rs = a.rules[att_sym];
    int k = m.input.at(static_cast<std::size_t>(sym)).rank;
    std::vector<int> members(member_set.begin(), member_set.end());
    for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
      const std::string& qn = m.state_at(static_cast<int>(qi)).name;
      if (member_set.count(static_cast<int>(qi)))
        rs.emplace(AttRuleKey{qn, 0}, top_q(top_q, qn, m.rule(static_cast<int>(qi), sym)));
      else
        rs.emplace(AttRuleKey{qn, 0}, Tree(*bottom));
    }

    // inherited rules: first call occurrence in post-order, states in
    // declaration order
    std::set<std::pair<int, int>> seen;  // (state, var)
    for (int qi : members) {
      const std::string& owner = m.state_at(qi).name;
      const Tree& rhs = m.rule(qi, static_cast<int>(sym));
      auto post = [&](auto&& self, const Tree& t, Path& prefix) -> void {
        for (int i = 1; i <= t.label().rank; ++i) {
          prefix.push_back(i);
          self(self, t.child(i), prefix);
          prefix.pop_back();
        }
        if (auto call = parse_call(t.label(), m); call && call->var >= 1) {
          if (!seen.insert({call->state, call->var}).second) return;
          const State& callee = m.state_at(call->state);
          for (int j = 1; j <= callee.rank; ++j) {
            Path vj = prefix;
            vj.push_back(j);
            rs.emplace(AttRuleKey{callee.name + "." + std::to_string(j), call->var},
                       top_q(top_q, owner, subtree(rhs, vj)));
          }
        }
      };
      Path prefix;
      post(post, rhs, prefix);
    }

    // dummies
    for (const auto& q : m.states)
      for (int j = 1; j <= q.rank; ++j)
        for (int i = 1; i <= k; ++i)
          rs.emplace(AttRuleKey{q.name + "." + std::to_string(j), i}, Tree(*bottom));
  }
  return out;
}

namespace {

struct PrefixParts {
  std::optional<Brel> brel;
  std::optional<Trel> trel;
  const Mtt* mtt = nullptr;
};

PrefixParts split_pipeline(const Pipeline& p, const std::string& which) {
  PrefixParts parts;
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    const Stage& s = p.stages[i];
    if (i + 1 == p.stages.size()) {
      parts.mtt = std::get_if<Mtt>(&s);
      if (!parts.mtt)
        throw PreconditionError("equivalence_gadget: " + which + " must end in an mtt");
      break;
    }
    if (const Brel* b = std::get_if<Brel>(&s)) {
      if (parts.brel || parts.trel)
        throw PreconditionError("equivalence_gadget: " + which +
                                " must be [brel?] [trel?] mtt");
      parts.brel = *b;
    } else if (const Trel* t = std::get_if<Trel>(&s)) {
      if (parts.trel)
        throw PreconditionError("equivalence_gadget: " + which +
                                " must be [brel?] [trel?] mtt");
      parts.trel = *t;
    } else {
      throw PreconditionError("equivalence_gadget: " + which +
                              " may only have relabelings before the mtt");
    }
  }
  if (!parts.mtt) throw PreconditionError("equivalence_gadget: " + which + " is empty");
  return parts;
}

std::string paired_name(const std::string& a, const std::string& b) {
  return "[" + a + "," + b + "]";
}

}  // namespace

GadgetResult equivalence_gadget(const Pipeline& p1, const Pipeline& p2) {
  PrefixParts left = split_pipeline(p1, "the first pipeline");
  PrefixParts right = split_pipeline(p2, "the second pipeline");

  const RankedAlphabet& source1 =
      left.brel ? left.brel->input : (left.trel ? left.trel->input : left.mtt->input);
  const RankedAlphabet& source2 =
      right.brel ? right.brel->input : (right.trel ? right.trel->input : right.mtt->input);
  if (!source1.same_symbols(source2))
    throw PreconditionError("equivalence_gadget: the pipelines have different source alphabets");
  if (!source1.first_of_rank(0))
    throw PreconditionError("equivalence_gadget: empty source tree language");
  bool has_unary = false;
  for (const auto& s : source1.symbols()) has_unary = has_unary || s.rank == 1;
  if (!has_unary)
    throw PreconditionError("equivalence_gadget: the source alphabet needs a unary symbol");

  GadgetResult out;
  // component names of the final paired symbols, parallel to the alphabet
  std::vector<std::pair<std::string, std::string>> components;
  RankedAlphabet paired;

  bool has_brel = left.brel || right.brel;
  bool has_trel = left.trel || right.trel;

  if (has_brel) {
    Brel b1 = left.brel ? *left.brel : identity_brel(source1);
    Brel b2 = right.brel ? *right.brel : identity_brel(source1);
    Brel prod;
    prod.name = "conv_la";
    prod.input = source1;
    for (const auto& s1 : b1.states)
      for (const auto& s2 : b2.states) prod.states.push_back(s1 + "." + s2);
    auto pair_state = [&](int i1, int i2) {
      return i1 * static_cast<int>(b2.states.size()) + i2;
    };
    for (const auto& [key1, target1] : b1.rules) {
      auto [sym1, tuple1] = key1;
      const Symbol& s = b1.input.at(static_cast<std::size_t>(sym1));
      for (const auto& [key2, target2] : b2.rules) {
        auto [sym2, tuple2] = key2;
        // align on the shared input symbol by name; the two files may
        // declare the alphabet in different orders
        if (b2.input.at(static_cast<std::size_t>(sym2)).name != s.name) continue;
        int psym = prod.input.index_of(s.name);
        std::vector<int> children;
        for (std::size_t i = 0; i < tuple1.size(); ++i)
          children.push_back(pair_state(tuple1[i], tuple2[i]));
        std::string out_name =
            paired_name(b1.output.at(static_cast<std::size_t>(target1.second)).name,
                        b2.output.at(static_cast<std::size_t>(target2.second)).name);
        if (prod.output.index_of(out_name) < 0) prod.output.add(Symbol{out_name, s.rank});
        prod.rules[{psym, children}] = {pair_state(target1.first, target2.first),
                                        prod.output.index_of(out_name)};
      }
    }
    // record components for every paired output symbol
    std::map<std::string, std::pair<std::string, std::string>> comp_of;
    for (const auto& [key1, target1] : b1.rules) {
      const std::string& name1 = b1.input.at(static_cast<std::size_t>(key1.first)).name;
      for (const auto& [key2, target2] : b2.rules) {
        if (b2.input.at(static_cast<std::size_t>(key2.first)).name != name1) continue;
        comp_of[paired_name(b1.output.at(static_cast<std::size_t>(target1.second)).name,
                            b2.output.at(static_cast<std::size_t>(target2.second)).name)] = {
            b1.output.at(static_cast<std::size_t>(target1.second)).name,
            b2.output.at(static_cast<std::size_t>(target2.second)).name};
      }
    }
    for (const auto& s : prod.output.symbols()) {
      paired.add(s);
      components.push_back(comp_of.at(s.name));
    }
    out.relabeling.stages.push_back(std::move(prod));
  }

  if (has_trel || !has_brel) {
    // A top-down stage: either the product of the two top-down parts or the
    // plain pairing relabeling.
    RankedAlphabet stage_in = has_brel ? paired : source1;
    std::vector<std::pair<std::string, std::string>> in_components;
    if (has_brel) {
      in_components = components;
    } else {
      for (const auto& s : stage_in.symbols()) in_components.push_back({s.name, s.name});
    }
    Trel t1 = left.trel ? *left.trel
                        : identity_trel(left.brel ? left.brel->output : source1);
    Trel t2 = right.trel ? *right.trel
                         : identity_trel(right.brel ? right.brel->output : source1);
    Trel prod;
    prod.name = "conv";
    prod.input = stage_in;
    for (const auto& s1 : t1.states)
      for (const auto& s2 : t2.states) prod.states.push_back(s1 + "." + s2);
    prod.initial = t1.initial + "." + t2.initial;
    auto pair_state = [&](int i1, int i2) {
      return i1 * static_cast<int>(t2.states.size()) + i2;
    };
    components.clear();
    paired = RankedAlphabet{};
    for (std::size_t si = 0; si < stage_in.size(); ++si) {
      const auto& [c1, c2] = in_components[si];
      int sym1 = t1.input.index_of(c1);
      int sym2 = t2.input.index_of(c2);
      if (sym1 < 0 || sym2 < 0)
        throw PreconditionError("equivalence_gadget: relabeling alphabets do not chain");
      for (std::size_t q1 = 0; q1 < t1.states.size(); ++q1) {
        for (std::size_t q2 = 0; q2 < t2.states.size(); ++q2) {
          const auto& [o1, kids1] = t1.rules.at({static_cast<int>(q1), sym1});
          const auto& [o2, kids2] = t2.rules.at({static_cast<int>(q2), sym2});
          std::string out_name = paired_name(t1.output.at(static_cast<std::size_t>(o1)).name,
                                             t2.output.at(static_cast<std::size_t>(o2)).name);
          if (prod.output.index_of(out_name) < 0) {
            prod.output.add(Symbol{out_name, stage_in.at(si).rank});
            paired.add(Symbol{out_name, stage_in.at(si).rank});
            components.push_back({t1.output.at(static_cast<std::size_t>(o1)).name,
                                  t2.output.at(static_cast<std::size_t>(o2)).name});
          }
          std::vector<int> kids;
          for (std::size_t i = 0; i < kids1.size(); ++i)
            kids.push_back(pair_state(kids1[i], kids2[i]));
          prod.rules[{pair_state(static_cast<int>(q1), static_cast<int>(q2)),
                      static_cast<int>(si)}] = {prod.output.index_of(out_name), kids};
        }
      }
    }
    out.relabeling.stages.push_back(prod);
  }

  // The combined transducer over the paired alphabet.
  Mtt& g = out.mtt;
  g.name = "gadget";
  g.input = paired;
  for (const auto& s : left.mtt->output.symbols()) g.output.add(s);
  for (const auto& s : right.mtt->output.symbols()) {
    const Symbol* existing = g.output.find(s.name);
    if (!existing)
      g.output.add(s);
    else if (existing->rank != s.rank)
      throw PreconditionError("equivalence_gadget: output symbol '" + s.name +
                              "' has conflicting ranks in the two pipelines");
  }
  const Symbol* leaf = g.output.first_of_rank(0);
  if (!leaf) {
    g.output.add(Symbol{"@e", 0});
    leaf = g.output.find("@e");
  }
  const Symbol* pair_sym = g.output.first_of_rank(2);
  if (!pair_sym) {
    g.output.add(Symbol{"@delta", 2});
    pair_sym = g.output.find("@delta");
  }

  g.states.push_back(State{"@q0", 0});
  g.states.push_back(State{"@qp", 1});
  g.initial = "@q0";
  std::map<int, int> lstate, rstate;
  for (std::size_t q = 0; q < left.mtt->states.size(); ++q) {
    lstate[static_cast<int>(q)] = static_cast<int>(g.states.size());
    g.states.push_back(State{"L." + left.mtt->states[q].name, left.mtt->states[q].rank});
  }
  for (std::size_t q = 0; q < right.mtt->states.size(); ++q) {
    rstate[static_cast<int>(q)] = static_cast<int>(g.states.size());
    g.states.push_back(State{"R." + right.mtt->states[q].name, right.mtt->states[q].rank});
  }

  auto lift = [&](auto&& self, const Mtt& src, const std::map<int, int>& map,
                  const Tree& t) -> Tree {
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children()) children.push_back(self(self, src, map, c));
    if (auto call = parse_call(t.label(), src)) {
      int target = map.at(call->state);
      return Tree(call_symbol(g.states[static_cast<std::size_t>(target)], call->var),
                  std::move(children));
    }
    return Tree(t.label(), std::move(children));
  };

  int l0 = lstate.at(left.mtt->state_index(left.mtt->initial));
  int r0 = rstate.at(right.mtt->state_index(right.mtt->initial));
  for (std::size_t si = 0; si < paired.size(); ++si) {
    const Symbol& s = paired.at(si);
    const auto& [c1, c2] = components[si];
    // root state
    if (s.rank == 1) {
      Tree lcall(call_symbol(g.states[static_cast<std::size_t>(l0)], 1));
      Tree rcall(call_symbol(g.states[static_cast<std::size_t>(r0)], 1));
      Tree body(*pair_sym, {Tree(call_symbol(g.states[1], 1), {std::move(lcall)}),
                            Tree(call_symbol(g.states[1], 1), {std::move(rcall)})});
      g.rules.emplace(std::make_pair(0, static_cast<int>(si)), std::move(body));
    } else {
      g.rules.emplace(std::make_pair(0, static_cast<int>(si)), Tree(*leaf));
    }
    // pass-through state
    g.rules.emplace(std::make_pair(1, static_cast<int>(si)), Tree(param_symbol(1)));
    // component rules
    int sym1 = left.mtt->input.index_of(c1);
    int sym2 = right.mtt->input.index_of(c2);
    if (sym1 < 0 || sym2 < 0)
      throw PreconditionError("equivalence_gadget: relabeled symbols fall outside an mtt's input");
    for (std::size_t q = 0; q < left.mtt->states.size(); ++q)
      g.rules.emplace(std::make_pair(lstate.at(static_cast<int>(q)), static_cast<int>(si)),
                      lift(lift, *left.mtt, lstate, left.mtt->rule(static_cast<int>(q), sym1)));
    for (std::size_t q = 0; q < right.mtt->states.size(); ++q)
      g.rules.emplace(std::make_pair(rstate.at(static_cast<int>(q)), static_cast<int>(si)),
                      lift(lift, *right.mtt, rstate, right.mtt->rule(static_cast<int>(q), sym2)));
  }
  return out;
}

}  // namespace ttrans
