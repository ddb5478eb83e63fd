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

#include "ttrans/mtt.hpp"

#include <set>

namespace ttrans {

int Mtt::state_index(const std::string& state) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].name == state) return static_cast<int>(i);
  return -1;
}

int Mtt::state_rank(const std::string& state) const {
  int i = state_index(state);
  if (i < 0) throw EvalError("unknown state '" + state + "' in mtt '" + name + "'");
  return states[static_cast<std::size_t>(i)].rank;
}

const Tree& Mtt::rule(int state, int symbol) const {
  auto it = rules.find({state, symbol});
  if (it == rules.end())
    throw EvalError("missing rule (" + states[static_cast<std::size_t>(state)].name + ", " +
                    input.at(static_cast<std::size_t>(symbol)).name + ") in mtt '" + name + "'");
  return it->second;
}

const Tree& Mtt::rule(const std::string& state, const std::string& symbol) const {
  int q = state_index(state);
  int s = input.index_of(symbol);
  if (q < 0) throw EvalError("unknown state '" + state + "'");
  if (s < 0) throw EvalError("unknown input symbol '" + symbol + "'");
  return rule(q, s);
}

Symbol call_symbol(const State& q, int var) {
  std::string suffix = var == 0 ? "[x]" : "[x" + std::to_string(var) + "]";
  return Symbol{q.name + suffix, q.rank};
}

std::optional<CallRef> parse_call(const Symbol& label, const Mtt& m) {
  if (label.name.size() < 3 || label.name.back() != ']') return std::nullopt;
  std::size_t open = label.name.rfind("[x");
  if (open == std::string::npos || open == 0) return std::nullopt;
  std::string digits = label.name.substr(open + 2, label.name.size() - open - 3);
  int var = 0;
  if (!digits.empty()) {
    for (char c : digits)
      if (c < '0' || c > '9') return std::nullopt;
    var = std::stoi(digits);
    if (var < 1) return std::nullopt;
  }
  std::string state = label.name.substr(0, open);
  int idx = m.state_index(state);
  if (idx < 0 || m.states[static_cast<std::size_t>(idx)].rank != label.rank)
    return std::nullopt;
  return CallRef{idx, var};
}

namespace {

void check_rhs(const Mtt& m, const Tree& t, int k, int rank, const std::string& where,
               std::vector<std::string>& out) {
  if (auto j = param_index(t.label())) {
    if (*j > rank)
      out.push_back(where + ": parameter y" + std::to_string(*j) + " out of range [1.." +
                    std::to_string(rank) + "]");
    return;
  }
  if (auto call = parse_call(t.label(), m)) {
    if (call->var == 0)
      out.push_back(where + ": context-hole call '" + t.label().name +
                    "' is not allowed in a rule");
    else if (call->var > k)
      out.push_back(where + ": input variable x" + std::to_string(call->var) +
                    " out of range [1.." + std::to_string(k) + "]");
  } else {
    const Symbol* sym = m.output.find(t.label().name);
    if (!sym)
      out.push_back(where + ": unknown output symbol '" + t.label().name + "'");
    else if (sym->rank != t.label().rank)
      out.push_back(where + ": output symbol '" + t.label().name + "' used with rank " +
                    std::to_string(t.label().rank) + " but declared /" +
                    std::to_string(sym->rank));
  }
  for (const auto& c : t.children()) check_rhs(m, c, k, rank, where, out);
}

}  // namespace

std::vector<std::string> validate_mtt(const Mtt& m) {
  std::vector<std::string> out;
  std::set<std::string> state_names;
  for (const auto& q : m.states) {
    if (!state_names.insert(q.name).second)
      out.push_back("duplicate state name '" + q.name + "'");
    if (q.rank < 0) out.push_back("state '" + q.name + "' has negative rank");
  }
  int q0 = m.state_index(m.initial);
  if (q0 < 0)
    out.push_back("initial state '" + m.initial + "' is not declared");
  else if (m.states[static_cast<std::size_t>(q0)].rank != 0)
    out.push_back("initial state '" + m.initial + "' has rank " +
                  std::to_string(m.states[static_cast<std::size_t>(q0)].rank) +
                  ", must be 0");

  for (const auto& a : {&m.input, &m.output})
    for (const auto& s : a->symbols()) {
      if (is_reserved_leaf_name(s.name))
        out.push_back("alphabet symbol '" + s.name +
                      "' collides with the reserved y<j>/x<i>/@x namespaces");
      if (parse_call(s, m))
        out.push_back("alphabet symbol '" + s.name + "' is ambiguous with a state call");
    }

  for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
    for (std::size_t si = 0; si < m.input.size(); ++si) {
      auto it = m.rules.find({static_cast<int>(qi), static_cast<int>(si)});
      const State& q = m.states[qi];
      const Symbol& sym = m.input.at(si);
      std::string where = "rule (" + q.name + ", " + sym.name + ")";
      if (it == m.rules.end()) {
        out.push_back("missing rule (" + q.name + ", " + sym.name + ")");
        continue;
      }
      check_rhs(m, it->second, sym.rank, q.rank, where, out);
    }
  }
  for (const auto& [key, rhs] : m.rules) {
    (void)rhs;
    if (key.first < 0 || key.first >= static_cast<int>(m.states.size()) || key.second < 0 ||
        key.second >= static_cast<int>(m.input.size()))
      out.push_back("rule keyed outside the declared states/input alphabet");
  }
  return out;
}

void require_valid(const Mtt& m) {
  auto report = validate_mtt(m);
  if (!report.empty()) {
    std::string msg = "invalid mtt '" + m.name + "':";
    for (const auto& r : report) msg += "\n  " + r;
    throw ValidationError(msg);
  }
}

namespace {

void collect_params(const Tree& t, std::set<int>& out) {
  if (auto j = param_index(t.label())) out.insert(*j);
  for (const auto& c : t.children()) collect_params(c, out);
}

}  // namespace

bool is_nondeleting(const Mtt& m) {
  for (const auto& [key, rhs] : m.rules) {
    int rank = m.states[static_cast<std::size_t>(key.first)].rank;
    if (rank == 0) continue;
    std::set<int> used;
    collect_params(rhs, used);
    for (int j = 1; j <= rank; ++j)
      if (!used.count(j)) return false;
  }
  return true;
}

bool is_nonerasing(const Mtt& m) {
  for (const auto& [key, rhs] : m.rules) {
    (void)key;
    if (param_index(rhs.label()).has_value()) return false;
  }
  return true;
}

namespace {

// Shared evaluation core. Holes are nodes whose subtree is replaced by a
// formal context: a call of state q at a hole evaluates to the hole-call
// node applied to its evaluated arguments.
class Evaluator {
 public:
  Evaluator(const Mtt& m, const Tree& s, const Path* hole) : m_(m), s_(s) {
    if (hole) hole_ = *hole;
  }

  Tree eval(int state, const Path& u) {
    auto key = std::make_pair(state, u);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const State& q = m_.state_at(state);
    Tree result = [&] {
      if (hole_ && u == *hole_) {
        std::vector<Tree> params;
        for (int j = 1; j <= q.rank; ++j) params.push_back(Tree(param_symbol(j)));
        return Tree(call_symbol(q, 0), std::move(params));
      }
      const Tree& node = subtree(s_, u);
      int sym = m_.input.index_of(node.label().name);
      if (sym < 0)
        throw EvalError("input symbol '" + node.label().name + "' is not in the input alphabet of mtt '" +
                        m_.name + "'");
      const Tree& rhs = m_.rule(state, sym);
      return expand(rhs, u, node.label().rank);
    }();
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  // rhs[[<q', x_i> <- eval(q', u.i)]] computed structurally: arguments are
  // expanded first, then bound to the callee's parameter leaves.
  Tree expand(const Tree& t, const Path& u, int k) {
    std::vector<Tree> args;
    args.reserve(t.children().size());
    for (const auto& c : t.children()) args.push_back(expand(c, u, k));
    if (auto call = parse_call(t.label(), m_)) {
      Path child = u;
      child.push_back(call->var);
      Tree body = eval(call->state, child);
      LeafSubstitution bind;
      for (int j = 1; j <= t.label().rank; ++j)
        bind.bind(param_symbol(j), args[static_cast<std::size_t>(j) - 1]);
      return subst_leaves(body, bind);
    }
    return Tree(t.label(), std::move(args));
  }

  const Mtt& m_;
  const Tree& s_;
  std::optional<Path> hole_;
  std::map<std::pair<int, Path>, Tree> memo_;
};

}  // namespace

Tree mtt_state_semantics(const Mtt& m, const std::string& q, const Tree& s) {
  int state = m.state_index(q);
  if (state < 0) throw EvalError("unknown state '" + q + "'");
  Evaluator ev(m, s, nullptr);
  return ev.eval(state, {});
}

Tree mtt_translate(const Mtt& m, const Tree& s) {
  return mtt_state_semantics(m, m.initial, s);
}

Tree mtt_context_semantics(const Mtt& m, const Tree& s, const Path& u) {
  return mtt_context_semantics(m, m.initial, s, u);
}

Tree mtt_context_semantics(const Mtt& m, const std::string& q, const Tree& s, const Path& u) {
  if (!is_valid_path(s, u))
    throw EvalError("invalid path " + format_path(u) + " into " + format_tree(s));
  int qi = m.state_index(q);
  if (qi < 0) throw EvalError("unknown state '" + q + "'");
  Evaluator ev(m, s, &u);
  return ev.eval(qi, {});
}

}  // namespace ttrans
