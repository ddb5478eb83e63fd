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

#include "ttrans/relabel.hpp"

#include <algorithm>
#include <set>

namespace ttrans {

int Brel::state_index(const std::string& s) const {
  auto it = std::find(states.begin(), states.end(), s);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int Trel::state_index(const std::string& s) const {
  auto it = std::find(states.begin(), states.end(), s);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

namespace {

// Counts length^k tuples; used to check totality without materializing the
// space when it is empty.
bool check_rule_target(const RankedAlphabet& in, const RankedAlphabet& out, int sym,
                       int out_sym, const std::string& what, std::vector<std::string>& msgs) {
  const Symbol& s = in.at(static_cast<std::size_t>(sym));
  const Symbol& o = out.at(static_cast<std::size_t>(out_sym));
  if (s.rank != o.rank) {
    msgs.push_back(what + ": relabeling '" + s.name + "'/" + std::to_string(s.rank) +
                   " to '" + o.name + "'/" + std::to_string(o.rank) +
                   " does not preserve the arity");
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> validate_brel(const Brel& b) {
  std::vector<std::string> out;
  std::set<std::string> names(b.states.begin(), b.states.end());
  if (names.size() != b.states.size()) out.push_back("duplicate state names");
  if (b.states.empty()) out.push_back("no states");

  for (const auto& [key, target] : b.rules) {
    auto [sym, children] = key;
    if (sym < 0 || sym >= static_cast<int>(b.input.size())) {
      out.push_back("rule keyed on an undeclared input symbol");
      continue;
    }
    const Symbol& s = b.input.at(static_cast<std::size_t>(sym));
    if (static_cast<int>(children.size()) != s.rank)
      out.push_back("rule for '" + s.name + "' lists " + std::to_string(children.size()) +
                    " child states, rank is " + std::to_string(s.rank));
    for (int p : children)
      if (p < 0 || p >= static_cast<int>(b.states.size()))
        out.push_back("rule for '" + s.name + "' uses an undeclared child state");
    if (target.first < 0 || target.first >= static_cast<int>(b.states.size()))
      out.push_back("rule for '" + s.name + "' targets an undeclared state");
    if (target.second < 0 || target.second >= static_cast<int>(b.output.size()))
      out.push_back("rule for '" + s.name + "' emits an undeclared output symbol");
    else
      check_rule_target(b.input, b.output, sym, target.second, "brel '" + b.name + "'", out);
  }

  // Totality: one rule per (symbol, state tuple).
  std::size_t n = b.states.size();
  for (std::size_t sym = 0; sym < b.input.size(); ++sym) {
    int k = b.input.at(sym).rank;
    std::size_t expected = 1;
    for (int i = 0; i < k; ++i) expected *= n;
    std::size_t have = 0;
    for (const auto& [key, target] : b.rules) {
      (void)target;
      if (key.first == static_cast<int>(sym)) ++have;
    }
    if (have != expected)
      out.push_back("symbol '" + b.input.at(sym).name + "' has " + std::to_string(have) +
                    " rules, totality requires " + std::to_string(expected));
  }
  return out;
}

std::vector<std::string> validate_trel(const Trel& t) {
  std::vector<std::string> out;
  std::set<std::string> names(t.states.begin(), t.states.end());
  if (names.size() != t.states.size()) out.push_back("duplicate state names");
  if (t.state_index(t.initial) < 0)
    out.push_back("initial state '" + t.initial + "' is not declared");

  for (std::size_t q = 0; q < t.states.size(); ++q)
    for (std::size_t sym = 0; sym < t.input.size(); ++sym)
      if (!t.rules.count({static_cast<int>(q), static_cast<int>(sym)}))
        out.push_back("missing rule (" + t.states[q] + ", " + t.input.at(sym).name + ")");

  for (const auto& [key, target] : t.rules) {
    auto [q, sym] = key;
    if (q < 0 || q >= static_cast<int>(t.states.size()) || sym < 0 ||
        sym >= static_cast<int>(t.input.size())) {
      out.push_back("rule keyed on an undeclared state or symbol");
      continue;
    }
    const Symbol& s = t.input.at(static_cast<std::size_t>(sym));
    if (target.first < 0 || target.first >= static_cast<int>(t.output.size())) {
      out.push_back("rule for '" + s.name + "' emits an undeclared output symbol");
      continue;
    }
    check_rule_target(t.input, t.output, sym, target.first, "trel '" + t.name + "'", out);
    if (static_cast<int>(target.second.size()) != s.rank)
      out.push_back("rule (" + t.states[static_cast<std::size_t>(q)] + ", " + s.name +
                    ") lists " + std::to_string(target.second.size()) +
                    " child states, rank is " + std::to_string(s.rank));
    for (int c : target.second)
      if (c < 0 || c >= static_cast<int>(t.states.size()))
        out.push_back("rule for '" + s.name + "' sends a child to an undeclared state");
  }
  return out;
}

void require_valid(const Brel& b) {
  auto report = validate_brel(b);
  if (!report.empty()) {
    std::string msg = "invalid brel '" + b.name + "':";
    for (const auto& r : report) msg += "\n  " + r;
    throw ValidationError(msg);
  }
}

void require_valid(const Trel& t) {
  auto report = validate_trel(t);
  if (!report.empty()) {
    std::string msg = "invalid trel '" + t.name + "':";
    for (const auto& r : report) msg += "\n  " + r;
    throw ValidationError(msg);
  }
}

namespace {

std::pair<Tree, int> brel_run(const Brel& b, const Tree& s) {
  std::vector<Tree> children;
  std::vector<int> child_states;
  children.reserve(s.children().size());
  for (const auto& c : s.children()) {
    auto [tree, state] = brel_run(b, c);
    children.push_back(std::move(tree));
    child_states.push_back(state);
  }
  int sym = b.input.index_of(s.label().name);
  if (sym < 0)
    throw EvalError("input symbol '" + s.label().name + "' is not in the input alphabet of brel '" +
                    b.name + "'");
  auto it = b.rules.find({sym, child_states});
  if (it == b.rules.end())
    throw EvalError("brel '" + b.name + "' has no rule for '" + s.label().name +
                    "' under the reached child states");
  auto [state, out_sym] = it->second;
  return {Tree(b.output.at(static_cast<std::size_t>(out_sym)), std::move(children)), state};
}

Tree trel_run(const Trel& t, int q, const Tree& s) {
  int sym = t.input.index_of(s.label().name);
  if (sym < 0)
    throw EvalError("input symbol '" + s.label().name + "' is not in the input alphabet of trel '" +
                    t.name + "'");
  auto it = t.rules.find({q, sym});
  if (it == t.rules.end())
    throw EvalError("trel '" + t.name + "' has no rule (" +
                    t.states[static_cast<std::size_t>(q)] + ", " + s.label().name + ")");
  const auto& [out_sym, child_states] = it->second;
  std::vector<Tree> children;
  children.reserve(s.children().size());
  for (std::size_t i = 0; i < s.children().size(); ++i)
    children.push_back(trel_run(t, child_states[i], s.children()[i]));
  return Tree(t.output.at(static_cast<std::size_t>(out_sym)), std::move(children));
}

}  // namespace

std::pair<Tree, std::string> brel_apply(const Brel& b, const Tree& s) {
  auto [tree, state] = brel_run(b, s);
  return {std::move(tree), b.states[static_cast<std::size_t>(state)]};
}

Tree trel_apply(const Trel& t, const Tree& s) {
  int q0 = t.state_index(t.initial);
  if (q0 < 0) throw EvalError("unknown initial state '" + t.initial + "'");
  return trel_run(t, q0, s);
}

Brel identity_brel(const RankedAlphabet& alphabet) {
  Brel b;
  b.name = "identity";
  b.input = alphabet;
  b.output = alphabet;
  b.states = {"p"};
  for (std::size_t sym = 0; sym < alphabet.size(); ++sym) {
    std::vector<int> children(static_cast<std::size_t>(alphabet.at(sym).rank), 0);
    b.rules[{static_cast<int>(sym), children}] = {0, static_cast<int>(sym)};
  }
  return b;
}

Trel identity_trel(const RankedAlphabet& alphabet) {
  Trel t;
  t.name = "identity";
  t.input = alphabet;
  t.output = alphabet;
  t.states = {"q"};
  t.initial = "q";
  for (std::size_t sym = 0; sym < alphabet.size(); ++sym) {
    std::vector<int> children(static_cast<std::size_t>(alphabet.at(sym).rank), 0);
    t.rules[{0, static_cast<int>(sym)}] = {static_cast<int>(sym), children};
  }
  return t;
}

}  // namespace ttrans
