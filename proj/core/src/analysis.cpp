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

#include "ttrans/analysis.hpp"

#include <algorithm>

#include "ttrans/att.hpp"

namespace ttrans {

int ProfileSet::id_of_name(const std::string& name) const {
  if (name.size() < 2 || name[0] != 'p') return -1;
  int id = std::stoi(name.substr(1)) - 1;
  return (id >= 0 && id < static_cast<int>(profiles.size())) ? id : -1;
}

std::set<int> surviving_params(const Mtt& m, const ProfileSet& ps, const Tree& rhs,
                               const std::vector<int>& child_profiles) {
  if (auto j = param_index(rhs.label())) return {*j};
  std::set<int> out;
  if (auto call = parse_call(rhs.label(), m)) {
    const OccurrenceProfile& p =
        ps.profiles[static_cast<std::size_t>(child_profiles[static_cast<std::size_t>(call->var) - 1])];
    for (int j : p.per_state[static_cast<std::size_t>(call->state)]) {
      auto sub = surviving_params(m, ps, rhs.child(j), child_profiles);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }
  for (const auto& c : rhs.children()) {
    auto sub = surviving_params(m, ps, c, child_profiles);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

ProfileSet occurrence_profiles(const Mtt& m) {
  ProfileSet ps;
  std::map<OccurrenceProfile, int> known;

  auto compute = [&](int sym, const std::vector<int>& child_ids) {
    OccurrenceProfile p0;
    p0.per_state.resize(m.states.size());
    for (std::size_t q = 0; q < m.states.size(); ++q)
      p0.per_state[q] =
          surviving_params(m, ps, m.rule(static_cast<int>(q), sym), child_ids);
    auto it = known.find(p0);
    int id;
    if (it == known.end()) {
      id = static_cast<int>(ps.profiles.size());
      known.emplace(p0, id);
      ps.profiles.push_back(std::move(p0));
    } else {
      id = it->second;
    }
    ps.transition[{sym, child_ids}] = id;
  };

  while (true) {
    std::size_t count = ps.profiles.size();
    for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
      int k = m.input.at(sym).rank;
      if (k == 0) {
        if (!ps.transition.count({static_cast<int>(sym), {}})) compute(static_cast<int>(sym), {});
        continue;
      }
      if (count == 0) continue;
      std::vector<int> tuple(static_cast<std::size_t>(k), 0);
      while (true) {
        if (!ps.transition.count({static_cast<int>(sym), tuple}))
          compute(static_cast<int>(sym), tuple);
        int pos = k - 1;
        while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == static_cast<int>(count)) {
          tuple[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    if (ps.profiles.size() == count) break;
  }
  return ps;
}

bool is_important(const Mtt& m, const ProfileSet& ps, int q, int sigma, const Path& v) {
  const Tree& rhs = m.rule(q, sigma);
  if (!is_valid_path(rhs, v))
    throw EvalError("invalid position " + format_path(v) + " in rule (" +
                    m.state_at(q).name + ", " +
                    m.input.at(static_cast<std::size_t>(sigma)).name + ")");

  // Walk the ancestors of v and collect, per input variable, the argument
  // positions that must survive.
  int k = m.input.at(static_cast<std::size_t>(sigma)).rank;
  std::vector<std::vector<std::pair<int, int>>> constraints(static_cast<std::size_t>(k));
  const Tree* cur = &rhs;
  for (std::size_t depth = 0; depth < v.size(); ++depth) {
    int step = v[depth];
    if (auto call = parse_call(cur->label(), m))
      constraints[static_cast<std::size_t>(call->var) - 1].push_back({call->state, step});
    cur = &cur->child(step);
  }

  for (int i = 0; i < k; ++i) {
    if (constraints[static_cast<std::size_t>(i)].empty()) continue;
    bool satisfiable = false;
    for (const auto& p : ps.profiles) {
      bool ok = true;
      for (auto [state, j] : constraints[static_cast<std::size_t>(i)])
        if (!p.per_state[static_cast<std::size_t>(state)].count(j)) {
          ok = false;
          break;
        }
      if (ok) {
        satisfiable = true;
        break;
      }
    }
    if (!satisfiable) return false;
  }
  return true;
}

bool is_important(const Mtt& m, const std::string& q, const std::string& sigma,
                  const Path& v) {
  int qi = m.state_index(q);
  int si = m.input.index_of(sigma);
  if (qi < 0) throw EvalError("unknown state '" + q + "'");
  if (si < 0) throw EvalError("unknown input symbol '" + sigma + "'");
  return is_important(m, occurrence_profiles(m), qi, si, v);
}

Tree top(const Mtt& m, const Tree& rhs) {
  if (auto call = parse_call(rhs.label(), m))
    return Tree(syn_ref(m.state_at(call->state).name, call->var));
  if (auto j = param_index(rhs.label())) return Tree(inh_ref("y" + std::to_string(*j)));
  std::vector<Tree> children;
  children.reserve(rhs.children().size());
  for (const auto& c : rhs.children()) children.push_back(top(m, c));
  return Tree(rhs.label(), std::move(children));
}

namespace {

struct CallOccurrence {
  Path pos;
  CallRef ref;
};

void collect_calls(const Mtt& m, const Tree& t, Path& prefix, std::vector<CallOccurrence>& out) {
  if (auto call = parse_call(t.label(), m)) out.push_back({prefix, *call});
  for (int i = 1; i <= t.label().rank; ++i) {
    prefix.push_back(i);
    collect_calls(m, t.child(i), prefix, out);
    prefix.pop_back();
  }
}

std::vector<CallOccurrence> calls_of(const Mtt& m, const Tree& t) {
  std::vector<CallOccurrence> out;
  Path prefix;
  collect_calls(m, t, prefix, out);
  return out;
}

}  // namespace

std::optional<ConsistencyViolation> is_consistent(const Mtt& m) {
  ProfileSet ps = occurrence_profiles(m);
  for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
    std::vector<std::vector<CallOccurrence>> calls(m.states.size());
    for (std::size_t q = 0; q < m.states.size(); ++q)
      calls[q] = calls_of(m, m.rule(static_cast<int>(q), static_cast<int>(sym)));
    for (std::size_t q1 = 0; q1 < m.states.size(); ++q1) {
      for (std::size_t q2 = 0; q2 < m.states.size(); ++q2) {
        for (const auto& c1 : calls[q1]) {
          for (const auto& c2 : calls[q2]) {
            if (c1.ref.var != c2.ref.var) continue;
            int m1 = m.state_at(c1.ref.state).rank;
            int m2 = m.state_at(c2.ref.state).rank;
            for (int j = 1; j <= std::min(m1, m2); ++j) {
              Path w1 = c1.pos;
              w1.push_back(j);
              Path w2 = c2.pos;
              w2.push_back(j);
              if (!is_important(m, ps, static_cast<int>(q1), static_cast<int>(sym), w1) ||
                  !is_important(m, ps, static_cast<int>(q2), static_cast<int>(sym), w2))
                continue;
              const Tree& rhs1 = m.rule(static_cast<int>(q1), static_cast<int>(sym));
              const Tree& rhs2 = m.rule(static_cast<int>(q2), static_cast<int>(sym));
              Tree t1 = top(m, subtree(rhs1, w1));
              Tree t2 = top(m, subtree(rhs2, w2));
              if (t1 != t2)
                return ConsistencyViolation{m.input.at(sym).name,
                                            m.state_at(static_cast<int>(q1)).name,
                                            m.state_at(static_cast<int>(q2)).name,
                                            w1,
                                            w2,
                                            j,
                                            std::move(t1),
                                            std::move(t2)};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

void ParamRenaming::set(const std::string& state, int j, int target) {
  if (j < 1 || target < 1)
    throw PreconditionError("parameter renaming indices are 1-based");
  map_[{state, j}] = target;
}

std::optional<int> ParamRenaming::get(const std::string& state, int j) const {
  auto it = map_.find({state, j});
  return it == map_.end() ? std::nullopt : std::optional<int>(it->second);
}

int ParamRenaming::at(const std::string& state, int j) const {
  auto v = get(state, j);
  if (!v)
    throw PreconditionError("renaming undefined on (" + state + ", " + std::to_string(j) + ")");
  return *v;
}

int ParamRenaming::max_target() const {
  int mx = 0;
  for (const auto& [key, v] : map_) {
    (void)key;
    mx = std::max(mx, v);
  }
  return mx;
}

std::vector<std::string> ParamRenaming::validate(const Mtt& m) const {
  std::vector<std::string> out;
  for (const auto& q : m.states) {
    std::set<int> seen;
    for (int j = 1; j <= q.rank; ++j) {
      auto v = get(q.name, j);
      if (!v) {
        out.push_back("renaming undefined on (" + q.name + ", " + std::to_string(j) + ")");
        continue;
      }
      if (!seen.insert(*v).second)
        out.push_back("renaming is not injective on state '" + q.name + "'");
    }
  }
  return out;
}

bool ParamRenaming::covers(const Mtt& m) const {
  for (const auto& q : m.states)
    for (int j = 1; j <= q.rank; ++j)
      if (!get(q.name, j)) return false;
  return true;
}

Tree apply_renaming(const ParamRenaming& rho, const std::string& state, int rank,
                    const Tree& t) {
  LeafSubstitution sub;
  for (int l = 1; l <= rank; ++l) sub.bind(param_symbol(l), Tree(param_symbol(rho.at(state, l))));
  return subst_leaves(t, sub);
}

namespace {

// Tests xi1 ~ xi2 for two call-rooted subtrees of the rules of q1 and q2:
// argument indices renamed to the same target must carry equal renamed
// argument trees. The renaming may be partial; pairs touching unmapped
// states are skipped (used by the search).
std::optional<FvViolation> related_after_renaming(const Mtt& m, const ParamRenaming& rho,
                                                  const std::string& sigma,
                                                  const std::string& q1, const Tree& rhs1,
                                                  const CallOccurrence& c1,
                                                  const std::string& q2, const Tree& rhs2,
                                                  const CallOccurrence& c2) {
  const State& p1 = m.state_at(c1.ref.state);
  const State& p2 = m.state_at(c2.ref.state);
  int rank1 = m.state_rank(q1);
  int rank2 = m.state_rank(q2);
  for (int j1 = 1; j1 <= p1.rank; ++j1) {
    auto r1 = rho.get(p1.name, j1);
    if (!r1) continue;
    for (int j2 = 1; j2 <= p2.rank; ++j2) {
      auto r2 = rho.get(p2.name, j2);
      if (!r2 || *r1 != *r2) continue;
      // Renaming the outer rules' parameters needs rho on q1/q2 too.
      bool mapped = true;
      for (int l = 1; l <= rank1 && mapped; ++l) mapped = rho.get(q1, l).has_value();
      for (int l = 1; l <= rank2 && mapped; ++l) mapped = rho.get(q2, l).has_value();
      if (!mapped) continue;
      Path a1 = c1.pos;
      a1.push_back(j1);
      Path a2 = c2.pos;
      a2.push_back(j2);
      Tree t1 = apply_renaming(rho, q1, rank1, subtree(rhs1, a1));
      Tree t2 = apply_renaming(rho, q2, rank2, subtree(rhs2, a2));
      if (t1 != t2)
        return FvViolation{sigma, q1, q2, c1.pos, c2.pos, j1, j2, std::move(t1), std::move(t2)};
    }
  }
  return std::nullopt;
}

std::optional<FvViolation> check_fv_partial(const Mtt& m, const ParamRenaming& rho) {
  for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
    const std::string& sigma = m.input.at(sym).name;
    std::vector<std::vector<CallOccurrence>> calls(m.states.size());
    for (std::size_t q = 0; q < m.states.size(); ++q)
      calls[q] = calls_of(m, m.rule(static_cast<int>(q), static_cast<int>(sym)));
    for (std::size_t q1 = 0; q1 < m.states.size(); ++q1)
      for (std::size_t q2 = 0; q2 < m.states.size(); ++q2)
        for (const auto& c1 : calls[q1])
          for (const auto& c2 : calls[q2]) {
            if (c1.ref.var != c2.ref.var) continue;
            auto v = related_after_renaming(
                m, rho, sigma, m.state_at(static_cast<int>(q1)).name,
                m.rule(static_cast<int>(q1), static_cast<int>(sym)), c1,
                m.state_at(static_cast<int>(q2)).name,
                m.rule(static_cast<int>(q2), static_cast<int>(sym)), c2);
            if (v) return v;
          }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FvViolation> check_fv(const Mtt& m, const ParamRenaming& rho) {
  if (!is_nondeleting(m))
    throw PreconditionError("check_fv requires a nondeleting mtt; '" + m.name +
                            "' deletes a parameter");
  auto report = rho.validate(m);
  if (!report.empty()) {
    std::string msg = "ill-formed parameter renaming:";
    for (const auto& r : report) msg += "\n  " + r;
    throw PreconditionError(msg);
  }
  return check_fv_partial(m, rho);
}

std::optional<ParamRenaming> find_rho(const Mtt& m) {
  if (!is_nondeleting(m))
    throw PreconditionError("find_rho requires a nondeleting mtt; '" + m.name +
                            "' deletes a parameter");

  // Positions to assign, in declaration order. Any witness renaming can be
  // compressed into targets bounded by the total parameter count.
  std::vector<std::pair<std::string, int>> slots;
  int bound = 0;
  for (const auto& q : m.states) {
    bound += q.rank;
    for (int j = 1; j <= q.rank; ++j) slots.push_back({q.name, j});
  }
  if (slots.empty()) return ParamRenaming{};

  ParamRenaming rho;
  // Depth-first over targets, smallest first; a violated pair stays
  // violated under every extension, so pruning on the partial check is
  // sound and the first solution is the canonical (smallest) one.
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == slots.size()) return true;
    const auto& [state, j] = slots[i];
    for (int target = 1; target <= bound; ++target) {
      bool clash = false;
      for (int j2 = 1; j2 < j; ++j2)
        if (rho.get(state, j2) == target) clash = true;
      if (clash) continue;
      rho.set(state, j, target);
      if (!check_fv_partial(m, rho) && self(self, i + 1)) return true;
      rho.erase(state, j);
    }
    return false;
  };
  if (assign(assign, 0)) return rho;
  return std::nullopt;
}

bool is_permanent(const Mtt& m, const std::string& q, int j) {
  int qi = m.state_index(q);
  if (qi < 0) throw EvalError("unknown state '" + q + "'");
  int rank = m.state_at(qi).rank;
  if (j < 1 || j > rank)
    throw EvalError("parameter index " + std::to_string(j) + " out of range [1.." +
                    std::to_string(rank) + "] for state '" + q + "'");
  ProfileSet ps = occurrence_profiles(m);
  for (std::size_t q2 = 0; q2 < m.states.size(); ++q2)
    for (std::size_t sym = 0; sym < m.input.size(); ++sym) {
      const Tree& rhs = m.rule(static_cast<int>(q2), static_cast<int>(sym));
      for (const auto& occ : calls_of(m, rhs)) {
        if (occ.ref.state != qi) continue;
        Path vj = occ.pos;
        vj.push_back(j);
        if (!is_important(m, ps, static_cast<int>(q2), static_cast<int>(sym), vj))
          return false;
      }
    }
  return true;
}

}  // namespace ttrans
