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

// Static analyses on macro tree transducers: parameter-survival profiles,
// importance of right-hand-side positions, argument truncation (top), call
// consistency, the parameter-renaming variant of consistency, and
// permanence.

#ifndef TTRANS_ANALYSIS_HPP
#define TTRANS_ANALYSIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttrans/mtt.hpp"

namespace ttrans {

/// For each state, the set of parameter indices that survive into the
/// output on some (fixed) input subtree.
struct OccurrenceProfile {
  std::vector<std::set<int>> per_state;  // indexed like Mtt::states

  friend bool operator==(const OccurrenceProfile& a, const OccurrenceProfile& b) {
    return a.per_state == b.per_state;
  }
  friend bool operator<(const OccurrenceProfile& a, const OccurrenceProfile& b) {
    return a.per_state < b.per_state;
  }
};

/// The reachable profiles of an MTT in discovery order (named p1, p2, ...)
/// together with the bottom-up transition function.
struct ProfileSet {
  std::vector<OccurrenceProfile> profiles;
  /// (input-symbol index, child profile ids) -> profile id.
  std::map<std::pair<int, std::vector<int>>, int> transition;

  std::string name_of(int id) const { return "p" + std::to_string(id + 1); }
  int id_of_name(const std::string& name) const;
};

/// Least set of profiles closed under the per-symbol survival recursion.
ProfileSet occurrence_profiles(const Mtt& m);

/// Parameter indices of `rhs` that survive when each child i realizes the
/// given profile.
std::set<int> surviving_params(const Mtt& m, const ProfileSet& ps, const Tree& rhs,
                               const std::vector<int>& child_profiles);

/// Whether the node `v` of rhs(q, sigma) survives into the output for some
/// choice of input subtrees. Decided via reachable profiles: one profile is
/// chosen per input variable, and every strict state-call ancestor must keep
/// the argument position leading to `v`.
bool is_important(const Mtt& m, const std::string& q, const std::string& sigma,
                  const Path& v);
bool is_important(const Mtt& m, const ProfileSet& ps, int q, int sigma, const Path& v);

/// Truncation of a right-hand side at its outermost state calls: a call of
/// q' on x_i becomes the leaf `q'(pi i)`, output symbols are kept, and a
/// parameter y_j becomes the leaf `yj(pi)`.
Tree top(const Mtt& m, const Tree& rhs);

struct ConsistencyViolation {
  std::string sigma;
  std::string q1, q2;  // the rules whose calls disagree
  Path w1, w2;         // positions of the two calls
  int j = 0;           // the shared argument index
  Tree top1, top2;     // the differing truncations
};

/// Checks that co-indexed state calls agree, after truncation, on every
/// argument position that is important in both rules. Returns the first
/// violation in declaration order.
std::optional<ConsistencyViolation> is_consistent(const Mtt& m);

/// A per-state injective renaming of parameter indices.
class ParamRenaming {
 public:
  void set(const std::string& state, int j, int target);
  void erase(const std::string& state, int j) { map_.erase({state, j}); }
  std::optional<int> get(const std::string& state, int j) const;
  /// Throws PreconditionError when (state, j) is unmapped.
  int at(const std::string& state, int j) const;
  int max_target() const;  // 0 when empty
  const std::map<std::pair<std::string, int>, int>& entries() const { return map_; }
  /// Per-state injectivity over [rank(q)]; messages on violations.
  std::vector<std::string> validate(const Mtt& m) const;
  bool covers(const Mtt& m) const;  // defined on every (q, j in [rank q])

 private:
  std::map<std::pair<std::string, int>, int> map_;
};

/// The parameter renaming substitution of a state: y_l -> y_{rho(q,l)}.
Tree apply_renaming(const ParamRenaming& rho, const std::string& state, int rank,
                    const Tree& t);

struct FvViolation {
  std::string sigma;
  std::string q1, q2;  // rules owning the two subtrees
  Path occ1, occ2;     // call positions within the rules
  int j1 = 0, j2 = 0;  // argument indices with equal renamed target
  Tree t1, t2;         // the renamed argument trees that differ
};

/// The renaming-relaxed consistency check for nondeleting MTTs: whenever two
/// calls on the same input variable have argument indices renamed to the
/// same target, the renamed argument trees must be equal.
/// Throws PreconditionError when `m` is deleting or `rho` is not per-state
/// injective / not total on the parameter positions.
std::optional<FvViolation> check_fv(const Mtt& m, const ParamRenaming& rho);

/// Searches for a renaming under which check_fv passes: backtracking over
/// per-state injective assignments with range bounded by the total parameter
/// count, smallest targets first (so the found renaming is canonical).
std::optional<ParamRenaming> find_rho(const Mtt& m);

/// Whether the j-th argument position is important at every call site of
/// state q.
bool is_permanent(const Mtt& m, const std::string& q, int j);

}  // namespace ttrans

#endif  // TTRANS_ANALYSIS_HPP
