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

// Transducer-to-transducer constructions: rank padding to a consistent MTT,
// MTT-to-ATT in both the padded and the direct form, ATT-to-MTT, the
// nondeleting and nonerasing normal forms with bottom-up look-ahead, and
// the product of a top-down relabeling with an MTT.

#ifndef TTRANS_CONSTRUCTIONS_HPP
#define TTRANS_CONSTRUCTIONS_HPP

#include <optional>

#include "ttrans/analysis.hpp"
#include "ttrans/att.hpp"
#include "ttrans/relabel.hpp"

namespace ttrans {

/// A normal form: a bottom-up look-ahead relabeling followed by a core MTT.
struct NormalFormResult {
  Brel lookahead;
  Mtt core;
  /// The renaming under which the core has the renaming-consistency
  /// property (nondeleting form only).
  std::optional<ParamRenaming> renaming;
};

/// Pads every state of a renaming-consistent MTT to the uniform rank
/// max(range of rho): argument trees move to their renamed slots, the rest
/// are filled with the first rank-0 output symbol, and parameters are
/// renamed. Rank-0 states are unchanged. The result is consistent and
/// equivalent to `m`.
Mtt expand_to_consistent(const Mtt& m, const ParamRenaming& rho);

/// Builds the ATT of a padded consistent MTT: states become synthesized
/// attributes, parameter slots y1..ym~ become inherited attributes. Each
/// call occurrence contributes inherited rules for its important argument
/// positions; duplicate definitions must agree (they do for expansion
/// outputs) and conflicting ones raise ConstructionError.
Att omega(const Mtt& m);

/// The direct MTT-to-ATT construction driven by a renaming: inherited
/// attributes are the renaming targets and argument trees are truncated
/// with parameters mapped through rho. Requires check_fv(m, rho) to pass.
Att omega_direct(const Mtt& m, const ParamRenaming& rho);

/// Builds an MTT equivalent to a non-circular ATT: synthesized attributes
/// become states of rank |inh|, and calls receive the per-child solved
/// inherited argument trees. Argument slots whose attribute can never be
/// demanded by the called state are cut to the first rank-0 output symbol,
/// which keeps the local solving finite; the result is consistent.
Mtt att_to_consistent_mtt(const Att& a);

/// The nondeleting normal form: the look-ahead annotates every node with
/// the parameter-survival profiles of its children, and the core tracks for
/// each state the set of surviving parameters, dropping deleted arguments.
/// The returned renaming maps (q, I) slot j to the j-th smallest member of
/// I; when `m` is consistent the core has the renaming-consistency property
/// with it.
NormalFormResult nondeleting_nf(const Mtt& m);

/// The nonerasing normal form of a nondeleting MTT: the look-ahead
/// annotates each node with the set of states that erase on it, the core
/// inlines calls of erasing states into their argument, and surviving bare
/// parameters are wrapped in a fresh rank-1 output symbol.
NormalFormResult nonerasing_nf(const Mtt& m);

/// Product of a top-down relabeling with an MTT: states are pairs, and the
/// result is equivalent to running the relabeling first.
Mtt trel_mtt_product(const Trel& e, const Mtt& m);

/// expand_to_consistent followed by omega; the result is asserted to be
/// globally non-circular.
Att fv_to_att(const Mtt& m, const ParamRenaming& rho);

}  // namespace ttrans

#endif  // TTRANS_CONSTRUCTIONS_HPP
