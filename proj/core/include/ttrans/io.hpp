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

// Text formats for the four transducer kinds and for parameter renamings.
// `//` starts a line comment in all formats.
//
//   mtt <name> { input { sym/rank ... } output { ... } states { q/rank ... }
//                initial q  rule q sigma(x1,..,xk)(y1,..,ym) -> rhs ... }
//     rhs ::= out-sym ["(" rhs,... ")"] | y<j> | q "[" x<i> "]" ["(" rhs,... ")"]
//
//   att <name> { input {...} output {...} syn { a ... } inh { b ... } root a
//                at sigma/k { a(pi) -> arhs ; b(pi i) -> arhs ; ... } ... }
//     arhs ::= out-sym ["(" arhs,... ")"] | a "(pi" i ")" | b "(pi)"
//
//   brel <name> { input {...} output {...} states { p ... }
//                 rule sigma(p1,...,pk) -> p : sigma' ... }
//
//   trel <name> { input {...} output {...} states { q ... } initial q
//                 rule q sigma -> sigma' (q1,...,qk) ... }
//
//   renaming files: one `q j -> j'` line per entry.

#ifndef TTRANS_IO_HPP
#define TTRANS_IO_HPP

#include <string>
#include <vector>

#include "ttrans/analysis.hpp"
#include "ttrans/pipeline.hpp"

namespace ttrans {

Mtt parse_mtt(const std::string& text);
Att parse_att(const std::string& text);
Brel parse_brel(const std::string& text);
Trel parse_trel(const std::string& text);

/// Dispatches on the leading keyword (mtt/att/brel/trel).
Stage parse_stage(const std::string& text);

/// Printers emit the canonical form re-parsed by the parsers above.
/// `header` lines are emitted as `//` comments before the body.
std::string print_mtt(const Mtt& m, const std::vector<std::string>& header = {});
std::string print_att(const Att& a, const std::vector<std::string>& header = {});
std::string print_brel(const Brel& b, const std::vector<std::string>& header = {});
std::string print_trel(const Trel& t, const std::vector<std::string>& header = {});
std::string print_stage(const Stage& s, const std::vector<std::string>& header = {});

/// Right-hand sides in their file syntax (used by reports as well).
std::string print_mtt_rhs(const Mtt& m, const Tree& rhs);
std::string print_att_rhs(const Att& a, const Tree& rhs);

ParamRenaming parse_rho(const std::string& text);
std::string print_rho(const ParamRenaming& rho);

}  // namespace ttrans

#endif  // TTRANS_IO_HPP
