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

#include <doctest.h>

#include "fixtures.hpp"
#include "ttrans/constructions.hpp"
#include "ttrans/difftest.hpp"
#include "ttrans/dynfv.hpp"
#include "ttrans/io.hpp"

using namespace ttrans;
using namespace ttrans::testing;

namespace {

Tree call(const std::string& state, int rank, int var, std::vector<Tree> args = {}) {
  return Tree(call_symbol(State{state, rank}, var), std::move(args));
}

}  // namespace

TEST_CASE("expansion reproduces the padded golden transducer") {
  Mtt ma = load_mtt("ma.mtt");
  auto rho = find_rho(ma);
  REQUIRE(rho.has_value());
  Mtt expanded = expand_to_consistent(ma, *rho);
  CHECK(validate_mtt(expanded).empty());
  CHECK(same_mtt_modulo_name(expanded, load_mtt("ma_expanded.mtt")));
}

TEST_CASE("expansion of a parameterless transducer is the identity") {
  Mtt c = load_mtt("const_e.mtt");
  Mtt e = expand_to_consistent(c, ParamRenaming{});
  CHECK(same_mtt_modulo_name(e, c));
}

TEST_CASE("expansion rejects deleting inputs and missing padding symbols") {
  ParamRenaming rho;
  rho.set("q", 1, 1);
  rho.set("q1", 1, 1);
  rho.set("q2", 1, 1);
  CHECK_THROWS_AS(expand_to_consistent(load_mtt("mc.mtt"), rho), PreconditionError);
}

TEST_CASE("the att of the expanded monadic fixture") {
  Mtt ma = load_mtt("ma.mtt");
  Att a = fv_to_att(ma, *find_rho(ma));
  CHECK(validate_att(a).empty());
  CHECK(a.syn == std::vector<std::string>{"q0", "q1", "q2"});
  CHECK(a.inh == std::vector<std::string>{"y1", "y2"});

  Tree in = parse_tree("#(a(a(e)))", a.input);
  CHECK(format_tree(att_evaluate(a, in)) == "a(a(b(b(c(c(d(d(e))))))))");
  CHECK(!att_is_circular(a).has_value());
}

TEST_CASE("the att of a parameterless transducer has no inherited attributes") {
  Mtt c = load_mtt("const_e.mtt");
  Att a = omega(expand_to_consistent(c, ParamRenaming{}));
  CHECK(a.inh.empty());
  CHECK(validate_att(a).empty());
}

TEST_CASE("the direct att construction evaluates like the source") {
  Mtt ma = load_mtt("ma.mtt");
  Att a = omega_direct(ma, *find_rho(ma));
  CHECK(validate_att(a).empty());
  Tree in = parse_tree("#(a(e))", a.input);
  CHECK(format_tree(att_evaluate(a, in)) == "a(b(c(d(e))))");

  DiffReport r = equivalent_up_to(pipe({ma}), pipe({a}), 6);
  CHECK(r.outcome == DiffReport::Outcome::EqualUpToBound);

  Att c = omega_direct(load_mtt("const_e.mtt"), ParamRenaming{});
  CHECK(c.inh.empty());
}

TEST_CASE("worked example: nondeleting normal form of the two-leaf fixture") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  CHECK(validate_brel(nf.lookahead).empty());
  CHECK(validate_mtt(nf.core).empty());
  CHECK(is_nondeleting(nf.core));

  const Brel& b = nf.lookahead;
  REQUIRE(b.states == std::vector<std::string>{"p1", "p2", "p3"});
  // every two-child rule targets p3, the leaves go to p1/p2
  CHECK(b.rules.at({b.input.index_of("e"), {}}).first == b.state_index("p1"));
  CHECK(b.rules.at({b.input.index_of("e'"), {}}).first == b.state_index("p2"));
  for (int p1 = 0; p1 < 3; ++p1)
    for (int p2 = 0; p2 < 3; ++p2)
      CHECK(b.rules.at({b.input.index_of("sigma"), {p1, p2}}).first == b.state_index("p3"));

  const Mtt& core = nf.core;
  // r1: the q1 argument is dropped so the $ leaf disappears
  Tree r1 = call("q.{1}", 1, 1, {call("q2.{1}", 1, 2, {call("q1.{}", 0, 1)})});
  CHECK(core.rule("q0.{}", "[sigma,p1,p1]") == r1);
  CHECK(core.rule("q0.{}", "[sigma,p1,p2]") == r1);
  // r2
  Tree r2 = call("q.{1}", 1, 1, {call("q2.{}", 0, 2)});
  CHECK(core.rule("q0.{}", "[sigma,p1,p3]") == r2);
  // r3: any combination whose first child cannot keep q's parameter
  Tree r3 = call("q.{}", 0, 1);
  for (const char* first : {"p2", "p3"})
    for (const char* second : {"p1", "p2", "p3"})
      CHECK(core.rule("q0.{}",
                      std::string("[sigma,") + first + "," + second + "]") == r3);
  // rank-0 dummies emit the first leaf, rank-1 dummies hand back y1
  CHECK(core.rule("q.{}", "e'") == Tree::leaf("#"));
  CHECK(core.rule("q.{1}", "e") == Tree(param_symbol(1)));
  CHECK(core.rule("q1.{1}", "e'") == Tree(param_symbol(1)));

  // the constructed renaming maps every rank-1 state to 1
  REQUIRE(nf.renaming.has_value());
  for (const auto& q : core.states)
    if (q.rank == 1) CHECK(nf.renaming->at(q.name, 1) == 1);
  CHECK(!check_fv(core, *nf.renaming).has_value());

  DiffReport r = equivalent_up_to(pipe({b, core}), pipe({mc}), 7);
  CHECK(r.outcome == DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("nondeleting normal form of an already nondeleting transducer") {
  Mtt ma = load_mtt("ma.mtt");
  NormalFormResult nf = nondeleting_nf(ma);
  CHECK(is_nondeleting(nf.core));
  // single profile: the annotation is trivial and the core mirrors the input
  CHECK(nf.lookahead.states == std::vector<std::string>{"p1"});
  CHECK(equivalent_up_to(pipe({nf.lookahead, nf.core}), pipe({ma}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("the a_c rules from the normal-form core") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  Att ac = fv_to_att(nf.core, *nf.renaming);
  CHECK(validate_att(ac).empty());

  for (const char* sigma : {"[sigma,p1,p1]", "[sigma,p1,p2]"}) {
    int sym = ac.input.index_of(sigma);
    REQUIRE(sym >= 0);
    const auto& rules = ac.rules.at(sym);
    CHECK(rules.at(AttRuleKey{"q0.{}", 0}) == Tree(syn_ref("q.{1}", 1)));
    CHECK(rules.at(AttRuleKey{"y1", 1}) == Tree(syn_ref("q2.{1}", 2)));
    CHECK(rules.at(AttRuleKey{"y1", 2}) == Tree(syn_ref("q1.{}", 1)));
  }

  CHECK(!att_is_circular(ac).has_value());
  auto cycle = att_is_circular_on(ac, parse_tree("\"[sigma,p2,p1]\"(e',e)", ac.input));
  CHECK(!cycle.has_value());

  // a_c composed with the look-ahead agrees with the source
  CHECK(equivalent_up_to(pipe({nf.lookahead, ac}), pipe({mc}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("the att construction flags conflicting inherited definitions") {
  // two calls on the same variable whose important arguments truncate
  // differently: not an expansion output, so the construction must refuse
  Mtt bad = parse_mtt(
      "mtt bad {\n"
      "  input { s/1 e/0 }\n"
      "  output { d/2 a/0 b/0 }\n"
      "  states { q0/0 p/1 r/1 }\n"
      "  initial q0\n"
      "  rule q0 s(x1) -> d(p[x1](a),r[x1](b))\n"
      "  rule q0 e -> a\n"
      "  rule p s(x1)(y1) -> p[x1](y1)\n"
      "  rule p e(y1) -> y1\n"
      "  rule r s(x1)(y1) -> r[x1](y1)\n"
      "  rule r e(y1) -> y1\n"
      "}\n");
  REQUIRE(validate_mtt(bad).empty());
  CHECK_THROWS_AS(omega(bad), ConstructionError);
}

TEST_CASE("relabeling validation catches totality violations") {
  Mtt mc = load_mtt("mc.mtt");
  Brel b = nondeleting_nf(mc).lookahead;
  b.rules.erase({b.input.index_of("sigma"), {0, 0}});
  auto report = validate_brel(b);
  REQUIRE(!report.empty());
  CHECK(report[0].find("totality requires") != std::string::npos);

  Mtt mdyn = load_mtt("mdyn.mtt");
  Trel t = build_state_annotating_trel(mdyn);
  t.rules.erase(t.rules.begin());
  auto treport = validate_trel(t);
  REQUIRE(!treport.empty());
  CHECK(treport[0].find("missing rule") != std::string::npos);
}

TEST_CASE("expansion and the direct att construction on the normal-form core") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);

  // all ranks are already 0 or 1 and every renaming target is 1, so the
  // expansion only re-derives the same rules
  Mtt expanded = expand_to_consistent(nf.core, *nf.renaming);
  Tree r1 = call("q.{1}", 1, 1, {call("q2.{1}", 1, 2, {call("q1.{}", 0, 1)})});
  CHECK(expanded.rule("q0.{}", "[sigma,p1,p1]") == r1);
  CHECK(same_mtt_modulo_name(expanded, nf.core));

  // the direct construction agrees with the core behind the look-ahead
  Att direct = omega_direct(nf.core, *nf.renaming);
  CHECK(equivalent_up_to(pipe({nf.lookahead, direct}), pipe({nf.lookahead, nf.core}), 7)
            .outcome == DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("att to consistent mtt: synthesized-only input") {
  Att mirror = load_att("mirror.att");
  Mtt m = att_to_consistent_mtt(mirror);
  CHECK(validate_mtt(m).empty());
  for (const auto& q : m.states) CHECK(q.rank == 0);
  CHECK(equivalent_up_to(pipe({mirror}), pipe({m}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);
  CHECK(!is_consistent(m).has_value());
}

TEST_CASE("att to consistent mtt: round trips through the att constructions") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  Att ac = fv_to_att(nf.core, *nf.renaming);

  Mtt back = att_to_consistent_mtt(ac);
  CHECK(validate_mtt(back).empty());
  CHECK(!is_consistent(back).has_value());
  CHECK(equivalent_up_to(pipe({ac}), pipe({back}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);

  Mtt mswap = load_mtt("mswap.mtt");
  Att swap_att = fv_to_att(mswap, *find_rho(mswap));
  Mtt swap_back = att_to_consistent_mtt(swap_att);
  CHECK(!is_consistent(swap_back).has_value());
  CHECK(equivalent_up_to(pipe({swap_att}), pipe({swap_back}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("att to consistent mtt rejects circular inputs") {
  CHECK_THROWS_AS(att_to_consistent_mtt(load_att("crafted_circular.att")), PreconditionError);
}

TEST_CASE("nonerasing normal form") {
  Mtt ma = load_mtt("ma.mtt");
  NormalFormResult nf = nonerasing_nf(ma);
  CHECK(validate_brel(nf.lookahead).empty());
  CHECK(validate_mtt(nf.core).empty());
  CHECK(is_nonerasing(nf.core));
  CHECK(is_nondeleting(nf.core));
  CHECK(!nf.renaming.has_value());
  CHECK(equivalent_up_to(pipe({nf.lookahead, nf.core}), pipe({ma}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);

  // calls over erasing children collapse into the argument: over a leaf
  // annotated {q1,q2}, the root rule evaluates q2's chain directly
  const Mtt& core = nf.core;
  int sym = core.input.index_of("[#,{q1,q2}]");
  REQUIRE(sym >= 0);
  CHECK(core.rule(core.state_index("q0"), sym) == Tree::leaf("e"));

  Mtt mdyn = load_mtt("mdyn.mtt");
  NormalFormResult nfd = nonerasing_nf(mdyn);
  CHECK(is_nonerasing(nfd.core));
  CHECK(equivalent_up_to(pipe({nfd.lookahead, nfd.core}), pipe({mdyn}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);

  // an already nonerasing input keeps its shape: all annotations are empty
  Mtt mswap = load_mtt("mswap.mtt");
  NormalFormResult nfs = nonerasing_nf(mswap);
  CHECK(nfs.lookahead.states == std::vector<std::string>{"{}"});
  CHECK(is_nonerasing(nfs.core));
  CHECK(equivalent_up_to(pipe({nfs.lookahead, nfs.core}), pipe({mswap}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);

  CHECK_THROWS_AS(nonerasing_nf(load_mtt("mc.mtt")), PreconditionError);
}

TEST_CASE("product with a top-down relabeling") {
  Mtt mdyn = load_mtt("mdyn.mtt");
  Trel id = identity_trel(mdyn.input);
  Mtt lifted = trel_mtt_product(id, mdyn);
  CHECK(validate_mtt(lifted).empty());
  CHECK(equivalent_up_to(pipe({lifted}), pipe({mdyn}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);

  // annotate, then run a copy of the transducer lifted to annotated symbols
  Trel e = build_state_annotating_trel(mdyn);
  Mtt lifted_copy;
  lifted_copy.name = "mdyn_on_annotated";
  lifted_copy.input = e.output;
  lifted_copy.output = mdyn.output;
  lifted_copy.states = mdyn.states;
  lifted_copy.initial = mdyn.initial;
  for (std::size_t sym = 0; sym < e.output.size(); ++sym) {
    const std::string& name = e.output.at(sym).name;
    std::string base = name.substr(1, name.find(',') - 1);
    int msym = mdyn.input.index_of(base);
    REQUIRE(msym >= 0);
    for (std::size_t q = 0; q < mdyn.states.size(); ++q)
      lifted_copy.rules.insert_or_assign(
          {static_cast<int>(q), static_cast<int>(sym)},
          mdyn.rule(static_cast<int>(q), msym));
  }
  REQUIRE(validate_mtt(lifted_copy).empty());

  Mtt product = trel_mtt_product(e, lifted_copy);
  CHECK(equivalent_up_to(pipe({product}), pipe({e, lifted_copy}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);

  // the product preserves the bounded dynamic property
  CHECK(check_dynamic_fv(lifted_copy, nullptr, 5).pass);
  CHECK(check_dynamic_fv(product, nullptr, 5).pass);
}

TEST_CASE("every construction is equivalence-preserving at bound 6") {
  // renaming-consistent goldens through expansion and both att routes
  for (const char* name : {"ma.mtt", "mswap.mtt"}) {
    Mtt m = load_mtt(name);
    auto rho = find_rho(m);
    REQUIRE(rho.has_value());
    Mtt e = expand_to_consistent(m, *rho);
    CHECK(equivalent_up_to(pipe({e}), pipe({m}), 6).outcome ==
          DiffReport::Outcome::EqualUpToBound);
    CHECK(equivalent_up_to(pipe({omega(e)}), pipe({m}), 6).outcome ==
          DiffReport::Outcome::EqualUpToBound);
    CHECK(equivalent_up_to(pipe({omega_direct(m, *rho)}), pipe({m}), 6).outcome ==
          DiffReport::Outcome::EqualUpToBound);
    CHECK(equivalent_up_to(pipe({fv_to_att(m, *rho)}), pipe({m}), 6).outcome ==
          DiffReport::Outcome::EqualUpToBound);
  }
  // normal forms on every golden they accept
  for (const char* name : {"ma.mtt", "mc.mtt", "mdyn.mtt", "mbin.mtt", "mswap.mtt"}) {
    Mtt m = load_mtt(name);
    NormalFormResult nf = nondeleting_nf(m);
    CHECK_MESSAGE(equivalent_up_to(pipe({nf.lookahead, nf.core}), pipe({m}), 6).outcome ==
                      DiffReport::Outcome::EqualUpToBound,
                  name);
    if (is_nondeleting(m)) {
      NormalFormResult ne = nonerasing_nf(m);
      CHECK_MESSAGE(equivalent_up_to(pipe({ne.lookahead, ne.core}), pipe({m}), 6).outcome ==
                        DiffReport::Outcome::EqualUpToBound,
                    name);
    }
  }
}
