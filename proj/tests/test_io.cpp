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
#include "ttrans/dynfv.hpp"
#include "ttrans/io.hpp"

using namespace ttrans;
using namespace ttrans::testing;

TEST_CASE("mtt files round trip through print and parse") {
  for (const char* name : {"ma.mtt", "mc.mtt", "mdyn.mtt", "mswap.mtt"}) {
    Mtt m = load_mtt(name);
    Mtt again = parse_mtt(print_mtt(m));
    CHECK_MESSAGE(same_mtt_modulo_name(m, again), name);
    CHECK(m.name == again.name);
  }
}

TEST_CASE("att files round trip") {
  for (const char* name : {"mirror.att", "crafted_circular.att"}) {
    Att a = load_att(name);
    Att again = parse_att(print_att(a));
    CHECK(a.syn == again.syn);
    CHECK(a.inh == again.inh);
    CHECK(a.root == again.root);
    CHECK(a.rules == again.rules);
  }
  // a constructed att with mangled names round trips too
  Mtt mdyn = load_mtt("mdyn.mtt");
  DynFvAttResult built = build_dynfv_att(mdyn);
  Att again = parse_att(print_att(built.att));
  CHECK(built.att.rules == again.rules);
  CHECK(validate_att(again).empty());
}

TEST_CASE("brel and trel files round trip") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  Brel b = nf.lookahead;
  Brel b2 = parse_brel(print_brel(b));
  CHECK(b.states == b2.states);
  CHECK(b.rules == b2.rules);
  CHECK(validate_brel(b2).empty());

  Mtt mdyn = load_mtt("mdyn.mtt");
  Trel t = build_state_annotating_trel(mdyn);
  Trel t2 = parse_trel(print_trel(t));
  CHECK(t.states == t2.states);
  CHECK(t.initial == t2.initial);
  CHECK(t.rules == t2.rules);
  CHECK(validate_trel(t2).empty());
}

TEST_CASE("printed constructions re-validate cleanly") {
  Mtt ma = load_mtt("ma.mtt");
  auto rho = find_rho(ma);
  Mtt e = expand_to_consistent(ma, *rho);
  CHECK(validate_mtt(parse_mtt(print_mtt(e))).empty());
  Att a = fv_to_att(ma, *rho);
  CHECK(validate_att(parse_att(print_att(a))).empty());
}

TEST_CASE("stage dispatch by leading keyword") {
  CHECK(stage_kind(parse_stage(read_data_file("ma.mtt"))) == "mtt");
  CHECK(stage_kind(parse_stage(read_data_file("mirror.att"))) == "att");
  CHECK_THROWS_AS(parse_stage("widget x {}"), ParseError);
}

TEST_CASE("renaming files") {
  ParamRenaming rho = parse_rho("q1 1 -> 1\nq2 1 -> 2\n");
  CHECK(rho.at("q1", 1) == 1);
  CHECK(rho.at("q2", 1) == 2);
  CHECK(parse_rho(print_rho(rho)).entries() == rho.entries());
  CHECK_THROWS_AS(parse_rho("q1 one -> 1"), ParseError);
}

TEST_CASE("comments and empty parameter groups are accepted") {
  Mtt m = parse_mtt(
      "// a remark\n"
      "mtt tiny {\n"
      "  input { e/0 }\n"
      "  output { e/0 }\n"
      "  states { q0/0 }\n"
      "  initial q0\n"
      "  rule q0 e() -> e // trailing remark\n"
      "}\n");
  CHECK(validate_mtt(m).empty());
  CHECK(m.rule("q0", "e") == Tree::leaf("e"));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_mtt("mtt x {\n  input { e/0 }\n  output { e/0 }\n  states { q0/zero }\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
  CHECK_THROWS_AS(parse_mtt("mtt x { input { e/0 } output { e/0 } states { q0/0 } "
                            "initial q0 rule q0 e -> nope[x1] }"),
                  ParseError);
}

TEST_CASE("duplicate rules are rejected at parse time") {
  CHECK_THROWS_WITH_AS(
      parse_mtt("mtt x { input { e/0 } output { e/0 } states { q0/0 } initial q0 "
                "rule q0 e -> e rule q0 e -> e }"),
      doctest::Contains("duplicate rule"), ParseError);
}
