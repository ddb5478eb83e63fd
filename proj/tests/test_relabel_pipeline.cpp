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
#include "ttrans/pipeline.hpp"

using namespace ttrans;
using namespace ttrans::testing;

TEST_CASE("the nondeleting look-ahead of the two-leaf fixture") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  const Brel& b = nf.lookahead;
  CHECK(validate_brel(b).empty());
  REQUIRE(b.states == std::vector<std::string>{"p1", "p2", "p3"});

  auto [relabeled, state] = brel_apply(b, parse_tree("sigma(e,e)", mc.input));
  CHECK(state == "p3");
  CHECK(relabeled.label().name == "[sigma,p1,p1]");
  CHECK(relabeled.child(1) == Tree::leaf("e"));

  auto [leaf, leaf_state] = brel_apply(b, Tree::leaf("e'"));
  CHECK(leaf_state == "p2");
  CHECK(leaf == Tree::leaf("e'"));
}

TEST_CASE("identity relabelings") {
  RankedAlphabet a{{{"sigma", 2}, {"e", 0}}};
  Tree s = parse_tree("sigma(sigma(e,e),e)", a);
  auto [out, state] = brel_apply(identity_brel(a), s);
  CHECK(out == s);
  CHECK(state == "p");
  CHECK(trel_apply(identity_trel(a), s) == s);
}

TEST_CASE("relabelings preserve the node set") {
  Mtt mc = load_mtt("mc.mtt");
  Brel b = nondeleting_nf(mc).lookahead;
  Mtt mdyn = load_mtt("mdyn.mtt");
  Trel e = build_state_annotating_trel(mdyn);
  for (const Tree& s : enumerate_trees(mc.input, 5))
    CHECK(node_set(brel_apply(b, s).first) == node_set(s));
  for (const Tree& s : enumerate_trees(mdyn.input, 5))
    CHECK(node_set(trel_apply(e, s)) == node_set(s));
}

TEST_CASE("state-annotating relabeling on the monadic fixture") {
  Mtt mdyn = load_mtt("mdyn.mtt");
  Trel e = build_state_annotating_trel(mdyn);
  CHECK(validate_trel(e).empty());

  Tree out = trel_apply(e, parse_tree("a(a(e))", mdyn.input));
  CHECK(format_tree(out) ==
        "\"[a,{q0}]\"(\"[a,{q1,q2,q3}]\"(\"[e,{q1,q2,q3}]\"))");

  CHECK(format_tree(trel_apply(e, Tree::leaf("e"))) == "\"[e,{q0}]\"");
}

TEST_CASE("pipeline application") {
  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);

  Pipeline p = pipe({nf.lookahead, nf.core});
  CHECK(validate_pipeline(p).empty());
  CHECK(pipeline_apply(p, parse_tree("sigma(e,e)", mc.input)) == Tree::leaf("#"));

  // the empty pipeline is the identity
  CHECK(pipeline_apply(Pipeline{}, Tree::leaf("e")) == Tree::leaf("e"));
}

TEST_CASE("pipeline validation flags alphabet mismatches") {
  Mtt ma = load_mtt("ma.mtt");
  Mtt mc = load_mtt("mc.mtt");
  Pipeline p = pipe({ma, mc});
  auto report = validate_pipeline(p);
  REQUIRE(!report.empty());
  CHECK(report[0].find("does not accept") != std::string::npos);
}

TEST_CASE("annotated evaluation matches the direct translation") {
  // relabel, then run the companion attributed transducer
  Mtt mdyn = load_mtt("mdyn.mtt");
  DynFvAttResult built = build_dynfv_att(mdyn);
  Pipeline p = pipe({built.relabeling, built.att});
  Tree s = parse_tree("a(a(e))", mdyn.input);
  CHECK(pipeline_apply(p, s) == mtt_translate(mdyn, s));
  CHECK(format_tree(pipeline_apply(p, s)) == "f(a(b(a(a(e)))),a(b(a(a(e)))))");
}
