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

using namespace ttrans;
using namespace ttrans::testing;

TEST_CASE("equivalent transducers pass at the bound") {
  Mtt ma = load_mtt("ma.mtt");
  Mtt me = load_mtt("ma_expanded.mtt");
  DiffReport r = equivalent_up_to(pipe({ma}), pipe({me}), 8);
  CHECK(r.outcome == DiffReport::Outcome::EqualUpToBound);
  CHECK(r.tested == 255);  // all strings over {#, a} of length <= 7, then e

  Mtt mc = load_mtt("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  CHECK(equivalent_up_to(pipe({mc}), pipe({nf.lookahead, nf.core}), 7).outcome ==
        DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("counterexamples are minimal in enumeration order") {
  Mtt ce = load_mtt("const_e.mtt");
  Mtt cd = load_mtt("const_delta.mtt");
  DiffReport r = equivalent_up_to(pipe({ce}), pipe({cd}), 2);
  REQUIRE(r.outcome == DiffReport::Outcome::Counterexample);
  CHECK(format_tree(*r.input) == "e");
  CHECK(format_tree(*r.out1) == "e");
  CHECK(format_tree(*r.out2) == "delta(e,e)");
  CHECK(r.tested == 1);
}

TEST_CASE("verdicts are symmetric") {
  Mtt ce = load_mtt("const_e.mtt");
  Mtt cd = load_mtt("const_delta.mtt");
  DiffReport r12 = equivalent_up_to(pipe({ce}), pipe({cd}), 4);
  DiffReport r21 = equivalent_up_to(pipe({cd}), pipe({ce}), 4);
  CHECK(r12.outcome == r21.outcome);
  CHECK(*r12.input == *r21.input);
  CHECK(*r12.out1 == *r21.out2);

  Mtt ma = load_mtt("ma.mtt");
  Mtt me = load_mtt("ma_expanded.mtt");
  CHECK(equivalent_up_to(pipe({me}), pipe({ma}), 6).outcome ==
        DiffReport::Outcome::EqualUpToBound);
}

TEST_CASE("counterexamples persist at larger bounds") {
  Mtt ce = load_mtt("const_e.mtt");
  Mtt cd = load_mtt("const_delta.mtt");
  Tree witness = *equivalent_up_to(pipe({ce}), pipe({cd}), 2).input;
  for (int b : {3, 5, 7}) {
    DiffReport r = equivalent_up_to(pipe({ce}), pipe({cd}), b);
    REQUIRE(r.outcome == DiffReport::Outcome::Counterexample);
    CHECK(*r.input == witness);
  }
}

TEST_CASE("alphabet mismatches are rejected") {
  Mtt ma = load_mtt("ma.mtt");
  Mtt mc = load_mtt("mc.mtt");
  CHECK_THROWS_AS(equivalent_up_to(pipe({ma}), pipe({mc}), 3), PreconditionError);
}

TEST_CASE("stage errors are reported with the failing side") {
  Att crafted = load_att("crafted_circular.att");
  Pipeline identity;  // empty pipeline over the same alphabet
  DiffReport r = equivalent_up_to(pipe({crafted}), identity, 3);
  REQUIRE(r.outcome == DiffReport::Outcome::StageError);
  CHECK(r.error_pipeline == 1);
  CHECK(!r.error.empty());
}
