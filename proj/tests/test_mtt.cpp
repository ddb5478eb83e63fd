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
#include "ttrans/io.hpp"
#include "ttrans/mtt.hpp"

using namespace ttrans;
using namespace ttrans::testing;

TEST_CASE("validate_mtt accepts the fixtures") {
  for (const char* name :
       {"ma.mtt", "ma_expanded.mtt", "mc.mtt", "mdyn.mtt", "mbin.mtt", "mswap.mtt"}) {
    Mtt m = parse_mtt(read_data_file(name));
    CHECK_MESSAGE(validate_mtt(m).empty(), name);
  }
}

TEST_CASE("validate_mtt reports missing rules") {
  Mtt m = load_mtt("ma.mtt");
  m.rules.erase({m.state_index("q1"), m.input.index_of("e")});
  auto report = validate_mtt(m);
  REQUIRE(report.size() == 1);
  CHECK(report[0] == "missing rule (q1, e)");
}

TEST_CASE("validate_mtt reports out-of-range parameters") {
  Mtt m = load_mtt("ma.mtt");
  // q1 has rank 1; y2 in its rule is out of range
  m.rules.insert_or_assign({m.state_index("q1"), m.input.index_of("e")},
                           Tree(param_symbol(2)));
  auto report = validate_mtt(m);
  REQUIRE(report.size() == 1);
  CHECK(report[0].find("parameter y2 out of range") != std::string::npos);
}

TEST_CASE("validate_mtt rejects a non-rank-0 initial state") {
  Mtt m = load_mtt("ma.mtt");
  m.initial = "q1";
  auto report = validate_mtt(m);
  REQUIRE(report.size() == 1);
  CHECK(report[0].find("rank 1, must be 0") != std::string::npos);
}

TEST_CASE("state semantics on the monadic fixture") {
  Mtt ma = load_mtt("ma.mtt");
  CHECK(mtt_state_semantics(ma, "q1", Tree::leaf("e")) == Tree(param_symbol(1)));

  Tree ae = parse_tree("a(e)", ma.input);
  // one unfolding of the a-rule, then the leaf rule
  Tree expect(Symbol{"a", 1}, {Tree(Symbol{"b", 1}, {Tree(param_symbol(1))})});
  CHECK(mtt_state_semantics(ma, "q1", ae) == expect);

  Mtt mdyn = load_mtt("mdyn.mtt");
  CHECK(mtt_state_semantics(mdyn, "q2", parse_tree("a(e)", mdyn.input)) ==
        parse_tree("a(a(e))", mdyn.output));
}

TEST_CASE("translation of the monadic fixture") {
  Mtt ma = load_mtt("ma.mtt");
  CHECK(format_tree(mtt_translate(ma, parse_tree("#(a(a(e)))", ma.input))) ==
        "a(a(b(b(c(c(d(d(e))))))))");
  CHECK(format_tree(mtt_translate(ma, parse_tree("#(e)", ma.input))) == "e");

  Mtt mdyn = load_mtt("mdyn.mtt");
  // n = 3: t = a^2 b^2 a^4 (e)
  Tree out = mtt_translate(mdyn, parse_tree("a(a(a(e)))", mdyn.input));
  CHECK(format_tree(out) ==
        "f(a(a(b(b(a(a(a(a(e)))))))),a(a(b(b(a(a(a(a(e)))))))))");
}

TEST_CASE("context semantics") {
  Mtt mdyn = load_mtt("mdyn.mtt");
  Tree aae = parse_tree("a(a(e))", mdyn.input);
  Tree xi = mtt_context_semantics(mdyn, aae, {1});
  // f(q1[x](q2[x]), q1[x](q3[x](e))) after one unfolding of the root rule
  Tree q2call(call_symbol(State{"q2", 0}, 0));
  Tree q3call(call_symbol(State{"q3", 1}, 0), {Tree::leaf("e")});
  Tree expect(Symbol{"f", 2},
              {Tree(call_symbol(State{"q1", 1}, 0), {q2call}),
               Tree(call_symbol(State{"q1", 1}, 0), {q3call})});
  CHECK(xi == expect);

  // the whole tree as the hole
  CHECK(mtt_context_semantics(mdyn, aae, {}) == Tree(call_symbol(State{"q0", 0}, 0)));

  Mtt ma = load_mtt("ma.mtt");
  Tree xi2 = mtt_context_semantics(ma, parse_tree("#(e)", ma.input), {1});
  Tree expect2(call_symbol(State{"q1", 1}, 0),
               {Tree(call_symbol(State{"q2", 1}, 0), {Tree::leaf("e")})});
  CHECK(xi2 == expect2);

  CHECK_THROWS_AS(mtt_context_semantics(ma, Tree::leaf("e"), Path{3}), EvalError);
}

TEST_CASE("nondeleting and nonerasing classification") {
  CHECK(is_nondeleting(load_mtt("ma.mtt")));
  CHECK(!is_nondeleting(load_mtt("ma_expanded.mtt")));  // q1 drops y2, q2 drops y1
  CHECK(!is_nondeleting(load_mtt("mc.mtt")));

  CHECK(!is_nonerasing(load_mtt("ma.mtt")));  // leaf rules hand back y1
  Mtt mdyn = load_mtt("mdyn.mtt");
  CHECK(!is_nonerasing(mdyn));
  // wrapping the two bare-parameter rules makes it nonerasing
  Tree wrapped(Symbol{"b", 1}, {Tree(param_symbol(1))});
  mdyn.rules.insert_or_assign({mdyn.state_index("q1"), mdyn.input.index_of("e")}, wrapped);
  mdyn.rules.insert_or_assign({mdyn.state_index("q3"), mdyn.input.index_of("e")}, wrapped);
  CHECK(is_nonerasing(mdyn));

  Mtt parameterless = load_mtt("const_e.mtt");
  CHECK(is_nonerasing(parameterless));
  CHECK(is_nondeleting(parameterless));
}

TEST_CASE("memoized semantics equals the naive recursion up to size 5") {
  for (const char* name : {"ma.mtt", "mc.mtt", "mdyn.mtt", "mswap.mtt"}) {
    Mtt m = load_mtt(name);
    for (const Tree& s : enumerate_trees(m.input, 5))
      CHECK(mtt_translate(m, s) == naive_state_semantics(m, m.initial, s));
  }
}

TEST_CASE("evaluation is deterministic across runs") {
  Mtt m = load_mtt("mdyn.mtt");
  Tree s = parse_tree("a(a(a(e)))", m.input);
  CHECK(mtt_translate(m, s) == mtt_translate(m, s));
}
