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
#include "ttrans/tree.hpp"

using namespace ttrans;

namespace {

RankedAlphabet fig_input() {
  return RankedAlphabet{{{"#", 1}, {"a", 1}, {"e", 0}}};
}

}  // namespace

TEST_CASE("parse_tree basics") {
  RankedAlphabet single{{{"e", 0}}};
  CHECK(parse_tree("e", single) == Tree::leaf("e"));

  Tree t = parse_tree("#(a(a(e)))", fig_input());
  CHECK(t.size() == 4);
  CHECK(t.label().name == "#");
  CHECK(t.child(1).label().name == "a");

  RankedAlphabet fa{{{"f", 2}, {"a", 0}}};
  CHECK_THROWS_AS(parse_tree("f(a)", fa), ParseError);
  CHECK_THROWS_AS(parse_tree("g", fa), ParseError);
  CHECK_THROWS_AS(parse_tree("f(a,a) junk", fa), ParseError);
}

TEST_CASE("parse_tree reports positions") {
  RankedAlphabet fa{{{"f", 2}, {"a", 0}}};
  try {
    parse_tree("f(a,\n  b)", fa);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 3);
  }
}

TEST_CASE("format_tree round trips") {
  RankedAlphabet sigma{{{"sigma", 2}, {"e", 0}}};
  Tree t = parse_tree("sigma(e,sigma(e,e))", sigma);
  CHECK(format_tree(t) == "sigma(e,sigma(e,e))");
  CHECK(parse_tree(format_tree(t), sigma) == t);

  CHECK(format_tree(Tree::leaf("e")) == "e");

  // quoted names survive the round trip
  RankedAlphabet weird{{{"a b", 1}, {"\"q\"", 0}}};
  Tree w = Tree(Symbol{"a b", 1}, {Tree(Symbol{"\"q\"", 0})});
  CHECK(parse_tree(format_tree(w), weird) == w);
}

TEST_CASE("round trip on all enumerated trees up to size 8") {
  for (const auto& alphabet :
       {fig_input(), RankedAlphabet{{{"e", 0}, {"a", 1}, {"sigma", 2}}}}) {
    for (const Tree& t : enumerate_trees(alphabet, 8))
      CHECK(parse_tree(format_tree(t), alphabet) == t);
  }
}

TEST_CASE("node_set, subtree, replace_subtree") {
  RankedAlphabet a{{{"sigma", 2}, {"b", 1}, {"a", 1}, {"e", 0}, {"e'", 0}}};

  CHECK(node_set(Tree::leaf("e")) == std::vector<Path>{{}});
  CHECK(node_set(parse_tree("a(e)", a)) == std::vector<Path>{{}, {1}});
  CHECK(node_set(parse_tree("sigma(e,e')", a)) == std::vector<Path>{{}, {1}, {2}});

  Tree ae = parse_tree("a(e)", a);
  CHECK(subtree(ae, {}) == ae);
  CHECK(subtree(parse_tree("sigma(e,b(e))", a), {2, 1}) == Tree::leaf("e"));
  CHECK_THROWS_AS(subtree(ae, Path{2}), EvalError);

  CHECK(replace_subtree(ae, {1}, Tree::leaf("e'")) == parse_tree("a(e')", a));
  CHECK(replace_subtree(ae, {}, Tree::leaf("e")) == Tree::leaf("e"));
  Tree ctx = replace_subtree(parse_tree("sigma(e,e)", a), {2}, Tree::leaf("@x"));
  CHECK(ctx.child(2).label().name == "@x");
}

TEST_CASE("tree construction enforces ranks") {
  CHECK_THROWS_AS(Tree(Symbol{"f", 2}, {Tree::leaf("e")}), ValidationError);
  CHECK_THROWS_AS(Tree(Symbol{"e", 0}, {Tree::leaf("e")}), ValidationError);
}

TEST_CASE("subst_leaves") {
  RankedAlphabet a{{{"f", 2}, {"g", 1}, {"a", 0}, {"b", 0}, {"e", 0}}};
  LeafSubstitution sub;
  sub.bind(param_symbol(1), Tree::leaf("a"));
  sub.bind(param_symbol(2), Tree::leaf("b"));
  Tree t(Symbol{"f", 2}, {Tree(param_symbol(1)), Tree(param_symbol(2))});
  CHECK(subst_leaves(t, sub) == parse_tree("f(a,b)", a));

  CHECK(subst_leaves(Tree::leaf("a"), LeafSubstitution{}) == Tree::leaf("a"));

  LeafSubstitution dup;
  dup.bind(param_symbol(1), parse_tree("g(e)", a));
  Tree both(Symbol{"f", 2}, {Tree(param_symbol(1)), Tree(param_symbol(1))});
  CHECK(subst_leaves(both, dup) == parse_tree("f(g(e),g(e))", a));

  CHECK_THROWS_AS(LeafSubstitution{}.bind(Symbol{"f", 2}, Tree::leaf("e")), ValidationError);
}

TEST_CASE("subst_leaves composes when domains are disjoint") {
  RankedAlphabet a{{{"f", 2}, {"u", 0}, {"v", 0}}};
  LeafSubstitution s1, s2, both;
  s1.bind(param_symbol(1), Tree::leaf("u"));
  s2.bind(param_symbol(2), Tree::leaf("v"));
  both.bind(param_symbol(1), Tree::leaf("u"));
  both.bind(param_symbol(2), Tree::leaf("v"));
  Tree t(Symbol{"f", 2}, {Tree(param_symbol(1)), Tree(param_symbol(2))});
  CHECK(subst_leaves(subst_leaves(t, s1), s2) == subst_leaves(t, both));
}

TEST_CASE("subst_second_order") {
  RankedAlphabet a{{{"f", 2}, {"g", 2}, {"c", 0}, {"a", 0}, {"b", 0}, {"e", 0}}};
  SecondOrderSubstitution sub;
  Tree swap(Symbol{"g", 2}, {Tree(param_symbol(2)), Tree(param_symbol(1))});
  sub.bind(Symbol{"f", 2}, swap);

  CHECK(subst_second_order(parse_tree("f(a,b)", a), sub) == parse_tree("g(b,a)", a));
  // inner occurrences are rewritten before being bound
  CHECK(subst_second_order(parse_tree("f(f(a,b),c)", a), sub) ==
        parse_tree("g(c,g(b,a))", a));
  CHECK(subst_second_order(parse_tree("f(a,b)", a), SecondOrderSubstitution{}) ==
        parse_tree("f(a,b)", a));

  SecondOrderSubstitution bad;
  CHECK_THROWS_AS(bad.bind(Symbol{"g", 1}, Tree(param_symbol(2))), ValidationError);
}

TEST_CASE("enumerate_trees order and contents") {
  RankedAlphabet mono{{{"e", 0}, {"a", 1}}};
  auto ts = enumerate_trees(mono, 3);
  REQUIRE(ts.size() == 3);
  CHECK(format_tree(ts[0]) == "e");
  CHECK(format_tree(ts[1]) == "a(e)");
  CHECK(format_tree(ts[2]) == "a(a(e))");

  RankedAlphabet bin{{{"e", 0}, {"sigma", 2}}};
  auto bs = enumerate_trees(bin, 3);
  REQUIRE(bs.size() == 2);
  CHECK(format_tree(bs[0]) == "e");
  CHECK(format_tree(bs[1]) == "sigma(e,e)");

  CHECK(enumerate_trees(RankedAlphabet{{{"e", 0}}}, 3).size() == 1);
  CHECK_THROWS_AS(enumerate_trees(RankedAlphabet{{{"a", 1}}}, 3), PreconditionError);
}

TEST_CASE("enumeration is strictly ordered and complete") {
  RankedAlphabet a{{{"e", 0}, {"a", 1}, {"sigma", 2}}};
  auto ts = enumerate_trees(a, 8);

  // counts per size match the independent convolution recursion
  std::vector<long> counts(9, 0);
  for (const auto& t : ts) ++counts[static_cast<std::size_t>(t.size())];
  std::vector<long> expect(9, 0);
  for (int n = 1; n <= 8; ++n) {
    long c = (n == 1) ? 1 : 0;   // e
    if (n >= 2) c += expect[static_cast<std::size_t>(n - 1)];  // a(t)
    for (int l = 1; l <= n - 2; ++l)                           // sigma(t, t')
      c += expect[static_cast<std::size_t>(l)] * expect[static_cast<std::size_t>(n - 1 - l)];
    expect[static_cast<std::size_t>(n)] = c;
    CHECK(counts[static_cast<std::size_t>(n)] == c);
  }

  // no duplicates, ordered by (size, preorder sequence)
  for (std::size_t i = 1; i < ts.size(); ++i) {
    CHECK(ts[i - 1].size() <= ts[i].size());
    CHECK(!(ts[i - 1] == ts[i]));
  }
}

TEST_CASE("paths format and parse") {
  CHECK(format_path({}) == "eps");
  CHECK(format_path({1, 2, 1}) == "1.2.1");
  CHECK(parse_path("eps") == Path{});
  CHECK(parse_path("1.2.1") == (Path{1, 2, 1}));
  CHECK_THROWS_AS(parse_path("1.x"), ParseError);
  CHECK_THROWS_AS(parse_path("0"), ParseError);
}
