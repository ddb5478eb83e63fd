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

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "ttrans/constructions.hpp"
#include "ttrans/difftest.hpp"
#include "ttrans/dynfv.hpp"
#include "ttrans/io.hpp"

using namespace ttrans;

namespace {

Mtt load(const std::string& name) {
  std::ifstream in(std::string(TTRANS_DATA_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mtt(buf.str());
}

Tree monadic(const std::string& sym, int n, Tree leaf) {
  for (int i = 0; i < n; ++i) leaf = Tree(Symbol{sym, 1}, {leaf});
  return leaf;
}

void BM_translate(benchmark::State& state) {
  Mtt mdyn = load("mdyn.mtt");
  Tree input = monadic("a", static_cast<int>(state.range(0)), Tree::leaf("e"));
  for (auto _ : state) benchmark::DoNotOptimize(mtt_translate(mdyn, input));
}
BENCHMARK(BM_translate)->Arg(8)->Arg(32)->Arg(128);

void BM_enumerate(benchmark::State& state) {
  RankedAlphabet a{{{"e", 0}, {"a", 1}, {"sigma", 2}}};
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_trees(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_enumerate)->Arg(6)->Arg(8)->Arg(10);

void BM_att_evaluate(benchmark::State& state) {
  Mtt mdyn = load("mdyn.mtt");
  DynFvAttResult built = build_dynfv_att(mdyn);
  Tree image = trel_apply(built.relabeling,
                          monadic("a", static_cast<int>(state.range(0)), Tree::leaf("e")));
  for (auto _ : state) benchmark::DoNotOptimize(att_evaluate(built.att, image));
}
BENCHMARK(BM_att_evaluate)->Arg(8)->Arg(32);

void BM_check_dynfv(benchmark::State& state) {
  Mtt mdyn = load("mdyn.mtt");
  for (auto _ : state)
    benchmark::DoNotOptimize(check_dynamic_fv(mdyn, nullptr, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_check_dynfv)->Arg(6)->Arg(10);

void BM_difftest(benchmark::State& state) {
  Mtt mc = load("mc.mtt");
  NormalFormResult nf = nondeleting_nf(mc);
  Pipeline p1, p2;
  p1.stages = {mc};
  p2.stages = {nf.lookahead, nf.core};
  for (auto _ : state)
    benchmark::DoNotOptimize(equivalent_up_to(p1, p2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_difftest)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
