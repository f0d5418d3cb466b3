// Copyright 2026 The dcgroup Authors
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

#include "dcg/cayley.hpp"
#include "dcg/rewriting.hpp"

namespace {

const char* kZ2System =
    "letters: a A b B\n"
    "inverses: a A, b B\n"
    "rule: aA ->\nrule: Aa ->\nrule: bB ->\nrule: Bb ->\n"
    "rule: ba -> ab\nrule: bA -> Ab\nrule: Ba -> aB\nrule: BA -> AB\n";

void bm_normal_form(benchmark::State& state) {
  dcg::RewritingSystemSpec spec = dcg::parse_rewriting_spec(kZ2System);
  // Alternating word bababa... reduces through every swap rule.
  dcg::Symbols word;
  for (int i = 0; i < state.range(0); ++i) {
    word.push_back(i % 2 == 0 ? 2 : 0);  // b a b a ...
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcg::normal_form(spec, word));
  }
}
BENCHMARK(bm_normal_form)->Arg(8)->Arg(16)->Arg(32);

void bm_confluence_check(benchmark::State& state) {
  dcg::RewritingSystemSpec spec = dcg::parse_rewriting_spec(kZ2System);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcg::check_confluence(spec));
  }
}
BENCHMARK(bm_confluence_check)->Unit(benchmark::kMicrosecond);

void bm_rewriting_ball(benchmark::State& state) {
  auto group = dcg::make_rewriting_group(dcg::parse_rewriting_spec(kZ2System));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcg::enumerate_ball(group, static_cast<int>(state.range(0))).size());
  }
}
BENCHMARK(bm_rewriting_ball)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
