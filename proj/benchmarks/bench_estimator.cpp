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

#include "dcg/estimator.hpp"

namespace {

void bm_dc_exact_heisenberg(benchmark::State& state) {
  auto group = dcg::make_group("heisenberg");
  dcg::Ball ball = dcg::enumerate_ball(group, static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcg::dc_exact_on_ball(ball, -1, 1'000'000'000, threads));
  }
  state.counters["pairs"] = static_cast<double>(ball.size()) * static_cast<double>(ball.size());
}
BENCHMARK(bm_dc_exact_heisenberg)
    ->Args({6, 1})
    ->Args({6, 2})
    ->Args({8, 2})
    ->Unit(benchmark::kMillisecond);

void bm_ds_sampled_q8(benchmark::State& state) {
  auto group = dcg::make_group("q8");
  dcg::Measure mu = dcg::uniform_on_ball(dcg::enumerate_ball(group, 3));
  dcg::EquationSystem comm = dcg::EquationSystem::parse({"[x1,x2]"});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dcg::ds_sampled(*group, comm, mu, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}
BENCHMARK(bm_ds_sampled_q8)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void bm_random_walk_measure(benchmark::State& state) {
  auto group = dcg::make_group("free(2)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcg::random_walk_measure(group, static_cast<int>(state.range(0)), 0.0));
  }
}
BENCHMARK(bm_random_walk_measure)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
