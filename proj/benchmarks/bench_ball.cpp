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

namespace {

void bm_ball_heisenberg(benchmark::State& state) {
  auto group = dcg::make_group("heisenberg");
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    dcg::Ball ball = dcg::enumerate_ball(group, radius);
    benchmark::DoNotOptimize(ball.size());
  }
  state.counters["elements"] = static_cast<double>(dcg::enumerate_ball(group, radius).size());
}
BENCHMARK(bm_ball_heisenberg)->Arg(6)->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);

void bm_ball_free2(benchmark::State& state) {
  auto group = dcg::make_group("free(2)");
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    dcg::Ball ball = dcg::enumerate_ball(group, radius);
    benchmark::DoNotOptimize(ball.size());
  }
}
BENCHMARK(bm_ball_free2)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void bm_ball_distance_lookup(benchmark::State& state) {
  auto group = dcg::make_group("heisenberg");
  dcg::Ball ball = dcg::enumerate_ball(group, 10);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball.distance(ball.elements[i]));
    i = (i + 997) % ball.size();
  }
}
BENCHMARK(bm_ball_distance_lookup);

}  // namespace
