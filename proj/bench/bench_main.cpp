// Copyright 2026 The deftsched Authors
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

#include "deftsched/crunch.hpp"
#include "deftsched/generate.hpp"
#include "deftsched/matching.hpp"
#include "deftsched/sim.hpp"

namespace {

using namespace deftsched;

BottleneckProblem instance(benchmark::State& state) {
  gen::Rng rng(7);
  return gen::bottleneck(rng, static_cast<int>(state.range(0)),
                         static_cast<int>(state.range(1)), false);
}

void BM_Crunch(benchmark::State& state) {
  const auto p = instance(state);
  for (auto _ : state) benchmark::DoNotOptimize(crunch_solve(p));
}
BENCHMARK(BM_Crunch)->Args({20, 10})->Args({50, 25})->Args({100, 50})->Args({200, 100});

// Threshold search grows roughly as (KL) * K^3; 200 x 100 takes minutes.
void BM_ThresholdSearch(benchmark::State& state) {
  const auto p = instance(state);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_via_search(p));
}
BENCHMARK(BM_ThresholdSearch)
    ->Args({20, 10})
    ->Args({50, 25})
    ->Args({100, 50})
    ->Unit(benchmark::kMillisecond);

sim::CampaignConfig campaign() {
  sim::CampaignConfig c;
  c.rounds = 64;
  return c;
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto c = campaign();
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate_serial(c));
}
BENCHMARK(BM_CampaignSerial)->Unit(benchmark::kMillisecond);

void BM_CampaignParallel(benchmark::State& state) {
  const auto c = campaign();
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate(c, 0));
}
BENCHMARK(BM_CampaignParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
