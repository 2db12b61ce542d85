// Copyright 2026 The fpdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Serial vs OpenMP for the data-parallel layers, and the event-driven
// integrator vs the fixed-step reference.

#include <benchmark/benchmark.h>

#include "fpdyn/batch.h"
#include "fpdyn/builtin_games.h"
#include "fpdyn/experiments.h"
#include "fpdyn/reference_integrator.h"
#include "fpdyn/search.h"

namespace {

fpdyn::SearchConfig SmallSearch() {
  fpdyn::SearchConfig config;
  config.count = 8;
  config.seed = 3;
  config.horizon = 1e5;
  config.starts_per_game = 2;
  return config;
}

void BM_SearchSerial(benchmark::State& state) {
  const auto config = SmallSearch();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpdyn::SearchSubNashSerial(config));
  }
}
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond);

void BM_SearchParallel(benchmark::State& state) {
  auto config = SmallSearch();
  config.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpdyn::SearchSubNash(config));
  }
}
BENCHMARK(BM_SearchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BatchSerial(benchmark::State& state) {
  const auto game = fpdyn::Section5Game();
  const auto starts = fpdyn::GridStarts(3, 3, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpdyn::SimulateBatchSerial(game, starts, 1e6));
  }
}
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);

void BM_BatchParallel(benchmark::State& state) {
  const auto game = fpdyn::Section5Game();
  const auto starts = fpdyn::GridStarts(3, 3, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpdyn::SimulateBatch(
        game, starts, 1e6, {}, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BatchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EventDriven(benchmark::State& state) {
  const auto game = fpdyn::Section5Game();
  const auto start = fpdyn::Section5Start();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpdyn::Simulate(game, start, 100.0));
  }
}
BENCHMARK(BM_EventDriven)->Unit(benchmark::kMicrosecond);

void BM_ReferenceEuler(benchmark::State& state) {
  const auto game = fpdyn::Section5Game();
  const auto start = fpdyn::Section5Start();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpdyn::ReferenceIntegrate(game, start, 100.0));
  }
}
BENCHMARK(BM_ReferenceEuler)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
