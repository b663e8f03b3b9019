// Copyright 2026 The ModalGame Authors
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

// Serial versus OpenMP timings for the sampling and grid-search kernels.

#include <optional>
#include <vector>

#include <benchmark/benchmark.h>

#include "modalgame/best_response.h"
#include "modalgame/monte_carlo.h"
#include "modalgame/oracle.h"
#include "modalgame/oracle_suites.h"

namespace {

using namespace modalgame;

const ReactionInputs kInputs{5.0, 0.25, 0.6, 2.9};

void BM_MonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ReferenceMonteCarloReaction(kInputs, ValueOfTime{},
                                                         PreferenceNoise{}, 3.0, 3.5,
                                                         state.range(0), 11));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 16)->Arg(1 << 20);

void BM_MonteCarloParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(MonteCarloReaction(kInputs, ValueOfTime{}, PreferenceNoise{}, 3.0,
                                                3.5, state.range(0), 11));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloParallel)->Arg(1 << 16)->Arg(1 << 20);

struct GridCase {
  Market market;
  std::vector<ReactionPieces> reactions;
};

GridCase MakeGridCase() {
  Market market = MakeRandomTinyMarket(3);
  auto reactions = OperatorReactions(market, 0, std::nullopt);
  return {std::move(market), std::move(reactions)};
}

void BM_GridSerial(benchmark::State& state) {
  const GridCase c = MakeGridCase();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ReferenceGridBestResponse(c.market, 0, c.reactions, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GridSerial)->Arg(21)->Arg(51)->Unit(benchmark::kMillisecond);

void BM_GridParallel(benchmark::State& state) {
  const GridCase c = MakeGridCase();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ParallelGridBestResponse(c.market, 0, c.reactions, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GridParallel)->Arg(21)->Arg(51)->Unit(benchmark::kMillisecond);

void BM_BestResponse(benchmark::State& state) {
  const GridCase c = MakeGridCase();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveBestResponse(c.market, 0, c.reactions));
  }
}
BENCHMARK(BM_BestResponse)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
