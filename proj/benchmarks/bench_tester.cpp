// Copyright 2026 The advlearn Authors
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

#include <cstdint>
#include <vector>

#include "advlearn/rng.hpp"
#include "advlearn/sampling.hpp"
#include "advlearn/tester.hpp"

namespace {

using namespace advlearn;

void BM_ZStatistic(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<std::uint64_t> counts(d);
  std::vector<double> q(d);
  for (std::size_t i = 0; i < d; ++i) {
    counts[i] = rng() % 50;
    q[i] = rng.uniform();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(z_statistic(counts, 40.0, q));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d));
}
BENCHMARK(BM_ZStatistic)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_TmtMajority(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const MeanVector q = MeanVector::constant(d, 0.5);
  TesterConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ProductSampler source(q, seed);
    benchmark::DoNotOptimize(tmt(source, q, cfg, ++seed));
  }
}
BENCHMARK(BM_TmtMajority)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace
