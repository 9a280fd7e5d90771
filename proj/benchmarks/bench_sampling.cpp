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

#include "advlearn/rng.hpp"
#include "advlearn/sampling.hpp"

namespace {

using namespace advlearn;

void BM_SampleBitPacked(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  const MeanVector p = MeanVector::constant(d, 0.3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(p, n, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d * n));
}
BENCHMARK(BM_SampleBitPacked)->Args({64, 4096})->Args({1024, 4096});

void BM_ColumnCounts(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  ProductSampler source(MeanVector::constant(d, 0.3), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(source.draw_column_counts(1000000));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d));
}
BENCHMARK(BM_ColumnCounts)->Arg(1024)->Arg(16384);

void BM_Poisson(benchmark::State& state) {
  const double rate = static_cast<double>(state.range(0));
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_poisson(rng, rate));
  }
}
BENCHMARK(BM_Poisson)->Arg(1)->Arg(20)->Arg(100)->Arg(10000);

}  // namespace
