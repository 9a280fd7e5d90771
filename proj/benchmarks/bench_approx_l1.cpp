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

#include <cmath>
#include <cstdint>

#include "advlearn/approx_l1.hpp"
#include "advlearn/pipeline.hpp"
#include "advlearn/sampling.hpp"

namespace {

using namespace advlearn;

void BM_ApproxL1(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) != 0 ? SampleMode::kBitPacked : SampleMode::kCounts;
  PipelineConfig cfg;
  cfg.advice = MeanVector::constant(d, 0.5);
  const Schedule s = make_schedule(d, cfg);
  const ApproxL1Params params{s.k, s.alpha, s.zeta, cfg.delta, cfg.tester_c,
                              cfg.threshold_factor, 1.0};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ProductSampler source(cfg.advice, seed, mode);
    benchmark::DoNotOptimize(approx_l1(source, cfg.advice, params, ++seed));
  }
  state.counters["rows"] = static_cast<double>(s.plan.total_rows);
}
BENCHMARK(BM_ApproxL1)
    ->ArgsProduct({{256, 1024}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
