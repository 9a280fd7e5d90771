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

#include <vector>

#include "advlearn/lasso.hpp"
#include "advlearn/rng.hpp"

namespace {

using namespace advlearn;

void BM_ProjectL1Ball(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const bool box = state.range(1) != 0;
  Rng rng(1);
  std::vector<double> v(d);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < d; ++i) {
    c[i] = 0.25 + 0.5 * rng.uniform();
    v[i] = rng.uniform();
  }
  const L1BallConstraint ball{MeanVector(c), 0.05 * static_cast<double>(d), box};
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_l1_ball(v, ball));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d));
}
BENCHMARK(BM_ProjectL1Ball)->ArgsProduct({{64, 1024, 16384, 262144}, {0, 1}});

}  // namespace
