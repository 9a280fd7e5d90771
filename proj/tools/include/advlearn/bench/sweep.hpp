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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "advlearn/bench/config.hpp"
#include "advlearn/bench/result_io.hpp"
#include "advlearn/mean_vector.hpp"

namespace advlearn::bench {

// One cell of the grid times one trial index.
struct TrialSpec {
  std::uint64_t grid_index = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t d = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double tau = 0.0;
  std::size_t advice_index = 0;
};

// Grid in row-major order (dims, epsilons, etas, taus, deltas, advice), each
// cell repeated `trials` times. The seed of trial t in cell g is
// derive_seed(spec.seed, g, t).
std::vector<TrialSpec> expand(const SweepSpec& spec);

struct Instance {
  MeanVector p;
  MeanVector q;
};

// The (p, q) pair of one trial; deterministic in the trial seed.
Instance make_instance(const SweepSpec& spec, const TrialSpec& trial);

PipelineConfig pipeline_config(const SweepSpec& spec, const TrialSpec& trial,
                               MeanVector advice);

ResultRow run_trial(const SweepSpec& spec, const TrialSpec& trial);

// All trials on up to `workers` threads; rows come back sorted by
// (grid_index, trial) regardless of completion order.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, int workers);

// Identifier of the source tree the binary was built from.
const std::string& revision_tag();

// --workers default: ADVICE_LEARN_WORKERS when set and positive, else 1.
int default_workers();

}  // namespace advlearn::bench
