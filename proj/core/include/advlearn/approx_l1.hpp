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
#include <optional>
#include <vector>

#include "advlearn/mean_vector.hpp"
#include "advlearn/sampling.hpp"
#include "advlearn/tester.hpp"

namespace advlearn {

struct BlockRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  std::size_t size() const { return end - begin; }
  friend bool operator==(const BlockRange&, const BlockRange&) = default;
};

// Contiguous blocks of size k covering [0, d); the last block may be short.
struct BlockPartition {
  std::vector<BlockRange> blocks;
  std::size_t k = 0;
  std::size_t w() const { return blocks.size(); }
};

// Throws std::invalid_argument unless 1 <= k <= d.
BlockPartition partition_blocks(std::size_t d, std::size_t k);

struct ApproxL1Params {
  std::size_t k = 1;
  double alpha = 0.0;  // first ladder level
  double zeta = 0.0;   // ladder ceiling, zeta > 2 alpha
  double delta = 0.1;
  double c = kDefaultTesterC;
  double threshold_factor = kDefaultThresholdFactor;
  // Scales the per-repetition chunk ceil(16 sqrt(k) / (3 alpha^2)); >= 1.
  double sample_multiplier = 1.0;

  void validate(std::size_t d) const;
};

// Sizes derived from the parameters before any sample is drawn.
struct ApproxL1Plan {
  std::size_t w = 0;
  int levels = 0;             // ceil(log2(zeta / alpha))
  double delta_prime = 0.0;   // delta / (w * levels)
  int repetitions = 0;        // 1 + ceil(ln(12 / delta_prime))
  std::uint64_t chunk_rows = 0;
  std::uint64_t total_rows = 0;  // |S| = chunk_rows * repetitions
};

ApproxL1Plan plan_approx_l1(std::size_t d, const ApproxL1Params& params);

// Number of ladder levels ceil(log2(zeta / alpha)).
int ladder_levels(double alpha, double zeta);

struct LadderStep {
  std::size_t block = 0;
  int level = 0;  // 1-based
  double level_epsilon = 0.0;
  Verdict verdict = Verdict::kReject;
  int accepts = 0;
};

enum class ApproxL1Status { kFail, kEstimate };

struct ApproxL1Outcome {
  ApproxL1Status status = ApproxL1Status::kFail;
  double lambda = 0.0;  // meaningful iff status == kEstimate
  // o_j per block; empty when the block exhausted its ladder.
  std::vector<std::optional<double>> block_levels;
  std::uint64_t samples_used = 0;
  ApproxL1Plan plan;
  // Every tester invocation in execution order.
  std::vector<LadderStep> trace;
  // Ones per coordinate over all of S.
  std::vector<std::uint64_t> column_totals;

  bool failed() const { return status == ApproxL1Status::kFail; }
};

// Draws one multiset S of plan.total_rows samples from `source` and runs the
// block ladder on it.
ApproxL1Outcome approx_l1(SampleSource& source, const MeanVector& q,
                          const ApproxL1Params& params, std::uint64_t seed);

// The block ladder on a caller-supplied multiset S; S.rows() must be at
// least plan_approx_l1(...).total_rows. samples_used reports S.rows().
ApproxL1Outcome approx_l1(const SampleView& samples, const MeanVector& q,
                          const ApproxL1Params& params, std::uint64_t seed);

}  // namespace advlearn
