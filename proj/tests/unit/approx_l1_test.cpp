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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "advlearn/approx_l1.hpp"
#include "advlearn/rng.hpp"
#include "advlearn/sampling.hpp"

namespace advlearn {
namespace {

TEST(PartitionBlocks, CoversRangeWithShortTail) {
  const BlockPartition p = partition_blocks(10, 4);
  ASSERT_EQ(p.w(), 3U);
  EXPECT_EQ(p.blocks[0], (BlockRange{0, 4}));
  EXPECT_EQ(p.blocks[1], (BlockRange{4, 8}));
  EXPECT_EQ(p.blocks[2], (BlockRange{8, 10}));
  EXPECT_EQ(partition_blocks(7, 7).w(), 1U);
  EXPECT_EQ(partition_blocks(7, 1).w(), 7U);
  EXPECT_THROW(partition_blocks(5, 0), std::invalid_argument);
  EXPECT_THROW(partition_blocks(5, 6), std::invalid_argument);
}

TEST(PartitionBlocks, PropertyDisjointCover) {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng() % 500;
    const std::size_t k = 1 + rng() % d;
    const BlockPartition p = partition_blocks(d, k);
    ASSERT_EQ(p.w(), (d + k - 1) / k);
    std::size_t next = 0;
    for (const BlockRange& b : p.blocks) {
      ASSERT_EQ(b.begin, next);
      ASSERT_GE(b.size(), 1U);
      ASSERT_LE(b.size(), k);
      next = b.end;
    }
    ASSERT_EQ(next, d);
  }
}

TEST(LadderLevels, Values) {
  EXPECT_EQ(ladder_levels(0.45471496995311942, 4.8), 4);
  EXPECT_EQ(ladder_levels(0.04, 8.0), 8);
  EXPECT_EQ(ladder_levels(1.0, 4.0), 2);
  EXPECT_EQ(ladder_levels(1.0, 4.5), 3);
}

TEST(PlanApproxL1, FrozenPlans) {
  ApproxL1Params a;
  a.k = 16;
  a.alpha = 0.45471496995311942;
  a.zeta = 4.8;
  a.delta = 1.0 / 3.0;
  const ApproxL1Plan pa = plan_approx_l1(16, a);
  EXPECT_EQ(pa.w, 1U);
  EXPECT_EQ(pa.levels, 4);
  EXPECT_NEAR(pa.delta_prime, 1.0 / 12.0, 1e-15);
  EXPECT_EQ(pa.repetitions, 6);
  EXPECT_EQ(pa.chunk_rows, 104U);
  EXPECT_EQ(pa.total_rows, 624U);

  ApproxL1Params b;
  b.k = 16;
  b.alpha = 0.04;
  b.zeta = 8.0;
  b.delta = 0.1;
  const ApproxL1Plan pb = plan_approx_l1(100, b);
  EXPECT_EQ(pb.w, 7U);
  EXPECT_EQ(pb.levels, 8);
  EXPECT_NEAR(pb.delta_prime, 0.1 / 56.0, 1e-18);
  EXPECT_EQ(pb.repetitions, 10);
  EXPECT_EQ(pb.chunk_rows, 13334U);
  EXPECT_EQ(pb.total_rows, 133340U);

  ApproxL1Params c;
  c.k = 10000;
  c.alpha = 0.039810717055349728;
  c.zeta = 100.0;
  c.delta = 0.1;
  const ApproxL1Plan pc = plan_approx_l1(10000, c);
  EXPECT_EQ(pc.levels, 12);
  EXPECT_EQ(pc.repetitions, 9);
  EXPECT_EQ(pc.chunk_rows, 336511U);
  EXPECT_EQ(pc.total_rows, 3028599U);
}

TEST(PlanApproxL1, ChunkCoversLevelOnePool) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    ApproxL1Params p;
    const std::size_t d = 4 + rng() % 2000;
    p.k = 1 + rng() % d;
    p.alpha = 0.01 + rng.uniform();
    p.zeta = p.alpha * (2.01 + 30.0 * rng.uniform());
    p.c = 0.1 + 2.0 * rng.uniform();
    const ApproxL1Plan plan = plan_approx_l1(d, p);
    const double rate = p.c * std::sqrt(static_cast<double>(p.k)) / (p.alpha * p.alpha);
    ASSERT_GE(plan.chunk_rows, poisson_cap(rate));
    ASSERT_GE(static_cast<double>(plan.chunk_rows),
              16.0 * std::sqrt(static_cast<double>(p.k)) / (3.0 * p.alpha * p.alpha) - 1e-6);
    ASSERT_EQ(plan.total_rows, plan.chunk_rows * static_cast<std::uint64_t>(plan.repetitions));
  }
}

TEST(ApproxL1Params, ValidateRejects) {
  ApproxL1Params p;
  p.k = 4;
  p.alpha = 0.5;
  p.zeta = 2.0;
  EXPECT_NO_THROW(p.validate(8));
  auto bad = p;
  bad.k = 9;
  EXPECT_THROW(bad.validate(8), std::invalid_argument);
  bad = p;
  bad.zeta = 1.0;
  EXPECT_THROW(bad.validate(8), std::invalid_argument);
  bad = p;
  bad.alpha = 0.0;
  EXPECT_THROW(bad.validate(8), std::invalid_argument);
  bad = p;
  bad.sample_multiplier = 0.5;
  EXPECT_THROW(bad.validate(8), std::invalid_argument);
  bad = p;
  bad.delta = 0.0;
  EXPECT_THROW(bad.validate(8), std::invalid_argument);
}

// Wraps a batch and fails the test if any (coord, begin) is asked twice.
class SingleQueryView final : public SampleView {
 public:
  explicit SingleQueryView(SampleBatch batch) : batch_(std::move(batch)) {}
  std::uint64_t rows() const override { return batch_.rows(); }
  std::size_t dim() const override { return batch_.dim(); }
  void prefix_counts(std::size_t coord, std::uint64_t begin,
                     std::span<const std::uint64_t> lengths,
                     std::span<std::uint64_t> out) const override {
    const bool fresh = seen_.insert({coord, begin}).second;
    if (!fresh) ++repeats_;
    batch_.prefix_counts(coord, begin, lengths, out);
  }
  std::size_t queries() const { return seen_.size(); }
  int repeats() const { return repeats_; }

 private:
  SampleBatch batch_;
  mutable std::set<std::pair<std::size_t, std::uint64_t>> seen_;
  mutable int repeats_ = 0;
};

ApproxL1Params small_params() {
  ApproxL1Params p;
  p.k = 8;
  p.alpha = 0.5;
  p.zeta = 4.0;
  p.delta = 0.1;
  return p;
}

TEST(ApproxL1, ReadsEachChunkOfEachCoordinateOnce) {
  const std::size_t d = 20;
  const ApproxL1Params params = small_params();
  const ApproxL1Plan plan = plan_approx_l1(d, params);
  const MeanVector p = MeanVector::constant(d, 0.5);
  SingleQueryView view(sample(p, plan.total_rows, 3));
  const ApproxL1Outcome out = approx_l1(view, p, params, 4);
  EXPECT_EQ(view.repeats(), 0);
  EXPECT_EQ(view.queries(), d * static_cast<std::size_t>(plan.repetitions));
  EXPECT_EQ(out.samples_used, plan.total_rows);
}

TEST(ApproxL1, ColumnTotalsCountAllOfS) {
  const std::size_t d = 12;
  const ApproxL1Params params = small_params();
  const ApproxL1Plan plan = plan_approx_l1(d, params);
  const MeanVector p = MeanVector::constant(d, 0.3);
  const SampleBatch batch = sample(p, plan.total_rows, 5);
  const ApproxL1Outcome out = approx_l1(batch, p, params, 6);
  for (std::size_t i = 0; i < d; ++i) {
    EXPECT_EQ(out.column_totals[i], batch.count_ones(i, 0, batch.rows()));
  }
}

TEST(ApproxL1, TooFewRowsThrows) {
  const MeanVector p = MeanVector::constant(8, 0.5);
  const SampleBatch batch = sample(p, 10, 1);
  EXPECT_THROW(approx_l1(batch, p, small_params(), 1), std::invalid_argument);
}

TEST(ApproxL1, DrawsExactlyThePlanFromASource) {
  const MeanVector p = MeanVector::constant(16, 0.5);
  ProductSampler s(p, 2);
  const ApproxL1Outcome out = approx_l1(s, p, small_params(), 3);
  EXPECT_EQ(s.samples_drawn(), out.plan.total_rows);
  EXPECT_EQ(out.samples_used, out.plan.total_rows);
}

TEST(ApproxL1, FailsWhenDistanceExceedsLadder) {
  // Block l2 distance 0.8 * sqrt(16) = 3.2 against a top level of 1.
  ApproxL1Params params;
  params.k = 16;
  params.alpha = 0.5;
  params.zeta = 1.5;
  params.delta = 0.1;
  const MeanVector p = MeanVector::constant(16, 0.9);
  const MeanVector q = MeanVector::constant(16, 0.1);
  ProductSampler s(p, 7);
  const ApproxL1Outcome out = approx_l1(s, q, params, 8);
  EXPECT_TRUE(out.failed());
  ASSERT_EQ(out.block_levels.size(), 1U);
  EXPECT_FALSE(out.block_levels[0].has_value());
  EXPECT_EQ(out.trace.size(), 2U);
  for (const LadderStep& step : out.trace) EXPECT_EQ(step.verdict, Verdict::kReject);
}

TEST(ApproxL1, TraceStopsAtFirstAccept) {
  const std::size_t d = 24;
  const MeanVector p = MeanVector::constant(d, 0.5);
  ProductSampler s(p, 9);
  const ApproxL1Outcome out = approx_l1(s, p, small_params(), 10);
  ASSERT_FALSE(out.failed());
  for (std::size_t j = 0; j < out.block_levels.size(); ++j) {
    ASSERT_TRUE(out.block_levels[j].has_value());
    int accepts = 0;
    for (const LadderStep& step : out.trace) {
      if (step.block != j) continue;
      accepts += step.verdict == Verdict::kAccept;
      EXPECT_DOUBLE_EQ(step.level_epsilon, std::ldexp(0.5, step.level - 1));
    }
    EXPECT_EQ(accepts, 1);
  }
  double lambda = 0.0;
  for (const auto& o : out.block_levels) lambda += std::sqrt(8.0) * *o;
  EXPECT_DOUBLE_EQ(out.lambda, 2.0 * lambda);
}

// Property over random shifts: a successful estimate upper-bounds the true l1
// distance (with the failure probability of the tester left as slack).
TEST(ApproxL1, EstimateUpperBoundsL1) {
  Rng gen(55);
  const std::size_t d = 32;
  ApproxL1Params params;
  params.k = 8;
  params.alpha = 0.25;
  params.zeta = 4.0;
  params.delta = 0.1;
  int violations = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> pv(d);
    std::vector<double> qv(d);
    const double spread = 0.3 * gen.uniform();
    for (std::size_t i = 0; i < d; ++i) {
      pv[i] = 0.3 + 0.4 * gen.uniform();
      qv[i] = std::clamp(pv[i] + spread * (2 * gen.uniform() - 1), 0.0, 1.0);
    }
    const MeanVector p(pv);
    const MeanVector q(qv);
    ProductSampler s(p, derive_seed(56, t));
    const ApproxL1Outcome out = approx_l1(s, q, params, derive_seed(57, t));
    ASSERT_FALSE(out.failed());
    if (out.lambda < l1_distance(pv, qv)) ++violations;
  }
  EXPECT_LE(violations, 2);
}

}  // namespace
}  // namespace advlearn
