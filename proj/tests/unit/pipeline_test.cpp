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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "advlearn/pipeline.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

PipelineConfig config(std::size_t d, double eps, double eta, double tau, double delta) {
  PipelineConfig cfg;
  cfg.epsilon = eps;
  cfg.eta = eta;
  cfg.tau = tau;
  cfg.delta = delta;
  cfg.advice = MeanVector::constant(d, 0.5);
  return cfg;
}

TEST(Schedule, FrozenValues) {
  const Schedule a = make_schedule(16, config(16, 0.3, 0.1, 0.25, 1.0 / 3.0));
  EXPECT_EQ(a.k, 16U);
  EXPECT_DOUBLE_EQ(a.alpha, 0.45471496995311942);
  EXPECT_DOUBLE_EQ(a.zeta, 4.8);
  EXPECT_EQ(a.plan.levels, 4);
  EXPECT_EQ(a.plan.total_rows, 624U);

  const Schedule b = make_schedule(256, config(256, 0.25, 0.1, 0.25, 0.1));
  EXPECT_EQ(b.k, 256U);
  EXPECT_DOUBLE_EQ(b.alpha, 0.14358729437462938);
  EXPECT_DOUBLE_EQ(b.zeta, 16.0);
  EXPECT_EQ(b.plan.levels, 7);
  EXPECT_NEAR(b.delta_prime, 0.1 / 7.0, 1e-16);
  EXPECT_EQ(b.plan.repetitions, 8);
  EXPECT_EQ(b.plan.chunk_rows, 4139U);
  EXPECT_EQ(b.plan.total_rows, 33112U);

  const Schedule c = make_schedule(1024, config(1024, 0.3, 0.1, 0.25, 0.1));
  EXPECT_EQ(c.k, 1024U);
  EXPECT_DOUBLE_EQ(c.alpha, 0.10606601717798213);
  EXPECT_DOUBLE_EQ(c.zeta, 38.4);
  EXPECT_EQ(c.plan.levels, 9);
  EXPECT_EQ(c.plan.total_rows, 121368U);

  const Schedule e = make_schedule(100, config(100, 0.2, 0.0, 0.5, 0.1));
  EXPECT_EQ(e.k, 16U);  // ceil(1 / tau^4) when eta = 0
  EXPECT_DOUBLE_EQ(e.alpha, 0.04);
  EXPECT_EQ(e.plan.w, 7U);
  EXPECT_EQ(e.plan.total_rows, 133340U);
}

TEST(Schedule, BlockSizeCappedByDimension) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + rng() % 3000;
    const double eta = 0.25 * rng.uniform();
    const double tau = 0.05 + 0.45 * rng.uniform();
    const double eps = 0.05 + 0.5 * rng.uniform();
    const Schedule s = make_schedule(d, config(d, eps, eta, tau, 0.1));
    ASSERT_GE(s.k, 1U);
    ASSERT_LE(s.k, d);
    ASSERT_GT(s.zeta, 2 * s.alpha);
    ASSERT_NEAR(s.zeta, 4 * eps * std::sqrt(static_cast<double>(d)), 1e-12);
  }
}

TEST(BaselineSampleSize, FrozenValues) {
  EXPECT_EQ(baseline_sample_size(16, 0.3, 1.0 / 3.0, 0.25), 6326U);
  EXPECT_EQ(baseline_sample_size(10000, 0.25, 0.1, 0.25), 5121534U);
  EXPECT_EQ(baseline_sample_size(8, 0.5, 0.1, 0.5), 704U);
}

TEST(PipelineConfig, ValidateNamesField) {
  PipelineConfig cfg = config(8, 0.3, 0.1, 0.25, 0.1);
  EXPECT_NO_THROW(cfg.validate());
  auto expect_field = [](PipelineConfig c, const std::string& field) {
    try {
      c.validate();
      ADD_FAILURE() << "no throw for " << field;
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  auto bad = cfg;
  bad.tau = 0.7;
  expect_field(bad, "tau");
  bad = cfg;
  bad.eta = 0.3;
  expect_field(bad, "eta");
  bad = cfg;
  bad.epsilon = 0;
  expect_field(bad, "epsilon");
  bad = cfg;
  bad.delta = 1.5;
  expect_field(bad, "delta");
  bad = cfg;
  bad.advice = MeanVector();
  expect_field(bad, "advice");
  bad = cfg;
  bad.threshold_factor = 3.5;
  expect_field(bad, "threshold_factor");
  bad = cfg;
  bad.stage1_multiplier = 0.5;
  expect_field(bad, "stage1_multiplier");
}

TEST(BranchNames, Strings) {
  EXPECT_STREQ(to_string(Branch::kAdviceLasso), "advice_lasso");
  EXPECT_STREQ(to_string(Branch::kBaseline), "baseline");
}

void expect_audited(const ExperimentRecord& r) {
  EXPECT_TRUE(r.audit_ok);
  EXPECT_EQ(r.samples_drawn, r.samples_total());
  EXPECT_EQ(r.samples_stage1, r.schedule.plan.total_rows);
  EXPECT_EQ(r.estimate.dim(), r.config.advice.dim());
}

TEST(Pipeline, SmallDimensionTakesBaseline) {
  const std::size_t d = 16;
  PipelineConfig cfg = config(d, 0.3, 0.1, 0.25, 1.0 / 3.0);
  const MeanVector p = MeanVector::constant(d, 0.5);
  cfg.advice = p;
  const ExperimentRecord r = run_experiment(p, cfg, 4);
  expect_audited(r);
  EXPECT_EQ(r.branch, Branch::kBaseline);
  EXPECT_EQ(r.samples_stage2, 6326U);
  ASSERT_TRUE(r.true_l1.has_value());
  EXPECT_EQ(*r.true_l1, 0.0);
  ASSERT_TRUE(r.realized_tv.has_value());
}

TEST(Pipeline, ExactAdviceTakesLassoBranchAtModerateDimension) {
  const std::size_t d = 1024;
  Rng rng(5);
  std::vector<double> pv(d);
  for (double& x : pv) x = 0.25 + 0.5 * rng.uniform();
  const MeanVector p(pv);
  PipelineConfig cfg = config(d, 0.3, 0.1, 0.25, 0.1);
  cfg.advice = p;
  const ExperimentRecord r = run_experiment(p, cfg, 6);
  expect_audited(r);
  ASSERT_EQ(r.approx_status, ApproxL1Status::kEstimate);
  ASSERT_TRUE(r.lambda.has_value());
  EXPECT_EQ(r.branch, Branch::kAdviceLasso);
  EXPECT_LT(*r.lambda, 0.3 * std::sqrt(1024.0));
  EXPECT_EQ(r.samples_stage2,
            lasso_sample_size(*r.lambda, 0.3 * 0.5 / 2, 0.1, d, kLassoSampleConstant));
  EXPECT_LE(l1_distance(r.estimate.values(), p.values()), *r.lambda + 1e-9);
  EXPECT_LE(*r.realized_l2, 0.3);
  EXPECT_FALSE(r.realized_tv.has_value());
}

// Branch soundness: whenever the lasso branch runs, lambda < eps sqrt(d).
TEST(Pipeline, BranchMatchesLambda) {
  const std::size_t d = 64;
  for (int t = 0; t < 6; ++t) {
    const MeanVector p = MeanVector::constant(d, 0.3 + 0.05 * t);
    PipelineConfig cfg = config(d, 0.4, 0.1, 0.25, 0.1);
    const ExperimentRecord r = run_experiment(p, cfg, derive_seed(7, t));
    expect_audited(r);
    const bool lasso = r.lambda && *r.lambda < 0.4 * 8.0;
    EXPECT_EQ(r.branch == Branch::kAdviceLasso, lasso);
  }
}

TEST(Pipeline, ReuseModeCountsStageOneRows) {
  const std::size_t d = 16;
  PipelineConfig cfg = config(d, 0.3, 0.1, 0.25, 1.0 / 3.0);
  cfg.reuse_stage1 = true;
  const ExperimentRecord r = run_experiment(cfg.advice, cfg, 9);
  expect_audited(r);
  EXPECT_EQ(r.branch, Branch::kBaseline);
  EXPECT_EQ(r.samples_stage2, 6326U - 624U);
}

TEST(Pipeline, DeterministicInSeedAndMode) {
  const std::size_t d = 16;
  const PipelineConfig cfg = config(d, 0.3, 0.1, 0.25, 1.0 / 3.0);
  const MeanVector p = MeanVector::constant(d, 0.4);
  for (SampleMode mode : {SampleMode::kCounts, SampleMode::kBitPacked}) {
    const ExperimentRecord a = run_experiment(p, cfg, 10, mode);
    const ExperimentRecord b = run_experiment(p, cfg, 10, mode);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.lambda, b.lambda);
  }
}

TEST(Pipeline, DimensionMismatchThrows) {
  ProductSampler s(MeanVector::constant(8, 0.5), 1);
  EXPECT_THROW(test_and_optimize_mean(s, config(16, 0.3, 0.1, 0.25, 0.1), 1),
               std::invalid_argument);
}

TEST(BudgetReport, GroupsByDistance) {
  const std::size_t d = 16;
  std::vector<ExperimentRecord> records;
  const MeanVector p = MeanVector::constant(d, 0.5);
  for (int t = 0; t < 4; ++t) {
    PipelineConfig cfg = config(d, 0.3, 0.1, 0.25, 1.0 / 3.0);
    std::vector<double> q(d, 0.5);
    if (t % 2 == 1) q[0] = 0.7;
    cfg.advice = MeanVector(q);
    records.push_back(run_experiment(p, cfg, derive_seed(11, t)));
  }
  const BudgetTable table = sample_budget_report(records);
  EXPECT_EQ(table.d, d);
  EXPECT_EQ(table.baseline_cost, 6326U);
  ASSERT_EQ(table.rows.size(), 2U);
  EXPECT_EQ(table.rows[0].l1, 0.0);
  EXPECT_NEAR(table.rows[1].l1, 0.2, 1e-15);
  for (const BudgetRow& row : table.rows) {
    EXPECT_EQ(row.runs, 2U);
    EXPECT_DOUBLE_EQ(row.mean_total, row.mean_stage1 + row.mean_stage2);
  }
}

TEST(BudgetReport, Errors) {
  EXPECT_THROW(sample_budget_report({}), std::invalid_argument);
  const std::size_t d = 16;
  const PipelineConfig cfg = config(d, 0.3, 0.1, 0.25, 1.0 / 3.0);
  ProductSampler s(cfg.advice, 1);
  const ExperimentRecord unevaluated = test_and_optimize_mean(s, cfg, 2);
  EXPECT_THROW(sample_budget_report({unevaluated}), std::invalid_argument);
  ExperimentRecord a = run_experiment(cfg.advice, cfg, 3);
  PipelineConfig other = cfg;
  other.epsilon = 0.35;
  ExperimentRecord b = run_experiment(cfg.advice, other, 4);
  EXPECT_THROW(sample_budget_report({a, b}), std::invalid_argument);
}

}  // namespace
}  // namespace advlearn
