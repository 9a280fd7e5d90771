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

#include "advlearn/approx_l1.hpp"
#include "advlearn/lasso.hpp"
#include "advlearn/mean_vector.hpp"
#include "advlearn/sampling.hpp"
#include "advlearn/tester.hpp"

namespace advlearn {

inline constexpr double kBaselineSampleConstant = 8.0;

// Inputs of the adaptive learner plus every tunable constant.
struct PipelineConfig {
  double epsilon = 0.25;
  double delta = 0.1;
  double eta = 0.1;   // in [0, 1/4]
  double tau = 0.25;  // in (0, 1/2]
  MeanVector advice;  // q

  double tester_c = kDefaultTesterC;
  double threshold_factor = kDefaultThresholdFactor;
  double stage1_multiplier = 1.0;
  double lasso_constant = kLassoSampleConstant;
  double baseline_constant = kBaselineSampleConstant;
  bool box_clamp = true;
  // Experimental: count stage-1 rows toward the stage-2 estimator.
  bool reuse_stage1 = false;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Parameters derived from (d, epsilon, delta, eta, tau).
struct Schedule {
  std::size_t k = 0;          // min(ceil(d^{4 eta} / tau^4), d)
  double alpha = 0.0;         // epsilon d^{(3 eta - 1)/2} / tau
  double zeta = 0.0;          // 4 epsilon sqrt(d)
  double delta_prime = 0.0;   // delta / (ceil(d/k) ceil(log2(zeta/alpha)))
  ApproxL1Plan plan;
};

Schedule make_schedule(std::size_t d, const PipelineConfig& cfg);

// ceil(C (d + ln(2/delta)) / (tau epsilon^2)).
std::uint64_t baseline_sample_size(std::size_t d, double epsilon, double delta,
                                   double tau,
                                   double constant = kBaselineSampleConstant);

enum class Branch { kAdviceLasso, kBaseline };

const char* to_string(Branch b);

struct ExperimentRecord {
  PipelineConfig config;
  Schedule schedule;
  ApproxL1Status approx_status = ApproxL1Status::kFail;
  Branch branch = Branch::kBaseline;
  std::optional<double> lambda;
  std::uint64_t samples_stage1 = 0;
  std::uint64_t samples_stage2 = 0;
  // Draws reported by the source; equals stage1 + stage2 when audit_ok.
  std::uint64_t samples_drawn = 0;
  bool audit_ok = false;
  MeanVector estimate;

  // Filled by evaluate() when the true mean is known.
  std::optional<double> true_l1;
  std::optional<double> realized_l2;
  std::optional<double> realized_tv;  // exact, only for d <= kMaxExactTvDim

  std::uint64_t samples_total() const { return samples_stage1 + samples_stage2; }
};

// Tests the advice with ApproxL1 on a shared sample, then either projects a
// fresh empirical mean onto the l1 ball of radius lambda around q (when
// lambda < epsilon sqrt(d)) or returns a fresh empirical mean of the
// baseline size. `source` must be tau-balanced; this is not checked.
ExperimentRecord test_and_optimize_mean(SampleSource& source,
                                        const PipelineConfig& cfg,
                                        std::uint64_t seed);

// Fills true_l1 / realized_l2 / realized_tv against the true mean p.
void evaluate(ExperimentRecord& record, const MeanVector& p);

// One run against a fresh ProductSampler for p, evaluated.
ExperimentRecord run_experiment(const MeanVector& p, const PipelineConfig& cfg,
                                std::uint64_t seed,
                                SampleMode mode = SampleMode::kCounts);

struct BudgetRow {
  double l1 = 0.0;
  std::size_t runs = 0;
  double mean_stage1 = 0.0;
  double mean_stage2 = 0.0;
  double mean_total = 0.0;
  double lasso_fraction = 0.0;
};

struct BudgetTable {
  std::size_t d = 0;
  double epsilon = 0.0;
  double tau = 0.0;
  double eta = 0.0;
  std::uint64_t baseline_cost = 0;
  std::vector<BudgetRow> rows;  // ascending in l1
};

// Mean sample cost per true l1 distance. Records must be evaluated and share
// (d, epsilon, tau, eta); otherwise std::invalid_argument.
BudgetTable sample_budget_report(const std::vector<ExperimentRecord>& records);

}  // namespace advlearn
