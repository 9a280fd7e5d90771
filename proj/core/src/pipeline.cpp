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

#include "advlearn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "advlearn/metrics.hpp"
#include "advlearn/numeric.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

enum StageTag : std::uint64_t { kStage1 = 1, kStage2 = 2 };

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("pipeline config: " + field + " " + why);
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(epsilon > 0.0)) bad_field("epsilon", "must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) bad_field("delta", "must lie in (0, 1)");
  if (!(eta >= 0.0 && eta <= 0.25)) bad_field("eta", "must lie in [0, 1/4]");
  if (!(tau > 0.0 && tau <= 0.5)) bad_field("tau", "must lie in (0, 1/2]");
  if (advice.dim() == 0) bad_field("advice", "must be non-empty");
  if (!(tester_c > 0.0)) bad_field("tester_c", "must be > 0");
  if (!(threshold_factor > 2.0 && threshold_factor < 3.0)) {
    bad_field("threshold_factor", "must lie in (2, 3)");
  }
  if (!(stage1_multiplier >= 1.0)) bad_field("stage1_multiplier", "must be >= 1");
  if (!(lasso_constant > 0.0)) bad_field("lasso_constant", "must be > 0");
  if (!(baseline_constant > 0.0)) bad_field("baseline_constant", "must be > 0");
}

Schedule make_schedule(std::size_t d, const PipelineConfig& cfg) {
  cfg.validate();
  const double dd = static_cast<double>(d);
  Schedule s;
  const double k_raw = std::pow(dd, 4.0 * cfg.eta) / std::pow(cfg.tau, 4.0);
  s.k = static_cast<std::size_t>(std::min<std::uint64_t>(ceil_count(k_raw), d));
  s.k = std::max<std::size_t>(s.k, 1);
  s.alpha = cfg.epsilon * std::pow(dd, (3.0 * cfg.eta - 1.0) / 2.0) / cfg.tau;
  s.zeta = 4.0 * cfg.epsilon * std::sqrt(dd);
  const ApproxL1Params params{s.k,         s.alpha,
                              s.zeta,      cfg.delta,
                              cfg.tester_c, cfg.threshold_factor,
                              cfg.stage1_multiplier};
  s.plan = plan_approx_l1(d, params);
  s.delta_prime = s.plan.delta_prime;
  return s;
}

std::uint64_t baseline_sample_size(std::size_t d, double epsilon, double delta,
                                   double tau, double constant) {
  const double n = constant * (static_cast<double>(d) + std::log(2.0 / delta)) /
                   (tau * epsilon * epsilon);
  return ceil_count(n);
}

const char* to_string(Branch b) {
  return b == Branch::kAdviceLasso ? "advice_lasso" : "baseline";
}

ExperimentRecord test_and_optimize_mean(SampleSource& source,
                                        const PipelineConfig& cfg,
                                        std::uint64_t seed) {
  const std::size_t d = cfg.advice.dim();
  require_same_dim(source.dim(), d, "test_and_optimize_mean");
  ExperimentRecord rec;
  rec.config = cfg;
  rec.schedule = make_schedule(d, cfg);
  const std::uint64_t drawn_before = source.samples_drawn();

  const ApproxL1Params params{rec.schedule.k,  rec.schedule.alpha,
                              rec.schedule.zeta, cfg.delta,
                              cfg.tester_c,     cfg.threshold_factor,
                              cfg.stage1_multiplier};
  const ApproxL1Outcome outcome =
      approx_l1(source, cfg.advice, params, derive_seed(seed, kStage1));
  rec.samples_stage1 = outcome.samples_used;
  rec.approx_status = outcome.status;
  if (!outcome.failed()) rec.lambda = outcome.lambda;

  const double advice_limit = cfg.epsilon * std::sqrt(static_cast<double>(d));
  std::uint64_t n = 0;
  if (rec.lambda && *rec.lambda < advice_limit) {
    rec.branch = Branch::kAdviceLasso;
    const double target = cfg.epsilon * std::sqrt(cfg.tau) / 2.0;
    n = lasso_sample_size(*rec.lambda, target, cfg.delta, d, cfg.lasso_constant);
  } else {
    rec.branch = Branch::kBaseline;
    n = baseline_sample_size(d, cfg.epsilon, cfg.delta, cfg.tau,
                             cfg.baseline_constant);
  }

  std::vector<std::uint64_t> counts(d, 0);
  std::uint64_t rows = 0;
  if (cfg.reuse_stage1) {
    counts = outcome.column_totals;
    rows = outcome.samples_used;
  }
  const std::uint64_t fresh = n > rows ? n - rows : 0;
  if (fresh > 0) {
    const auto drawn = source.draw_column_counts(fresh);
    for (std::size_t i = 0; i < d; ++i) counts[i] += drawn[i];
  }
  rows += fresh;
  rec.samples_stage2 = fresh;

  if (rows == 0) {
    // Only reachable with lambda == 0, where the ball is the single point q.
    rec.estimate = cfg.advice;
  } else if (rec.branch == Branch::kAdviceLasso) {
    rec.estimate = constrained_least_squares(counts, rows, cfg.advice,
                                             *rec.lambda, cfg.box_clamp);
  } else {
    rec.estimate = empirical_mean(counts, rows);
  }

  rec.samples_drawn = source.samples_drawn() - drawn_before;
  rec.audit_ok = rec.samples_drawn == rec.samples_total();
  return rec;
}

void evaluate(ExperimentRecord& record, const MeanVector& p) {
  require_same_dim(p.dim(), record.estimate.dim(), "evaluate");
  record.true_l1 = l1_distance(p.values(), record.config.advice.values());
  record.realized_l2 = l2_distance(p.values(), record.estimate.values());
  if (p.dim() <= kMaxExactTvDim) record.realized_tv = tv_exact(p, record.estimate);
}

ExperimentRecord run_experiment(const MeanVector& p, const PipelineConfig& cfg,
                                std::uint64_t seed, SampleMode mode) {
  ProductSampler source(p, derive_seed(seed, 0), mode);
  ExperimentRecord rec = test_and_optimize_mean(source, cfg, derive_seed(seed, 1));
  evaluate(rec, p);
  return rec;
}

BudgetTable sample_budget_report(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("sample_budget_report: no records");
  }
  const ExperimentRecord& first = records.front();
  BudgetTable table;
  table.d = first.config.advice.dim();
  table.epsilon = first.config.epsilon;
  table.tau = first.config.tau;
  table.eta = first.config.eta;
  table.baseline_cost =
      baseline_sample_size(table.d, table.epsilon, first.config.delta,
                           table.tau, first.config.baseline_constant);

  // Bucket by l1 rounded to 1e-9 so equal configurations group together.
  std::map<long long, BudgetRow> buckets;
  for (const ExperimentRecord& r : records) {
    if (r.config.advice.dim() != table.d || r.config.epsilon != table.epsilon ||
        r.config.tau != table.tau || r.config.eta != table.eta) {
      throw std::invalid_argument(
          "sample_budget_report: records differ in (d, epsilon, tau, eta)");
    }
    if (!r.true_l1) {
      throw std::invalid_argument("sample_budget_report: record not evaluated");
    }
    BudgetRow& row = buckets[std::llround(*r.true_l1 * 1e9)];
    row.l1 = *r.true_l1;
    row.runs += 1;
    row.mean_stage1 += static_cast<double>(r.samples_stage1);
    row.mean_stage2 += static_cast<double>(r.samples_stage2);
    row.lasso_fraction += r.branch == Branch::kAdviceLasso ? 1.0 : 0.0;
  }
  for (auto& [key, row] : buckets) {
    const double n = static_cast<double>(row.runs);
    row.mean_stage1 /= n;
    row.mean_stage2 /= n;
    row.mean_total = row.mean_stage1 + row.mean_stage2;
    row.lasso_fraction /= n;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace advlearn
