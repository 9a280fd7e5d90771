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

#include "advlearn/bench/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "advlearn/instances.hpp"
#include "advlearn/parallel.hpp"
#include "advlearn/rng.hpp"

#ifndef ADVLEARN_REVISION
#define ADVLEARN_REVISION "unknown"
#endif

namespace advlearn::bench {
namespace {

enum TrialTag : std::uint64_t {
  kTruthTag = 1,
  kAdviceTag = 2,
  kSamplerTag = 3,
  kPipelineTag = 4,
};

// Moves x by `shift` in a random direction, preferring the side that stays
// inside [0, 1].
double nudge(double x, double shift, Rng& rng) {
  double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  if (x + sign * shift < 0.0 || x + sign * shift > 1.0) sign = -sign;
  return std::clamp(x + sign * shift, 0.0, 1.0);
}

MeanVector draw_truth(const SweepSpec& spec, const TrialSpec& t) {
  if (spec.truth.kind == TruthModel::Kind::kConstant) {
    return MeanVector::constant(t.d, spec.truth.value);
  }
  Rng rng(derive_seed(t.seed, kTruthTag));
  std::vector<double> p(t.d);
  for (double& x : p) x = t.tau + (1.0 - 2.0 * t.tau) * rng.uniform();
  return MeanVector(std::move(p));
}

}  // namespace

std::vector<TrialSpec> expand(const SweepSpec& spec) {
  std::vector<TrialSpec> out;
  out.reserve(spec.grid_size() * spec.trials);
  std::uint64_t g = 0;
  for (std::size_t d : spec.dims) {
    for (double eps : spec.epsilons) {
      for (double eta : spec.etas) {
        for (double tau : spec.taus) {
          for (double delta : spec.deltas) {
            for (std::size_t a = 0; a < spec.advice.size(); ++a, ++g) {
              for (std::uint64_t t = 0; t < spec.trials; ++t) {
                out.push_back({g, t, derive_seed(spec.seed, g, t), d, eps,
                               delta, eta, tau, a});
              }
            }
          }
        }
      }
    }
  }
  return out;
}

Instance make_instance(const SweepSpec& spec, const TrialSpec& t) {
  const AdviceModel& m = spec.advice.at(t.advice_index);
  const std::uint64_t advice_seed = derive_seed(t.seed, kAdviceTag);
  using K = AdviceModel::Kind;
  switch (m.kind) {
    case K::kExplicit:
      return {MeanVector(m.p), MeanVector(m.q)};
    case K::kUnbalanced: {
      const Subset s = random_subset(t.d, m.subset_size, advice_seed);
      auto pair = unbalanced_instance(t.d, t.epsilon, s);
      return {std::move(pair.p), std::move(pair.q)};
    }
    case K::kBalanced: {
      const std::size_t k = balanced_subset_size(t.epsilon, m.lambda);
      const Subset s = random_subset(t.d, k, advice_seed);
      auto inst = balanced_instance(t.d, t.epsilon, m.lambda, s);
      return {std::move(inst.p), std::move(inst.q)};
    }
    default:
      break;
  }
  MeanVector p = draw_truth(spec, t);
  std::vector<double> q = p.vector();
  Rng rng(advice_seed);
  switch (m.kind) {
    case K::kSparse: {
      const Subset s = random_subset(t.d, m.t, derive_seed(advice_seed, 0));
      for (std::uint32_t i : s) q[i] = nudge(q[i], m.magnitude, rng);
      break;
    }
    case K::kDense: {
      const double shift = m.l1_budget / static_cast<double>(t.d);
      for (double& x : q) x = nudge(x, shift, rng);
      break;
    }
    case K::kCorner:
      for (double& x : q) x = x < 0.5 ? 1.0 : 0.0;
      break;
    default:
      break;
  }
  return {std::move(p), MeanVector(std::move(q))};
}

PipelineConfig pipeline_config(const SweepSpec& spec, const TrialSpec& t,
                               MeanVector advice) {
  PipelineConfig cfg;
  cfg.epsilon = t.epsilon;
  cfg.delta = t.delta;
  cfg.eta = t.eta;
  cfg.tau = t.tau;
  cfg.advice = std::move(advice);
  cfg.tester_c = spec.tester_c;
  cfg.threshold_factor = spec.threshold_factor;
  cfg.stage1_multiplier = spec.stage1_multiplier;
  cfg.lasso_constant = spec.lasso_constant;
  cfg.baseline_constant = spec.baseline_constant;
  cfg.box_clamp = spec.box_clamp;
  cfg.reuse_stage1 = spec.reuse_stage1;
  return cfg;
}

ResultRow run_trial(const SweepSpec& spec, const TrialSpec& t) {
  const auto start = std::chrono::steady_clock::now();
  Instance inst = make_instance(spec, t);
  const PipelineConfig cfg = pipeline_config(spec, t, inst.q);
  ProductSampler source(inst.p, derive_seed(t.seed, kSamplerTag), spec.sample_mode);
  ExperimentRecord rec =
      test_and_optimize_mean(source, cfg, derive_seed(t.seed, kPipelineTag));
  evaluate(rec, inst.p);

  ResultRow r;
  r.revision = revision_tag();
  r.grid_index = t.grid_index;
  r.trial = t.trial;
  r.seed = t.seed;
  r.d = t.d;
  r.epsilon = t.epsilon;
  r.delta = t.delta;
  r.eta = t.eta;
  r.tau = t.tau;
  r.advice_model = spec.advice[t.advice_index].label();
  r.tester_c = cfg.tester_c;
  r.threshold_factor = cfg.threshold_factor;
  r.lasso_constant = cfg.lasso_constant;
  r.baseline_constant = cfg.baseline_constant;
  r.stage1_multiplier = cfg.stage1_multiplier;
  r.box_clamp = cfg.box_clamp;
  r.reuse_stage1 = cfg.reuse_stage1;
  r.k = rec.schedule.k;
  r.alpha = rec.schedule.alpha;
  r.zeta = rec.schedule.zeta;
  r.delta_prime = rec.schedule.delta_prime;
  r.levels = static_cast<std::uint64_t>(rec.schedule.plan.levels);
  r.repetitions = static_cast<std::uint64_t>(rec.schedule.plan.repetitions);
  r.approx_status = rec.approx_status == ApproxL1Status::kEstimate ? "estimate" : "fail";
  r.branch = to_string(rec.branch);
  r.lambda = rec.lambda;
  r.samples_stage1 = rec.samples_stage1;
  r.samples_stage2 = rec.samples_stage2;
  r.samples_total = rec.samples_total();
  r.baseline_samples = baseline_sample_size(t.d, t.epsilon, t.delta, t.tau,
                                            cfg.baseline_constant);
  r.audit_ok = rec.audit_ok;
  r.true_l1 = *rec.true_l1;
  r.true_l2 = l2_distance(inst.p.values(), inst.q.values());
  r.realized_l2 = *rec.realized_l2;
  r.realized_tv = rec.realized_tv;
  r.estimate = rec.estimate.vector();
  r.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, int workers) {
  const std::vector<TrialSpec> trials = expand(spec);
  std::vector<ResultRow> rows(trials.size());
  parallel_for(trials.size(), workers,
               [&](std::size_t i) { rows[i] = run_trial(spec, trials[i]); });
  return rows;
}

const std::string& revision_tag() {
  static const std::string tag = ADVLEARN_REVISION;
  return tag;
}

int default_workers() {
  if (const char* env = std::getenv("ADVICE_LEARN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*env != '\0' && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace advlearn::bench
