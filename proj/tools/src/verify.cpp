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

#include "advlearn/bench/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "advlearn/approx_l1.hpp"
#include "advlearn/bench/config.hpp"
#include "advlearn/bench/result_io.hpp"
#include "advlearn/bench/sweep.hpp"
#include "advlearn/instances.hpp"
#include "advlearn/lasso.hpp"
#include "advlearn/metrics.hpp"
#include "advlearn/parallel.hpp"
#include "advlearn/pipeline.hpp"
#include "advlearn/rng.hpp"
#include "advlearn/sampling.hpp"
#include "advlearn/tester.hpp"

namespace advlearn::bench {
namespace {

struct Check {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  const int n = std::snprintf(nullptr, 0, pattern, args...);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  std::snprintf(out.data(), out.size(), pattern, args...);
  out.pop_back();
  return out;
}

MeanVector uniform_mean(std::size_t d, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> p(d);
  for (double& x : p) x = lo + (hi - lo) * rng.uniform();
  return MeanVector(std::move(p));
}

// p moved by `step` per coordinate in random directions that stay in [0, 1].
MeanVector shifted(const MeanVector& p, double step, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> q = p.vector();
  for (double& x : q) {
    double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    if (x + sign * step < 0.0 || x + sign * step > 1.0) sign = -sign;
    x += sign * step;
  }
  return MeanVector(std::move(q));
}

// C1: Monte Carlo mean of Z against m^2 ||p - q||_2^2.
Check statistic_moments(const VerifyOptions& o) {
  constexpr std::size_t kConfigs = 20;
  constexpr std::size_t kDraws = 10000;
  constexpr std::size_t kDim = 50;
  constexpr double kRate = 1000.0;
  const std::uint64_t cap = poisson_cap(kRate);
  std::vector<int> ok(kConfigs, 0);
  std::vector<double> zscore(kConfigs, 0.0);
  parallel_for(kConfigs, o.workers, [&](std::size_t j) {
    const std::uint64_t seed = derive_seed(o.seed, 1, j);
    const MeanVector p = uniform_mean(kDim, 0.0, 1.0, derive_seed(seed, 0));
    const MeanVector q = j % 2 == 0 ? uniform_mean(kDim, 0.0, 1.0, derive_seed(seed, 1))
                                    : shifted(p, 0.02 * static_cast<double>(j % 5),
                                              derive_seed(seed, 1));
    ProductSampler source(p, derive_seed(seed, 2));
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t draws = 0;
    for (std::uint64_t t = 0; draws < kDraws; ++t) {
      const PoissonDraw draw =
          poissonized_counts(source, kRate, cap, derive_seed(seed, 3, t));
      if (!std::holds_alternative<PoissonCounts>(draw)) continue;
      const double z = z_statistic(std::get<PoissonCounts>(draw), q);
      sum += z;
      sum_sq += z * z;
      ++draws;
    }
    const double n = static_cast<double>(draws);
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1.0);
    const double se = std::sqrt(var / n);
    const double l2 = l2_distance(p.values(), q.values());
    const double expected = kRate * kRate * l2 * l2;
    zscore[j] = (mean - expected) / se;
    ok[j] = std::abs(zscore[j]) <= 4.0;
  });
  const int hits = std::count(ok.begin(), ok.end(), 1);
  const double worst = *std::max_element(zscore.begin(), zscore.end(),
                                         [](double a, double b) {
                                           return std::abs(a) < std::abs(b);
                                         });
  return {hits >= 19, fmt("%d/20 configurations within 4 SE (need 19); worst "
                          "deviation %.2f SE",
                          hits, worst)};
}

// C2: majority-vote tester at d = 256, eps = 0.2, delta = 0.1.
Check tester_separation(const VerifyOptions& o) {
  constexpr std::size_t kTrials = 100;
  constexpr std::size_t kDim = 256;
  const TesterConfig cfg{0.2, 0.1, kDefaultTesterC, kDefaultThresholdFactor};
  std::vector<int> accept_close(kTrials, 0);
  std::vector<int> reject_far(kTrials, 0);
  parallel_for(kTrials, o.workers, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(o.seed, 2, t);
    const MeanVector q = uniform_mean(kDim, 0.25, 0.75, derive_seed(seed, 0));
    const MeanVector far = shifted(q, 0.5 / std::sqrt(double{kDim}), derive_seed(seed, 1));
    ProductSampler same(q, derive_seed(seed, 2));
    ProductSampler apart(far, derive_seed(seed, 3));
    accept_close[t] = tmt(same, q, cfg, derive_seed(seed, 4)).verdict == Verdict::kAccept;
    reject_far[t] = tmt(apart, q, cfg, derive_seed(seed, 5)).verdict == Verdict::kReject;
  });
  const int a = std::count(accept_close.begin(), accept_close.end(), 1);
  const int r = std::count(reject_far.begin(), reject_far.end(), 1);
  return {a >= 90 && r >= 90,
          fmt("c = %.4g, %d repetitions: accept rate %.2f at p = q, reject rate "
              "%.2f at l2 = 0.5 (need 0.90 each)",
              kDefaultTesterC, tester_repetitions(0.1), a / 100.0, r / 100.0)};
}

// C3: sandwich of the ApproxL1 estimate at d = 256, k = 16.
Check approx_l1_sandwich(const VerifyOptions& o) {
  constexpr std::size_t kTrials = 100;
  constexpr std::size_t kDim = 256;
  constexpr std::size_t kBlock = 16;
  const double distances[] = {0.0, 1.0, 4.0};
  PipelineConfig schedule_cfg;
  schedule_cfg.epsilon = 0.25;
  schedule_cfg.eta = 0.1;
  schedule_cfg.tau = 0.25;
  schedule_cfg.delta = 0.1;
  schedule_cfg.advice = MeanVector::constant(kDim, 0.5);
  const Schedule s = make_schedule(kDim, schedule_cfg);
  ApproxL1Params params{kBlock, s.alpha, s.zeta, 0.1, kDefaultTesterC,
                        kDefaultThresholdFactor, 1.0};
  const double w = std::ceil(double{kDim} / double{kBlock});
  bool all = true;
  std::string detail = fmt("alpha = %.4g, zeta = %.4g:", s.alpha, s.zeta);
  for (std::size_t di = 0; di < 3; ++di) {
    const double dist = distances[di];
    std::vector<int> ok(kTrials, 0);
    parallel_for(kTrials, o.workers, [&](std::size_t t) {
      const std::uint64_t seed = derive_seed(o.seed, 3, di, t);
      const MeanVector p = uniform_mean(kDim, 0.25, 0.75, derive_seed(seed, 0));
      const MeanVector q = shifted(p, dist / double{kDim}, derive_seed(seed, 1));
      const double l1 = l1_distance(p.values(), q.values());
      ProductSampler source(p, derive_seed(seed, 2));
      const ApproxL1Outcome out = approx_l1(source, q, params, derive_seed(seed, 3));
      const double upper =
          2.0 * std::sqrt(double{kBlock}) * (w * s.alpha + 2.0 * l1);
      ok[t] = !out.failed() && l1 <= out.lambda && out.lambda <= upper;
    });
    const int hits = std::count(ok.begin(), ok.end(), 1);
    all = all && hits >= 85;
    detail += fmt(" l1 = %g: %d/100", dist, hits);
  }
  return {all, detail + " (need 85 each)"};
}

// Independent projection oracle: the dual of min 0.5 ||x - v||^2 subject to
// ||x - c||_1 <= r (and the box) is a concave function of one multiplier,
// maximized here by golden-section search.
std::vector<double> dual_oracle(const std::vector<double>& v,
                                const std::vector<double>& c, double r,
                                bool box) {
  auto primal = [&](double theta) {
    std::vector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double w = v[i] - c[i];
      const double soft = std::copysign(std::max(std::abs(w) - theta, 0.0), w);
      x[i] = c[i] + soft;
      if (box) x[i] = std::clamp(x[i], 0.0, 1.0);
    }
    return x;
  };
  auto dual = [&](double theta) {
    const auto x = primal(theta);
    double g = -theta * r;
    for (std::size_t i = 0; i < v.size(); ++i) {
      g += 0.5 * (x[i] - v[i]) * (x[i] - v[i]) + theta * std::abs(x[i] - c[i]);
    }
    return g;
  };
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) hi = std::max(hi, std::abs(v[i] - c[i]));
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 300 && hi - lo > 1e-15; ++it) {
    const double a = hi - phi * (hi - lo);
    const double b = lo + phi * (hi - lo);
    if (dual(a) < dual(b)) {
      lo = a;
    } else {
      hi = b;
    }
  }
  return primal(0.5 * (lo + hi));
}

double half_sq_dist(const std::vector<double>& x, const std::vector<double>& v) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) f += 0.5 * (x[i] - v[i]) * (x[i] - v[i]);
  return f;
}

// C4: project_l1_ball against the dual oracle.
Check projection_oracle(const VerifyOptions& o) {
  constexpr std::size_t kInstances = 200;
  int hits = 0;
  double worst_gap = 0.0;
  for (std::size_t t = 0; t < kInstances; ++t) {
    Rng rng(derive_seed(o.seed, 4, t));
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 10.0);
    std::vector<double> v(d);
    std::vector<double> c(d);
    for (double& x : v) x = -0.5 + 2.0 * rng.uniform();
    for (double& x : c) x = rng.uniform();
    const double r = 2.0 * rng.uniform();
    const bool box = t % 2 == 0;
    const L1BallConstraint con{MeanVector(c), r, box};
    const std::vector<double> got = project_l1_ball(v, con);
    const std::vector<double> want = dual_oracle(v, c, r, box);
    const double gap = std::abs(half_sq_dist(got, v) - half_sq_dist(want, v));
    const bool feasible = l1_distance(got, c) <= r + 1e-9 &&
                          (!box || std::all_of(got.begin(), got.end(), [](double x) {
                             return x >= 0.0 && x <= 1.0;
                           }));
    worst_gap = std::max(worst_gap, gap);
    hits += feasible && gap <= 1e-6;
  }
  return {hits == static_cast<int>(kInstances),
          fmt("%d/200 instances within 1e-6 objective gap and feasible; worst "
              "gap %.3g",
              hits, worst_gap)};
}

// C5: constrained least squares error at d = 8, n = 5000.
Check lasso_error(const VerifyOptions& o) {
  constexpr std::size_t kTrials = 100;
  constexpr std::size_t kDim = 8;
  constexpr std::uint64_t kRows = 5000;
  constexpr double kDelta = 0.1;
  int hits = 0;
  int squared_hits = 0;
  double worst_ratio = 0.0;
  const double noise =
      std::sqrt(2.0 * std::log(2.0 * kDim / kDelta) / static_cast<double>(kRows));
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::uint64_t seed = derive_seed(o.seed, 5, t);
    Rng rng(derive_seed(seed, 0));
    const MeanVector p = uniform_mean(kDim, 0.25, 0.75, derive_seed(seed, 1));
    const double radius = 0.25 + 1.75 * rng.uniform();
    const MeanVector q = shifted(p, radius / double{kDim}, derive_seed(seed, 2));
    const SampleBatch batch = sample(p, kRows, derive_seed(seed, 3));
    const MeanVector est = constrained_least_squares(batch, q, radius);
    const double err = l2_distance(est.values(), p.values());
    const double bound = 4.0 * radius * noise;
    hits += err <= bound;
    squared_hits += err * err <= bound;
    worst_ratio = std::max(worst_ratio, err / bound);
  }
  return {hits >= 95,
          fmt("%d/100 trials with ||p_hat - p||_2 <= 4 r sqrt(2 ln(2d/delta)/n) "
              "(need 95); squared form %d/100; worst ratio %.3f",
              hits, squared_hits, worst_ratio)};
}

// C6: KL and TV sandwiches on balanced pairs at d = 12.
Check divergence_sandwich(const VerifyOptions& o) {
  constexpr std::size_t kPairs = 100;
  constexpr double kTau = 0.25;
  int kl_ok = 0;
  int tv_ok = 0;
  for (std::size_t t = 0; t < kPairs; ++t) {
    const MeanVector p = uniform_mean(12, kTau, 1.0 - kTau, derive_seed(o.seed, 6, t, 0));
    const MeanVector q = uniform_mean(12, kTau, 1.0 - kTau, derive_seed(o.seed, 6, t, 1));
    const double l2 = l2_distance(p.values(), q.values());
    const double kl = kl_product(p, q);
    kl_ok += 2.0 * l2 * l2 <= kl && kl <= 2.0 / kTau * l2 * l2;
    tv_ok += tv_exact(p, q) <= l2 / std::sqrt(kTau);
  }
  return {kl_ok == 100 && tv_ok == 100,
          fmt("KL sandwich %d/100, TV upper bound %d/100 (need all)", kl_ok, tv_ok)};
}

// C7: end-to-end at d = 16 with exact and corner advice.
Check end_to_end_small(const VerifyOptions& o) {
  constexpr std::size_t kTrials = 60;
  constexpr std::size_t kDim = 16;
  auto run = [&](bool corner, int& good, int& baseline, double& max_l2) {
    std::vector<ExperimentRecord> recs(kTrials);
    std::vector<double> l2s(kTrials);
    parallel_for(kTrials, o.workers, [&](std::size_t t) {
      const std::uint64_t seed = derive_seed(o.seed, 7, corner, t);
      const MeanVector p = uniform_mean(kDim, 0.25, 0.75, derive_seed(seed, 0));
      std::vector<double> q = p.vector();
      if (corner) {
        for (double& x : q) x = x < 0.5 ? 1.0 : 0.0;
      }
      PipelineConfig cfg;
      cfg.epsilon = 0.3;
      cfg.delta = 1.0 / 3.0;
      cfg.eta = 0.1;
      cfg.tau = 0.25;
      cfg.advice = MeanVector(std::move(q));
      l2s[t] = l2_distance(p.values(), cfg.advice.values());
      recs[t] = run_experiment(p, cfg, derive_seed(seed, 1));
    });
    good = 0;
    baseline = 0;
    max_l2 = 0.0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      good += *recs[t].realized_tv <= 0.3;
      baseline += recs[t].branch == Branch::kBaseline;
      max_l2 = std::max(max_l2, l2s[t]);
    }
  };
  int good_exact = 0;
  int base_exact = 0;
  int good_corner = 0;
  int base_corner = 0;
  double l2_exact = 0.0;
  double l2_corner = 0.0;
  run(false, good_exact, base_exact, l2_exact);
  run(true, good_corner, base_corner, l2_corner);
  return {good_exact >= 40 && good_corner >= 40,
          fmt("q = p: tv <= eps in %d/60 (baseline branch %d/60); corner advice "
              "(||p - q||_2 up to %.3g, zeta = 4.8): %d/60 (baseline branch "
              "%d/60); need 40 each",
              good_exact, base_exact, l2_corner, good_corner, base_corner)};
}

// C8: sample totals at d = 10^4 against the baseline budget.
Check sublinearity(const VerifyOptions& o) {
  constexpr std::size_t kDim = 10000;
  constexpr std::size_t kTrials = 5;
  const double distances[] = {0.0, 1.0, 5.0, 25.0};
  std::vector<ExperimentRecord> recs(4 * kTrials);
  parallel_for(recs.size(), o.workers, [&](std::size_t i) {
    const std::size_t di = i / kTrials;
    const std::uint64_t seed = derive_seed(o.seed, 8, di, i % kTrials);
    const MeanVector p = uniform_mean(kDim, 0.25, 0.75, derive_seed(seed, 0));
    PipelineConfig cfg;
    cfg.epsilon = 0.25;
    cfg.delta = 0.1;
    cfg.eta = 0.1;
    cfg.tau = 0.25;
    cfg.advice = shifted(p, distances[di] / double{kDim}, derive_seed(seed, 1));
    recs[i] = run_experiment(p, cfg, derive_seed(seed, 2));
  });
  const BudgetTable table = sample_budget_report(recs);
  int inversions = 0;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    inversions += table.rows[i].mean_total < table.rows[i - 1].mean_total;
  }
  const double ratio = table.rows.front().mean_total /
                       static_cast<double>(table.baseline_cost);
  std::string detail = fmt("baseline %llu; q = p total/baseline = %.4g (need "
                           "<= 0.5); inversions %d (allow 1); mean totals:",
                           static_cast<unsigned long long>(table.baseline_cost),
                           ratio, inversions);
  for (const BudgetRow& row : table.rows) {
    detail += fmt(" l1=%.3g: %.4g (stage1 %.4g, lasso %.0f%%)", row.l1,
                  row.mean_total, row.mean_stage1, 100.0 * row.lasso_fraction);
  }
  return {ratio <= 0.5 && inversions <= 1, detail};
}

// C9: closed forms of the adversarial families.
Check adversarial_exactness(const VerifyOptions& o) {
  constexpr double kTol = 1e-12;
  int checks = 0;
  int failures = 0;
  double worst = 0.0;
  auto expect_close = [&](double got, double want) {
    ++checks;
    const double err = std::abs(got - want);
    worst = std::max(worst, err);
    failures += err > kTol;
  };
  // Unbalanced family.
  for (std::size_t t = 0; t < 20; ++t) {
    const std::size_t d = 10 + 50 * t;
    const double eps = 0.05 + 0.9 * static_cast<double>(t) / 20.0;
    const SubsetCode code = gv_code(d, d / 5, d / 20, 4, derive_seed(o.seed, 9, t), 10000);
    for (const Subset& s : code.sets) {
      const InstancePair pair = unbalanced_instance(d, eps, s);
      expect_close(l1_distance(pair.p.values(), pair.q.values()),
                   static_cast<double>(s.size()) * eps / static_cast<double>(d));
    }
  }
  // Balanced family.
  const std::pair<double, double> params[] = {{0.01, 1.0}, {0.005, 0.6}, {0.02, 2.5}};
  int kl_failures = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto [eps, lambda] = params[j];
    const std::size_t k = balanced_subset_size(eps, lambda);
    const std::size_t d = 2 * k;
    const SubsetCode code =
        gv_code(d, k, k / 4, 6, derive_seed(o.seed, 9, 100 + j), 10000);
    std::vector<BalancedInstance> inst;
    for (const Subset& s : code.sets) {
      inst.push_back(balanced_instance(d, eps, lambda, s));
      expect_close(l1_distance(inst.back().p.values(), inst.back().q.values()), lambda);
    }
    const double shift = lambda / static_cast<double>(k);
    for (std::size_t a = 0; a < inst.size(); ++a) {
      for (std::size_t b = a + 1; b < inst.size(); ++b) {
        const double sym = static_cast<double>(
            symmetric_difference_size(code.sets[a], code.sets[b]));
        expect_close(l2_distance(inst[a].p.values(), inst[b].p.values()),
                     shift * std::sqrt(sym));
        ++checks;
        if (kl_product(inst[a].p, inst[b].p) > 8.0 * shift * shift * sym) ++kl_failures;
      }
    }
  }
  return {failures == 0 && kl_failures == 0,
          fmt("%d closed-form checks, %d over 1e-12 (worst %.3g); KL bound "
              "violations %d",
              checks, failures + kl_failures, worst, kl_failures)};
}

constexpr const char* kReproConfig = R"(schema_version: 1
seed: 7
trials: 3
sweep:
  dims: [8, 16]
  epsilons: [0.3]
  etas: [0.1]
  taus: [0.25]
  deltas: [0.2]
advice:
  - exact
  - model: sparse
    t: 2
    magnitude: 0.2
  - model: adversarial
    family: corner
)";

// C10: two learn runs with the same config and seed hash identically, even
// with different worker counts, and survive a CSV round trip.
Check reproducibility(const VerifyOptions& o) {
  const SweepSpec spec = parse_config(kReproConfig, "<repro>");
  const auto first = run_sweep(spec, 1);
  const auto second = run_sweep(spec, std::max(o.workers, 2));
  const std::uint64_t h1 = result_hash(first);
  const std::uint64_t h2 = result_hash(second);
  std::stringstream csv;
  write_csv(csv, first);
  const std::uint64_t h3 = result_hash(read_csv(csv));
  return {h1 == h2 && h1 == h3 && first.size() == spec.grid_size() * spec.trials,
          fmt("%zu rows; hashes %s / %s, after CSV round trip %s", first.size(),
              hash_hex(h1).c_str(), hash_hex(h2).c_str(), hash_hex(h3).c_str())};
}

struct CriterionDef {
  const char* name;
  double budget_seconds;
  Check (*run)(const VerifyOptions&);
};

const CriterionDef kCriteria[kCriterionCount] = {
    {"statistic-moments", 60, statistic_moments},
    {"tester-separation", 60, tester_separation},
    {"approxl1-sandwich", 300, approx_l1_sandwich},
    {"projection-oracle", 60, projection_oracle},
    {"lasso-error-bound", 60, lasso_error},
    {"divergence-sandwich", 60, divergence_sandwich},
    {"end-to-end-small", 600, end_to_end_small},
    {"sublinearity-trend", 1800, sublinearity},
    {"adversarial-exactness", 60, adversarial_exactness},
    {"reproducibility", 120, reproducibility},
};

const std::map<std::string, std::vector<int>>& suites() {
  static const std::map<std::string, std::vector<int>> table{
      {"metrics", {6, 9}},
      {"tester", {1, 2}},
      {"approxl1", {3}},
      {"lasso", {4, 5}},
      {"pipeline-small", {7, 10}},
      {"pipeline-large", {8}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
  };
  return table;
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  if (id < 1 || id > kCriterionCount) {
    throw std::invalid_argument("unknown criterion " + std::to_string(id));
  }
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = def.name;
  r.budget_seconds = def.budget_seconds;
  const auto start = std::chrono::steady_clock::now();
  Check check;
  try {
    check = def.run(options);
  } catch (const std::exception& e) {
    check = {false, std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                  .count();
  r.passed = check.passed && r.seconds < r.budget_seconds;
  r.detail = check.detail;
  if (check.passed && !r.passed) r.detail += "; over time budget";
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, ids] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) { return suites().count(name) > 0; }

std::vector<int> suite_criteria(const std::string& name) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second;
}

std::vector<CriterionResult> run_suite(const std::string& name,
                                       const VerifyOptions& options) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(name)) out.push_back(run_criterion(id, options));
  return out;
}

std::string summary_line(const CriterionResult& r) {
  return fmt("[%s] C%d %s: %s (%.1f s, budget %.0f s)", r.passed ? "PASS" : "FAIL",
             r.id, r.name.c_str(), r.detail.c_str(), r.seconds, r.budget_seconds);
}

std::string summary_json(const CriterionResult& r) {
  nlohmann::json j;
  j["schema_version"] = kResultSchemaVersion;
  j["criterion"] = r.id;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  j["seconds"] = r.seconds;
  j["budget_seconds"] = r.budget_seconds;
  return j.dump();
}

}  // namespace advlearn::bench
