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

#include "advlearn/tester.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "advlearn/rng.hpp"

namespace advlearn {

void TesterConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("tester: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("tester: delta must lie in (0, 1)");
  }
  if (!(c > 0.0)) throw std::invalid_argument("tester: c must be > 0");
  if (!(threshold_factor > 2.0 && threshold_factor < 3.0)) {
    throw std::invalid_argument("tester: threshold_factor must lie in (2, 3)");
  }
}

double TesterConfig::rate(std::size_t d) const {
  return c * std::sqrt(static_cast<double>(d)) / (epsilon * epsilon);
}

double TesterConfig::threshold(std::size_t d) const {
  return threshold_factor * c * c * static_cast<double>(d) /
         (epsilon * epsilon);
}

std::uint64_t TesterConfig::cap(std::size_t d) const {
  return poisson_cap(rate(d));
}

const char* to_string(Verdict v) {
  return v == Verdict::kAccept ? "accept" : "reject";
}

double z_statistic(std::span<const std::uint64_t> counts, double rate,
                   std::span<const double> q) {
  require_same_dim(counts.size(), q.size(), "z_statistic");
  double z = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double x = static_cast<double>(counts[i]);
    const double diff = x - rate * q[i];
    z += diff * diff - x;
  }
  return z;
}

double z_statistic(const PoissonCounts& counts, const MeanVector& q) {
  return z_statistic(counts.counts, counts.rate, q.values());
}

int tester_repetitions(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("tester: delta must lie in (0, 1)");
  }
  return 1 + static_cast<int>(std::ceil(std::log(12.0 / delta)));
}

TesterVerdict tmt_single(SampleSource& source, const MeanVector& q,
                         const TesterConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  require_same_dim(source.dim(), q.dim(), "tmt_single");
  const std::size_t d = q.dim();
  const double rate = cfg.rate(d);
  if (rate < 1.0) {
    throw std::invalid_argument("tmt_single: c * sqrt(d) / epsilon^2 < 1");
  }
  const std::uint64_t cap = cfg.cap(d);

  TesterVerdict out;
  const std::uint64_t before = source.samples_drawn();
  for (int attempt = 0; attempt < 2; ++attempt) {
    const PoissonDraw draw =
        poissonized_counts(source, rate, cap, derive_seed(seed, attempt));
    if (const auto* counts = std::get_if<PoissonCounts>(&draw)) {
      out.statistic = z_statistic(*counts, q);
      out.verdict = out.statistic <= cfg.threshold(d) ? Verdict::kAccept
                                                      : Verdict::kReject;
      out.accepts = out.verdict == Verdict::kAccept ? 1 : 0;
      out.samples_used = source.samples_drawn() - before;
      return out;
    }
  }
  out.verdict = Verdict::kReject;
  out.statistic = std::numeric_limits<double>::infinity();
  out.samples_used = source.samples_drawn() - before;
  return out;
}

TesterVerdict tmt(SampleSource& source, const MeanVector& q,
                  const TesterConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const int reps = tester_repetitions(cfg.delta);
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(reps));
  TesterVerdict out;
  out.repetitions = reps;
  for (int r = 0; r < reps; ++r) {
    const TesterVerdict single =
        tmt_single(source, q, cfg, derive_seed(seed, r));
    out.accepts += single.accepts;
    out.samples_used += single.samples_used;
    stats.push_back(single.statistic);
  }
  std::nth_element(stats.begin(), stats.begin() + reps / 2, stats.end());
  out.statistic = stats[static_cast<std::size_t>(reps / 2)];
  out.verdict = 2 * out.accepts > reps ? Verdict::kAccept : Verdict::kReject;
  return out;
}

}  // namespace advlearn
