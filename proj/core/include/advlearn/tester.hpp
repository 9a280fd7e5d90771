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
#include <span>

#include "advlearn/mean_vector.hpp"
#include "advlearn/sampling.hpp"

namespace advlearn {

// Statistic scale constant c. Chosen by `advlearn calibrate-tester`; see
// README for the calibration table that produced it.
inline constexpr double kDefaultTesterC = 0.42044820762685725;  // 2^{-5/4}
inline constexpr double kDefaultThresholdFactor = 2.5;

// Tolerant l2 mean tester parameters. The Poisson rate on a d-dimensional
// input is m = c * sqrt(d) / epsilon^2 and the test accepts when
// Z <= threshold_factor * c^2 * d / epsilon^2.
struct TesterConfig {
  double epsilon = 0.0;
  double delta = 0.1;
  double c = kDefaultTesterC;
  double threshold_factor = kDefaultThresholdFactor;

  // Throws std::invalid_argument on epsilon <= 0, delta outside (0, 1),
  // c <= 0 or threshold_factor outside (2, 3).
  void validate() const;

  double rate(std::size_t d) const;
  double threshold(std::size_t d) const;
  std::uint64_t cap(std::size_t d) const;
};

enum class Verdict { kAccept, kReject };

const char* to_string(Verdict v);

struct TesterVerdict {
  Verdict verdict = Verdict::kReject;
  // Single shot: Z. Majority vote: median of the repetition statistics.
  double statistic = 0.0;
  std::uint64_t samples_used = 0;
  int repetitions = 1;
  int accepts = 0;
};

// Z = sum_i (X_i - m q_i)^2 - X_i. Unbiased for m^2 ||p - q||_2^2.
double z_statistic(std::span<const std::uint64_t> counts, double rate,
                   std::span<const double> q);
double z_statistic(const PoissonCounts& counts, const MeanVector& q);

// Number of majority-vote repetitions for failure probability delta:
// 1 + ceil(ln(12 / delta)).
int tester_repetitions(double delta);

// One Poissonized test. A CapExceeded draw is retried once with fresh
// budgets; a second CapExceeded yields Reject.
TesterVerdict tmt_single(SampleSource& source, const MeanVector& q,
                         const TesterConfig& cfg, std::uint64_t seed);

// Majority vote over tester_repetitions(cfg.delta) independent single tests.
// Accepts when strictly more than half of the repetitions accept.
TesterVerdict tmt(SampleSource& source, const MeanVector& q,
                  const TesterConfig& cfg, std::uint64_t seed);

}  // namespace advlearn
