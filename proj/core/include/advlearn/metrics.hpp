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
#include <optional>
#include <utility>

#include "advlearn/mean_vector.hpp"

namespace advlearn {

// Largest dimension tv_exact will enumerate (2^d mass points).
inline constexpr std::size_t kMaxExactTvDim = 24;
// Lower-bound constant in c * min(1, ||p - q||_2) <= TV; a heuristic value.
inline constexpr double kDefaultTvLowerConstant = 0.1;

// KL(Ber(a) || Ber(b)) in nats with 0 ln 0 = 0. Returns +infinity when a puts
// mass where b has none.
double kl_bernoulli(double a, double b);

// KL(Ber(p) || Ber(q)) = sum_i kl_bernoulli(p_i, q_i).
double kl_product(const MeanVector& p, const MeanVector& q);

// Exact total variation between Ber(p) and Ber(q) by summing over all 2^d
// points. Throws std::invalid_argument for d > kMaxExactTvDim.
double tv_exact(const MeanVector& p, const MeanVector& q);

struct TvBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// (c0 * min(1, l2), min(1, l2 / sqrt(tau))) for tau-balanced p and q.
// Throws when tau is outside (0, 1/2] or a coordinate is unbalanced.
TvBounds tv_bounds(const MeanVector& p, const MeanVector& q, double tau,
                   double lower_constant = kDefaultTvLowerConstant);

struct DivergenceReport {
  std::optional<double> tv_exact;
  double tv_lower = 0.0;
  double tv_upper = 0.0;
  double kl = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double tau_used = 0.0;
};

DivergenceReport divergence_report(const MeanVector& p, const MeanVector& q,
                                   double tau,
                                   double lower_constant = kDefaultTvLowerConstant);

}  // namespace advlearn
