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
#include <vector>

#include "advlearn/mean_vector.hpp"
#include "advlearn/sampling.hpp"

namespace advlearn {

// The feasible set {b : ||b - center||_1 <= radius}, optionally intersected
// with the box [0, 1]^d.
struct L1BallConstraint {
  MeanVector center;
  double radius = 0.0;
  bool box_clamp = true;
};

// Euclidean projection onto the constraint set.
//
// Both variants reduce to one scalar threshold theta: coordinate i becomes
// center_i + sign(w_i) * min(max(|w_i| - theta, 0), u_i), with w = v - center
// and u_i the room to the box edge (infinite without box_clamp). The
// threshold solves a piecewise-linear equation found by sorting its
// breakpoints, so the result is exact up to rounding.
std::vector<double> project_l1_ball(std::span<const double> v,
                                    const L1BallConstraint& constraint);

inline constexpr double kLassoSampleConstant = 32.0;

// argmin over ||b - q||_1 <= r of (1/n) sum_i ||y_i - b||^2, which equals the
// projection of the empirical mean onto the ball. Throws on an empty batch.
MeanVector constrained_least_squares(const SampleBatch& batch,
                                     const MeanVector& q, double radius,
                                     bool box_clamp = true);

// Same estimator from column sums of n rows.
MeanVector constrained_least_squares(std::span<const std::uint64_t> column_counts,
                                     std::uint64_t n, const MeanVector& q,
                                     double radius, bool box_clamp = true);

// Projected gradient on the least-squares loss with step 1/4, starting at
// the center. Used as an independent check of the closed-form reduction.
std::vector<double> projected_gradient_least_squares(
    std::span<const double> empirical_mean, const L1BallConstraint& constraint,
    int iterations);

// ceil(constant * r^2 / epsilon^4 * ln(2d / delta)); zero when r == 0.
std::uint64_t lasso_sample_size(double radius, double epsilon, double delta,
                                std::size_t d,
                                double constant = kLassoSampleConstant);

}  // namespace advlearn
