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

#include "advlearn/lasso.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "advlearn/numeric.hpp"

namespace advlearn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Shifted {
  std::vector<double> magnitude;  // |v_i - center_i|
  std::vector<double> room;       // distance to the box edge along sign(w_i)
  std::vector<double> sign;
};

Shifted shift(std::span<const double> v, const L1BallConstraint& constraint) {
  const auto center = constraint.center.values();
  Shifted s;
  s.magnitude.resize(v.size());
  s.room.resize(v.size());
  s.sign.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = v[i] - center[i];
    s.magnitude[i] = std::abs(w);
    s.sign[i] = w < 0.0 ? -1.0 : 1.0;
    s.room[i] = !constraint.box_clamp ? kInf
                : w < 0.0             ? center[i]
                                      : 1.0 - center[i];
  }
  return s;
}

// l1 length of the thresholded shift at theta.
double shrunk_length(const Shifted& s, double theta) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.magnitude.size(); ++i) {
    total += std::min(std::max(s.magnitude[i] - theta, 0.0), s.room[i]);
  }
  return total;
}

std::vector<double> apply_threshold(const Shifted& s,
                                    std::span<const double> center,
                                    double theta) {
  std::vector<double> out(center.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double step =
        std::min(std::max(s.magnitude[i] - theta, 0.0), s.room[i]);
    out[i] = center[i] + s.sign[i] * step;
  }
  return out;
}

}  // namespace

std::vector<double> project_l1_ball(std::span<const double> v,
                                    const L1BallConstraint& constraint) {
  const auto center = constraint.center.values();
  require_same_dim(v.size(), center.size(), "project_l1_ball");
  if (!(constraint.radius >= 0.0)) {
    throw std::invalid_argument("project_l1_ball: radius must be >= 0");
  }
  if (constraint.radius == 0.0) {
    return std::vector<double>(center.begin(), center.end());
  }

  const Shifted s = shift(v, constraint);
  if (shrunk_length(s, 0.0) <= constraint.radius) {
    return apply_threshold(s, center, 0.0);
  }

  // Breakpoints of the piecewise-linear length function: where a coordinate
  // leaves the box edge and where it reaches zero.
  std::vector<double> breaks{0.0};
  breaks.reserve(2 * v.size() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    breaks.push_back(s.magnitude[i]);
    const double leave = s.magnitude[i] - s.room[i];
    if (leave > 0.0) breaks.push_back(leave);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Smallest breakpoint whose length is within the radius. breaks[0] = 0 is
  // infeasible and the largest magnitude gives length 0, so hi >= 1.
  std::size_t lo = 0;
  std::size_t hi = breaks.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (shrunk_length(s, breaks[mid]) <= constraint.radius) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double a = breaks[lo];
  const double b = breaks[hi];
  const double ga = shrunk_length(s, a);
  const double gb = shrunk_length(s, b);
  double theta = b;
  if (ga > gb) theta = a + (ga - constraint.radius) * (b - a) / (ga - gb);
  theta = std::clamp(theta, a, b);
  return apply_threshold(s, center, theta);
}

std::vector<double> projected_gradient_least_squares(
    std::span<const double> empirical_mean, const L1BallConstraint& constraint,
    int iterations) {
  require_same_dim(empirical_mean.size(), constraint.center.dim(),
                   "projected_gradient_least_squares");
  const auto center = constraint.center.values();
  std::vector<double> b(center.begin(), center.end());
  std::vector<double> step(b.size());
  for (int it = 0; it < iterations; ++it) {
    // Gradient of ||b - ybar||^2 is 2 (b - ybar); step size 1/4.
    for (std::size_t i = 0; i < b.size(); ++i) {
      step[i] = b[i] - 0.5 * (b[i] - empirical_mean[i]);
    }
    b = project_l1_ball(step, constraint);
  }
  return b;
}

MeanVector constrained_least_squares(std::span<const std::uint64_t> column_counts,
                                     std::uint64_t n, const MeanVector& q,
                                     double radius, bool box_clamp) {
  require_same_dim(column_counts.size(), q.dim(), "constrained_least_squares");
  if (!(radius >= 0.0)) {
    throw std::invalid_argument("constrained_least_squares: radius must be >= 0");
  }
  const MeanVector ybar = empirical_mean(column_counts, n);
  const L1BallConstraint constraint{q, radius, box_clamp};
  std::vector<double> estimate = project_l1_ball(ybar.values(), constraint);
#ifndef NDEBUG
  {
    const auto check =
        projected_gradient_least_squares(ybar.values(), constraint, 500);
    assert(l2_distance(check, estimate) <= 1e-6);
  }
#endif
  // The projection lies between q and ybar coordinate-wise; clamp rounding.
  for (double& x : estimate) x = std::clamp(x, 0.0, 1.0);
  return MeanVector(std::move(estimate));
}

MeanVector constrained_least_squares(const SampleBatch& batch,
                                     const MeanVector& q, double radius,
                                     bool box_clamp) {
  if (batch.rows() == 0) throw std::invalid_argument("empty batch");
  std::vector<std::uint64_t> counts(batch.dim());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts[i] = batch.count_ones(i, 0, batch.rows());
  }
  return constrained_least_squares(counts, batch.rows(), q, radius, box_clamp);
}

std::uint64_t lasso_sample_size(double radius, double epsilon, double delta,
                                std::size_t d, double constant) {
  if (!(radius >= 0.0) || !(epsilon > 0.0) || !(delta > 0.0) || d == 0 ||
      !(constant > 0.0)) {
    throw std::invalid_argument("lasso_sample_size: arguments must be positive");
  }
  if (radius == 0.0) return 0;
  const double eps2 = epsilon * epsilon;
  const double n = constant * radius * radius / (eps2 * eps2) *
                   std::log(2.0 * static_cast<double>(d) / delta);
  return ceil_count(n);
}

}  // namespace advlearn
