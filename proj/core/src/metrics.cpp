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

#include "advlearn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "advlearn/numeric.hpp"

namespace advlearn {
namespace {

// Masses of all 2^n patterns of coordinates [begin, begin + n), built by
// doubling: pattern bit j corresponds to coordinate begin + j.
std::vector<double> pattern_masses(std::span<const double> mean,
                                   std::size_t begin, std::size_t n) {
  std::vector<double> mass(std::size_t{1} << n);
  mass[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double one = mean[begin + j];
    const std::size_t half = std::size_t{1} << j;
    for (std::size_t x = 0; x < half; ++x) {
      mass[x | half] = mass[x] * one;
      mass[x] *= 1.0 - one;
    }
  }
  return mass;
}

void require_balanced(const MeanVector& v, double tau, const char* name) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i] < tau || v[i] > 1.0 - tau) {
      throw std::invalid_argument(std::string("tv_bounds: ") + name + "[" +
                                  std::to_string(i) + "] = " +
                                  std::to_string(v[i]) + " is not " +
                                  std::to_string(tau) + "-balanced");
    }
  }
}

}  // namespace

double kl_bernoulli(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw std::invalid_argument("kl_bernoulli: arguments must lie in [0, 1]");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double kl = 0.0;
  if (a > 0.0) {
    if (b == 0.0) return kInf;
    kl += a * std::log(a / b);
  }
  if (a < 1.0) {
    if (b == 1.0) return kInf;
    kl += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
  }
  // Rounding can leave a tiny negative value for a == b.
  return std::max(kl, 0.0);
}

double kl_product(const MeanVector& p, const MeanVector& q) {
  require_same_dim(p.dim(), q.dim(), "kl_product");
  double total = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    total += kl_bernoulli(p[i], q[i]);
    if (std::isinf(total)) return total;
  }
  return total;
}

double tv_exact(const MeanVector& p, const MeanVector& q) {
  require_same_dim(p.dim(), q.dim(), "tv_exact");
  const std::size_t d = p.dim();
  if (d > kMaxExactTvDim) {
    throw std::invalid_argument(
        "tv_exact: d = " + std::to_string(d) + " exceeds the enumeration limit " +
        std::to_string(kMaxExactTvDim) + "; use tv_bounds instead");
  }
  const std::size_t low = std::min<std::size_t>(d, 12);
  const std::size_t high = d - low;
  const auto p_low = pattern_masses(p.values(), 0, low);
  const auto q_low = pattern_masses(q.values(), 0, low);
  const auto p_high = pattern_masses(p.values(), low, high);
  const auto q_high = pattern_masses(q.values(), low, high);

  CompensatedSum total;
  for (std::size_t h = 0; h < p_high.size(); ++h) {
    const double ph = p_high[h];
    const double qh = q_high[h];
    CompensatedSum row;
    for (std::size_t l = 0; l < p_low.size(); ++l) {
      row.add(std::abs(ph * p_low[l] - qh * q_low[l]));
    }
    total.add(row.value());
  }
  return 0.5 * total.value();
}

TvBounds tv_bounds(const MeanVector& p, const MeanVector& q, double tau,
                   double lower_constant) {
  require_same_dim(p.dim(), q.dim(), "tv_bounds");
  if (!(tau > 0.0 && tau <= 0.5)) {
    throw std::invalid_argument("tv_bounds: tau must lie in (0, 1/2]");
  }
  if (!(lower_constant > 0.0 && lower_constant <= 0.2)) {
    throw std::invalid_argument("tv_bounds: lower constant must lie in (0, 0.2]");
  }
  require_balanced(p, tau, "p");
  require_balanced(q, tau, "q");
  const double l2 = l2_distance(p.values(), q.values());
  return {lower_constant * std::min(1.0, l2),
          std::min(1.0, l2 / std::sqrt(tau))};
}

DivergenceReport divergence_report(const MeanVector& p, const MeanVector& q,
                                   double tau, double lower_constant) {
  DivergenceReport report;
  const TvBounds bounds = tv_bounds(p, q, tau, lower_constant);
  report.tv_lower = bounds.lower;
  report.tv_upper = bounds.upper;
  if (p.dim() <= kMaxExactTvDim) report.tv_exact = tv_exact(p, q);
  report.kl = kl_product(p, q);
  report.l1 = l1_distance(p.values(), q.values());
  report.l2 = l2_distance(p.values(), q.values());
  report.tau_used = tau;
  return report;
}

}  // namespace advlearn
