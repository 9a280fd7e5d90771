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

// Reference computations used only by tests. None of these call into the
// library routine they are compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace advlearn::testing {

// Brute force TV: one product per point of {0,1}^d.
inline double naive_tv(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t d = p.size();
  double total = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x) {
    double a = 1.0;
    double b = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      const bool one = (x >> i) & 1U;
      a *= one ? p[i] : 1.0 - p[i];
      b *= one ? q[i] : 1.0 - q[i];
    }
    total += std::abs(a - b);
  }
  return 0.5 * total;
}

inline double half_sq_dist(const std::vector<double>& x, const std::vector<double>& v) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) f += 0.5 * (x[i] - v[i]) * (x[i] - v[i]);
  return f;
}

inline double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

// Projection onto {||x - c||_1 <= r} (intersected with [0,1]^d when `box`)
// through the one-dimensional concave dual, maximized by golden section.
inline std::vector<double> dual_projection(const std::vector<double>& v,
                                           const std::vector<double>& c, double r,
                                           bool box) {
  auto primal = [&](double theta) {
    std::vector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double w = v[i] - c[i];
      x[i] = c[i] + std::copysign(std::max(std::abs(w) - theta, 0.0), w);
      if (box) x[i] = std::clamp(x[i], 0.0, 1.0);
    }
    return x;
  };
  auto dual = [&](double theta) {
    const auto x = primal(theta);
    return half_sq_dist(x, v) + theta * (l1(x, c) - r);
  };
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) hi = std::max(hi, std::abs(v[i] - c[i]));
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 400 && hi - lo > 1e-16; ++it) {
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

// Dykstra alternating projections between the box and the l1 ball, with the
// ball projection done by sorting magnitudes.
inline std::vector<double> sort_l1_projection(const std::vector<double>& v,
                                              const std::vector<double>& c, double r) {
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] - c[i];
  if (l1(v, c) <= r) return v;
  std::vector<double> mags(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) mags[i] = std::abs(w[i]);
  std::sort(mags.rbegin(), mags.rend());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cumulative += mags[j];
    const double t = (cumulative - r) / static_cast<double>(j + 1);
    if (mags[j] - t > 0.0) theta = t;
  }
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = c[i] + std::copysign(std::max(std::abs(w[i]) - theta, 0.0), w[i]);
  }
  return x;
}

inline std::vector<double> dykstra_projection(const std::vector<double>& v,
                                              const std::vector<double>& c, double r,
                                              int iterations) {
  const std::size_t d = v.size();
  std::vector<double> x = v;
  std::vector<double> p(d, 0.0);
  std::vector<double> q(d, 0.0);
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = std::clamp(x[i] + p[i], 0.0, 1.0);
    for (std::size_t i = 0; i < d; ++i) p[i] = x[i] + p[i] - y[i];
    std::vector<double> shifted(d);
    for (std::size_t i = 0; i < d; ++i) shifted[i] = y[i] + q[i];
    const auto z = sort_l1_projection(shifted, c, r);
    for (std::size_t i = 0; i < d; ++i) q[i] = y[i] + q[i] - z[i];
    x = z;
  }
  return x;
}

}  // namespace advlearn::testing
