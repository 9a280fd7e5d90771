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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "advlearn/metrics.hpp"
#include "advlearn/rng.hpp"
#include "oracles.hpp"

namespace advlearn {
namespace {

TEST(KlBernoulli, FrozenValues) {
  EXPECT_NEAR(kl_bernoulli(0.3, 0.5), 0.082282878505051856, 1e-15);
  EXPECT_NEAR(kl_bernoulli(0.0, 0.25), 0.28768207245178093, 1e-15);
  EXPECT_NEAR(kl_bernoulli(1.0, 0.9), 0.10536051565782628, 1e-15);
  EXPECT_NEAR(kl_bernoulli(0.9, 0.1), 1.7577796618689756, 1e-14);
  EXPECT_EQ(kl_bernoulli(0.4, 0.4), 0.0);
  EXPECT_EQ(kl_bernoulli(0.5, 0.0), std::numeric_limits<double>::infinity());
  EXPECT_EQ(kl_bernoulli(0.0, 0.0), 0.0);
  EXPECT_THROW(kl_bernoulli(1.2, 0.5), std::invalid_argument);
}

TEST(KlProduct, SumsCoordinates) {
  const MeanVector p{0.3, 0.9};
  const MeanVector q{0.5, 0.1};
  EXPECT_NEAR(kl_product(p, q), 0.082282878505051856 + 1.7577796618689756, 1e-14);
}

TEST(TvExact, FrozenValues) {
  EXPECT_NEAR(tv_exact(MeanVector{0.3, 0.6, 0.9}, MeanVector{0.5, 0.5, 0.5}), 0.417, 1e-15);
  EXPECT_NEAR(tv_exact(MeanVector{0.2, 0.2}, MeanVector{0.4, 0.1}), 0.2, 1e-15);
  EXPECT_NEAR(tv_exact(MeanVector{0.7}, MeanVector{0.2}), 0.5, 1e-15);
  EXPECT_EQ(tv_exact(MeanVector{0.7, 0.1}, MeanVector{0.7, 0.1}), 0.0);
}

TEST(TvExact, MatchesBruteForceOracle) {
  Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng() % 12;
    std::vector<double> p(d);
    std::vector<double> q(d);
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = rng.uniform();
      q[i] = rng.uniform();
    }
    ASSERT_NEAR(tv_exact(MeanVector(p), MeanVector(q)), testing::naive_tv(p, q), 1e-12);
  }
}

TEST(TvExact, DimensionLimit) {
  const MeanVector big = MeanVector::constant(kMaxExactTvDim + 1, 0.5);
  EXPECT_THROW(tv_exact(big, big), std::invalid_argument);
  EXPECT_THROW(tv_exact(MeanVector{0.5}, MeanVector{0.5, 0.5}), std::invalid_argument);
}

TEST(TvBounds, SandwichOnBalancedPairs) {
  Rng rng(15);
  const double tau = 0.2;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng() % 10;
    std::vector<double> p(d);
    std::vector<double> q(d);
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = tau + (1 - 2 * tau) * rng.uniform();
      q[i] = tau + (1 - 2 * tau) * rng.uniform();
    }
    const TvBounds b = tv_bounds(MeanVector(p), MeanVector(q), tau);
    const double tv = testing::naive_tv(p, q);
    ASSERT_LE(b.lower, tv + 1e-12);
    ASSERT_GE(b.upper, tv - 1e-12);
    ASSERT_LE(b.upper, 1.0);
  }
}

TEST(TvBounds, Errors) {
  const MeanVector p{0.5, 0.5};
  EXPECT_THROW(tv_bounds(p, p, 0.0), std::invalid_argument);
  EXPECT_THROW(tv_bounds(p, p, 0.6), std::invalid_argument);
  EXPECT_THROW(tv_bounds(MeanVector{0.05, 0.5}, p, 0.1), std::invalid_argument);
  EXPECT_THROW(tv_bounds(p, p, 0.25, 0.5), std::invalid_argument);
}

TEST(DivergenceReport, FieldsAgree) {
  const MeanVector p{0.3, 0.6, 0.7};
  const MeanVector q{0.5, 0.5, 0.5};
  const DivergenceReport r = divergence_report(p, q, 0.3);
  ASSERT_TRUE(r.tv_exact.has_value());
  EXPECT_NEAR(*r.tv_exact, tv_exact(p, q), 1e-15);
  EXPECT_NEAR(r.l1, 0.5, 1e-15);
  EXPECT_NEAR(r.l2, std::sqrt(0.04 + 0.01 + 0.04), 1e-15);
  EXPECT_NEAR(r.kl, kl_product(p, q), 1e-15);
  EXPECT_EQ(r.tau_used, 0.3);
  EXPECT_LE(r.tv_lower, *r.tv_exact);
  EXPECT_GE(r.tv_upper, *r.tv_exact);
  const MeanVector big = MeanVector::constant(30, 0.5);
  EXPECT_FALSE(divergence_report(big, big, 0.25).tv_exact.has_value());
}

}  // namespace
}  // namespace advlearn
