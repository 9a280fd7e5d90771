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
#include <cstdint>
#include <set>
#include <vector>

#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

TEST(SplitMix64, MatchesReferenceStream) {
  // Reference stream of the published splitmix64 generator from state 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(kGolden), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(splitmix64(2 * kGolden), 0x06c45d188009454fULL);
  EXPECT_EQ(splitmix64(1234567), 0x599ed017fb08fc85ULL);
  EXPECT_EQ(splitmix64(1234567 + kGolden), 0x2c73f08458540fa5ULL);
}

TEST(Xoshiro256StarStar, MatchesReferenceOutputs) {
  Rng a(42);
  EXPECT_EQ(a(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(a(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(a(), 0xae17533239e499a1ULL);
  EXPECT_EQ(a(), 0xecb8ad4703b360a1ULL);
  Rng b(0);
  EXPECT_EQ(b(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(b(), 0xbf6e1f784956452aULL);
}

TEST(DeriveSeed, MatchesReferenceValues) {
  EXPECT_EQ(derive_seed(1, 2), 0x56333555ed6ecad0ULL);
  EXPECT_EQ(derive_seed(derive_seed(7, 0), 5), 0x03703c5d2b7c13e5ULL);
}

TEST(DeriveSeed, VariadicFormChains) {
  EXPECT_EQ(derive_seed(7, 0, 5), derive_seed(derive_seed(7, 0), 5));
  EXPECT_EQ(derive_seed(9, 1, 2, 3), derive_seed(derive_seed(derive_seed(9, 1), 2), 3));
}

TEST(DeriveSeed, IsNotSymmetricAndSeparatesSiblings) {
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t parent = 0; parent < 32; ++parent) {
    for (std::uint64_t tag = 0; tag < 32; ++tag) seen.insert(derive_seed(parent, tag));
  }
  EXPECT_EQ(seen.size(), 32U * 32U);
}

TEST(Rng, UniformLiesInHalfOpenUnitInterval) {
  Rng rng(5);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <typename Draw>
Moments moments(int n, Draw draw) {
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(draw());
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  return {mean, s2 / n - mean * mean};
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVarianceMatchRate) {
  const double rate = GetParam();
  Rng rng(derive_seed(11, static_cast<std::uint64_t>(rate * 1000)));
  const int n = 100000;
  const Moments m = moments(n, [&] { return sample_poisson(rng, rate); });
  // Mean within 5 standard errors; variance within 5 standard errors of the
  // sample variance (fourth central moment rate + 3 rate^2).
  EXPECT_NEAR(m.mean, rate, 5.0 * std::sqrt(rate / n));
  EXPECT_NEAR(m.var, rate, 5.0 * std::sqrt((rate + 2.0 * rate * rate) / n));
}

// Both sides of the inversion limit.
INSTANTIATE_TEST_SUITE_P(Rates, PoissonMoments,
                         ::testing::Values(0.05, 1.0, 7.5, 29.9, 30.0, 250.0, 4000.0));

TEST(Poisson, EdgeCases) {
  Rng rng(1);
  EXPECT_EQ(sample_poisson(rng, 0.0), 0U);
  EXPECT_THROW(sample_poisson(rng, -1.0), std::invalid_argument);
  EXPECT_THROW(sample_poisson(rng, std::nan("")), std::invalid_argument);
  EXPECT_THROW(sample_poisson(rng, INFINITY), std::invalid_argument);
}

TEST(Poisson, SmallRateZeroFrequency) {
  Rng rng(3);
  const double rate = 0.7;
  const int n = 100000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += sample_poisson(rng, rate) == 0 ? 1 : 0;
  const double p0 = std::exp(-rate);
  EXPECT_NEAR(static_cast<double>(zeros) / n, p0, 5.0 * std::sqrt(p0 * (1 - p0) / n));
}

TEST(Binomial, MomentsMatch) {
  Rng rng(17);
  const std::uint64_t trials = 1000;
  const double prob = 0.3;
  const int n = 50000;
  const Moments m = moments(n, [&] { return sample_binomial(rng, trials, prob); });
  const double mean = trials * prob;
  const double var = mean * (1 - prob);
  EXPECT_NEAR(m.mean, mean, 5.0 * std::sqrt(var / n));
  EXPECT_NEAR(m.var, var, 0.05 * var);
}

TEST(Binomial, EdgeCases) {
  Rng rng(2);
  EXPECT_EQ(sample_binomial(rng, 0, 0.5), 0U);
  EXPECT_EQ(sample_binomial(rng, 50, 0.0), 0U);
  EXPECT_EQ(sample_binomial(rng, 50, 1.0), 50U);
  EXPECT_EQ(sample_binomial(rng, 50, -0.2), 0U);
  EXPECT_EQ(sample_binomial(rng, 50, 1.7), 50U);
  for (int i = 0; i < 1000; ++i) EXPECT_LE(sample_binomial(rng, 7, 0.5), 7U);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}

}  // namespace
}  // namespace advlearn
