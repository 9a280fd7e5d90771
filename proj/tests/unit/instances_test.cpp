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

#include "advlearn/instances.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

std::size_t naive_symdiff(const Subset& a, const Subset& b) {
  std::set<std::uint32_t> x(a.begin(), a.end());
  std::size_t n = 0;
  for (std::uint32_t v : b) n += x.erase(v) ? 0 : 1;
  return n + x.size();
}

TEST(SymmetricDifference, MatchesSetOracle) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng() % 40;
    const Subset a = random_subset(d, rng() % (d + 1), rng());
    const Subset b = random_subset(d, rng() % (d + 1), rng());
    ASSERT_EQ(symmetric_difference_size(a, b), naive_symdiff(a, b));
  }
}

TEST(RandomSubset, SortedDistinctInRange) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Subset s = random_subset(30, 11, seed);
    ASSERT_EQ(s.size(), 11U);
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_LT(s[i], 30U);
      if (i > 0) ASSERT_LT(s[i - 1], s[i]);
    }
  }
  EXPECT_EQ(random_subset(5, 5, 1), (Subset{0, 1, 2, 3, 4}));
  EXPECT_THROW(random_subset(3, 4, 1), std::invalid_argument);
}

TEST(RandomSubset, MembershipIsUniform) {
  const std::size_t d = 10;
  const std::size_t k = 3;
  std::vector<int> hits(d, 0);
  const int reps = 20000;
  for (int r = 0; r < reps; ++r) {
    for (std::uint32_t i : random_subset(d, k, derive_seed(2, r))) ++hits[i];
  }
  const double p = static_cast<double>(k) / d;
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / reps, p, 5 * std::sqrt(p * (1 - p) / reps));
}

TEST(GvCode, BuildsValidCode) {
  const SubsetCode code = gv_code(40, 20, 5, 16, 3, 10000);
  EXPECT_EQ(code.sets.size(), 16U);
  EXPECT_TRUE(is_valid_code(code));
  EXPECT_EQ(gv_code(40, 20, 5, 16, 3, 10000).sets, code.sets);
}

TEST(GvCode, ImpossibleDistanceThrows) {
  try {
    (void)gv_code(40, 5, 11, 2, 1, 100);
    FAIL() << "expected CodeBudgetExhausted";
  } catch (const CodeBudgetExhausted& e) {
    EXPECT_EQ(e.achieved(), 1U);
  }
  EXPECT_EQ(gv_code(40, 5, 11, 1, 1, 100).sets.size(), 1U);
}

TEST(GvCode, ReportsProgressWhenBudgetRunsOut) {
  // Only C(6,3)/... few 3-subsets of [6] can be pairwise 6 apart: complements.
  try {
    (void)gv_code(6, 3, 6, 3, 4, 200);
    FAIL() << "expected CodeBudgetExhausted";
  } catch (const CodeBudgetExhausted& e) {
    EXPECT_EQ(e.achieved(), 2U);
  }
}

TEST(GvCode, ArgumentErrors) {
  EXPECT_THROW(gv_code(4, 5, 1, 2, 1, 10), std::invalid_argument);
  EXPECT_THROW(gv_code(4, 2, 1, 0, 1, 10), std::invalid_argument);
}

TEST(IsValidCode, DetectsViolations) {
  SubsetCode code{10, 2, 4, {{0, 1}, {2, 3}}};
  EXPECT_TRUE(is_valid_code(code));
  code.sets.push_back({1, 2});
  EXPECT_FALSE(is_valid_code(code));
  SubsetCode ragged{10, 2, 0, {{0, 1}, {2}}};
  EXPECT_FALSE(is_valid_code(ragged));
}

TEST(UnbalancedInstance, L1DistanceIsEpsilonTimesFraction) {
  const InstancePair pair = unbalanced_instance(20, 0.5, Subset{1, 4, 9, 17});
  EXPECT_NEAR(l1_distance(pair.p.values(), pair.q.values()), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(pair.q[0], 0.025);
  EXPECT_DOUBLE_EQ(pair.p[4], 0.05);
  EXPECT_DOUBLE_EQ(pair.p[5], 0.025);
}

TEST(UnbalancedInstance, Errors) {
  EXPECT_THROW(unbalanced_instance(9, 0.5, Subset{}), std::invalid_argument);
  EXPECT_THROW(unbalanced_instance(20, 0.0, Subset{}), std::invalid_argument);
  EXPECT_THROW(unbalanced_instance(20, 0.5, Subset{20}), std::invalid_argument);
  EXPECT_THROW(unbalanced_instance(20, 0.5, Subset{3, 3}), std::invalid_argument);
}

TEST(BalancedSubsetSize, Values) {
  EXPECT_EQ(balanced_subset_size(0.01, 1.0), 10000U);
  EXPECT_EQ(balanced_subset_size(0.005, 0.6), 14400U);
  EXPECT_EQ(balanced_subset_size(0.02, 2.5), 15625U);
  EXPECT_EQ(balanced_subset_size(0.3, 1.0), 12U);
}

TEST(BalancedInstance, ShapeAndDistance) {
  const double eps = 0.01;
  const double lambda = 1.0;
  const std::size_t k = balanced_subset_size(eps, lambda);
  const Subset s = random_subset(2 * k, k, 5);
  const BalancedInstance inst = balanced_instance(2 * k, eps, lambda, s);
  EXPECT_EQ(inst.k, k);
  EXPECT_TRUE(inst.p.is_balanced(0.25));
  EXPECT_TRUE(inst.q.is_balanced(0.25));
  EXPECT_NEAR(l1_distance(inst.p.values(), inst.q.values()), lambda, 1e-12);
  EXPECT_NEAR(l2_distance(inst.p.values(), inst.q.values()), eps, 1e-12);
}

TEST(BalancedInstance, Errors) {
  const Subset s = random_subset(20000, 10000, 1);
  EXPECT_THROW(balanced_instance(20000, 0.01, 0.5, s), std::invalid_argument);
  EXPECT_THROW(balanced_instance(20000, 0.01, 1.0, Subset{1, 2}), std::invalid_argument);
  EXPECT_THROW(balanced_instance(20000, 0.0, 1.0, s), std::invalid_argument);
}

}  // namespace
}  // namespace advlearn
