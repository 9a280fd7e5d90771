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
#include <stdexcept>
#include <vector>

#include "advlearn/mean_vector.hpp"

namespace advlearn {

using Subset = std::vector<std::uint32_t>;  // sorted, distinct indices in [0, d)

// Equal-size subsets of [d] with pairwise symmetric difference at least
// min_symdiff.
struct SubsetCode {
  std::size_t dim = 0;
  std::size_t subset_size = 0;
  std::size_t min_symdiff = 0;
  std::vector<Subset> sets;
};

// Thrown when gv_code runs out of attempts; achieved() is how many sets were
// accepted before giving up.
class CodeBudgetExhausted : public std::runtime_error {
 public:
  CodeBudgetExhausted(std::size_t achieved, std::size_t requested);
  std::size_t achieved() const { return achieved_; }

 private:
  std::size_t achieved_;
};

std::size_t symmetric_difference_size(std::span<const std::uint32_t> a,
                                      std::span<const std::uint32_t> b);

// Uniformly random k-subset of [d].
Subset random_subset(std::size_t d, std::size_t k, std::uint64_t seed);

// Rejection sampling: draw random k-subsets and keep those at distance
// >= min_symdiff from every kept set. Gives up after max_attempts
// consecutive rejections.
SubsetCode gv_code(std::size_t d, std::size_t k, std::size_t min_symdiff,
                   std::size_t count, std::uint64_t seed,
                   std::size_t max_attempts);

// True when every set has subset_size elements and every pair is at least
// min_symdiff apart (O(M^2) scan).
bool is_valid_code(const SubsetCode& code);

struct InstancePair {
  MeanVector p;
  MeanVector q;
};

// q = (eps/d, ..., eps/d); p = 2 eps/d on S and eps/d elsewhere.
InstancePair unbalanced_instance(std::size_t d, double epsilon,
                                 std::span<const std::uint32_t> subset);

struct BalancedInstance {
  MeanVector p;
  MeanVector q;
  std::size_t k = 0;
};

// k = ceil(lambda^2 / epsilon^2).
std::size_t balanced_subset_size(double epsilon, double lambda);

// q = (1/2, ..., 1/2); p = 1/2 + lambda/k on S (|S| = k) and 1/2 elsewhere.
BalancedInstance balanced_instance(std::size_t d, double epsilon,
                                   double lambda,
                                   std::span<const std::uint32_t> subset);

}  // namespace advlearn
