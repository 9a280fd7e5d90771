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

#include "advlearn/instances.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "advlearn/numeric.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

void check_subset(std::span<const std::uint32_t> subset, std::size_t d) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= d) {
      throw std::invalid_argument("subset index " + std::to_string(subset[i]) +
                                  " out of range for d = " + std::to_string(d));
    }
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw std::invalid_argument("subset must be sorted and duplicate-free");
    }
  }
}

}  // namespace

CodeBudgetExhausted::CodeBudgetExhausted(std::size_t achieved,
                                         std::size_t requested)
    : std::runtime_error("gv_code: attempt budget exhausted after " +
                         std::to_string(achieved) + " of " +
                         std::to_string(requested) + " sets"),
      achieved_(achieved) {}

std::size_t symmetric_difference_size(std::span<const std::uint32_t> a,
                                      std::span<const std::uint32_t> b) {
  std::size_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

Subset random_subset(std::size_t d, std::size_t k, std::uint64_t seed) {
  if (k > d) throw std::invalid_argument("random_subset: k > d");
  // Partial Fisher-Yates over [0, d).
  std::vector<std::uint32_t> pool(d);
  std::iota(pool.begin(), pool.end(), 0U);
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t span = d - i;
    const auto j = i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(span));
    std::swap(pool[i], pool[std::min(j, d - 1)]);
  }
  Subset out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

SubsetCode gv_code(std::size_t d, std::size_t k, std::size_t min_symdiff,
                   std::size_t count, std::uint64_t seed,
                   std::size_t max_attempts) {
  if (k > d) throw std::invalid_argument("gv_code: need k <= d");
  if (count < 1) throw std::invalid_argument("gv_code: need M >= 1");
  if (min_symdiff > 2 * k) {
    // Two k-sets differ in at most 2k places.
    if (count > 1) throw CodeBudgetExhausted(1, count);
  }
  SubsetCode code{d, k, min_symdiff, {}};
  std::uint64_t draw = 0;
  std::size_t rejections = 0;
  while (code.sets.size() < count) {
    Subset candidate = random_subset(d, k, derive_seed(seed, draw++));
    const bool far = std::all_of(
        code.sets.begin(), code.sets.end(), [&](const Subset& kept) {
          return symmetric_difference_size(kept, candidate) >= min_symdiff;
        });
    if (far) {
      code.sets.push_back(std::move(candidate));
      rejections = 0;
    } else if (++rejections >= max_attempts) {
      throw CodeBudgetExhausted(code.sets.size(), count);
    }
  }
  return code;
}

bool is_valid_code(const SubsetCode& code) {
  for (const Subset& s : code.sets) {
    if (s.size() != code.subset_size) return false;
  }
  for (std::size_t i = 0; i < code.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < code.sets.size(); ++j) {
      if (symmetric_difference_size(code.sets[i], code.sets[j]) <
          code.min_symdiff) {
        return false;
      }
    }
  }
  return true;
}

InstancePair unbalanced_instance(std::size_t d, double epsilon,
                                 std::span<const std::uint32_t> subset) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("unbalanced_instance: epsilon must lie in (0, 1]");
  }
  if (d < 10) throw std::invalid_argument("unbalanced_instance: need d >= 10");
  check_subset(subset, d);
  const double base = epsilon / static_cast<double>(d);
  std::vector<double> p(d, base);
  for (std::uint32_t i : subset) p[i] = 2.0 * base;
  return {MeanVector(std::move(p)), MeanVector::constant(d, base)};
}

std::size_t balanced_subset_size(double epsilon, double lambda) {
  if (!(epsilon > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("balanced_subset_size: arguments must be positive");
  }
  return static_cast<std::size_t>(ceil_count(lambda * lambda / (epsilon * epsilon)));
}

BalancedInstance balanced_instance(std::size_t d, double epsilon, double lambda,
                                   std::span<const std::uint32_t> subset) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("balanced_instance: epsilon must be > 0");
  }
  if (!(lambda >= 100.0 * epsilon * (1.0 - 1e-12))) {
    throw std::invalid_argument("balanced_instance: need lambda >= 100 epsilon");
  }
  const std::size_t k = balanced_subset_size(epsilon, lambda);
  if (subset.size() != k) {
    throw std::invalid_argument("balanced_instance: |S| = " +
                                std::to_string(subset.size()) +
                                " but k = ceil(lambda^2 / epsilon^2) = " +
                                std::to_string(k));
  }
  check_subset(subset, d);
  const double shift = lambda / static_cast<double>(k);
  if (!(shift < 0.25)) {
    throw std::invalid_argument(
        "balanced_instance: lambda / k must be < 1/4 for 1/4-balance");
  }
  std::vector<double> p(d, 0.5);
  for (std::uint32_t i : subset) p[i] = 0.5 + shift;
  return {MeanVector(std::move(p)), MeanVector::constant(d, 0.5), k};
}

}  // namespace advlearn
