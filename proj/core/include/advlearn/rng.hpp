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

#include <array>
#include <cstdint>
#include <limits>

namespace advlearn {

// Seeds form a tree: experiment seed -> trial seed -> operation seed -> stream.
// Every child is derive_seed(parent, tag, ...), so any node can be recomputed
// without replaying its siblings.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag,
                          Tags... more) {
  return derive_seed(derive_seed(parent, tag),
                     static_cast<std::uint64_t>(more)...);
}

// xoshiro256** seeded through splitmix64. Satisfies
// UniformRandomBitGenerator so it can drive std/boost distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> state_;
};

// Poisson(rate): inversion below kPoissonInversionLimit, PTRS above.
inline constexpr double kPoissonInversionLimit = 30.0;
std::uint64_t sample_poisson(Rng& rng, double rate);

// Binomial(trials, prob). prob is clamped to [0, 1].
std::uint64_t sample_binomial(Rng& rng, std::uint64_t trials, double prob);

}  // namespace advlearn
