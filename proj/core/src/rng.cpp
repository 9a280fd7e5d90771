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

#include "advlearn/rng.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

namespace advlearn {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t poisson_by_inversion(Rng& rng, double rate) {
  // Sequential search on the CDF. The tail guard only triggers when the
  // accumulated mass rounds below u, which is ~1e-16 likely.
  const double u = rng.uniform();
  double term = std::exp(-rate);
  double cdf = term;
  std::uint64_t k = 0;
  const auto guard = static_cast<std::uint64_t>(rate + 40.0 * std::sqrt(rate) + 60.0);
  while (u >= cdf && k < guard) {
    ++k;
    term *= rate / static_cast<double>(k);
    cdf += term;
  }
  return k;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  return splitmix64(splitmix64(parent) ^ rotl(splitmix64(tag + kGolden), 17));
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : state_) {
    word = splitmix64(x);
    x += kGolden;
  }
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t sample_poisson(Rng& rng, double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("poisson rate must be finite and >= 0");
  }
  if (rate == 0.0) return 0;
  if (rate < kPoissonInversionLimit) return poisson_by_inversion(rng, rate);
  boost::random::poisson_distribution<std::int64_t, double> dist(rate);
  return static_cast<std::uint64_t>(dist(rng));
}

std::uint64_t sample_binomial(Rng& rng, std::uint64_t trials, double prob) {
  if (trials == 0 || prob <= 0.0) return 0;
  if (prob >= 1.0) return trials;
  boost::random::binomial_distribution<std::int64_t, double> dist(
      static_cast<std::int64_t>(trials), prob);
  return static_cast<std::uint64_t>(dist(rng));
}

}  // namespace advlearn
