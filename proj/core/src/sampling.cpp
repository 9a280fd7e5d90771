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

#include "advlearn/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

constexpr std::size_t kWordBits = 64;

void check_lengths(std::span<const std::uint64_t> lengths,
                   std::span<std::uint64_t> out, std::uint64_t begin,
                   std::uint64_t rows) {
  if (lengths.size() != out.size()) {
    throw std::invalid_argument("prefix_counts: output size mismatch");
  }
  std::uint64_t prev = 0;
  for (std::uint64_t len : lengths) {
    if (len < prev) {
      throw std::invalid_argument("prefix_counts: lengths must be sorted");
    }
    prev = len;
  }
  if (!lengths.empty() && begin + lengths.back() > rows) {
    throw std::out_of_range("prefix_counts: range exceeds sample size");
  }
}

// Fills column `col` of `batch` with Bernoulli(prob) bits from one stream.
void fill_column(SampleBatch& batch, std::size_t col, double prob,
                 std::uint64_t seed) {
  auto words = batch.column_words(col);
  const std::uint64_t rows = batch.rows();
  if (prob <= 0.0) return;
  if (prob >= 1.0) {
    std::fill(words.begin(), words.end(), ~std::uint64_t{0});
  } else {
    Rng rng(seed);
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t word = 0;
      for (std::size_t b = 0; b < kWordBits; ++b) {
        if (rng.uniform() < prob) word |= std::uint64_t{1} << b;
      }
      words[w] = word;
    }
  }
  // Bits past the last row stay zero so popcounts over whole words are exact.
  const std::uint64_t tail = rows % kWordBits;
  if (tail != 0 && !words.empty()) {
    words.back() &= (std::uint64_t{1} << tail) - 1;
  }
}

}  // namespace

SampleBatch::SampleBatch(std::uint64_t rows, std::size_t dim,
                         std::uint64_t seed)
    : rows_(rows),
      dim_(dim),
      seed_(seed),
      words_per_column_((rows + kWordBits - 1) / kWordBits),
      bits_(words_per_column_ * dim, 0) {}

SampleBatch SampleBatch::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  SampleBatch batch(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dim) {
      throw std::invalid_argument("from_rows: ragged rows");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) {
        throw std::invalid_argument("from_rows: entries must be 0 or 1");
      }
      batch.set(r, c, v == 1);
    }
  }
  return batch;
}

bool SampleBatch::get(std::uint64_t row, std::size_t col) const {
  const auto words = column_words(col);
  return (words[row / kWordBits] >> (row % kWordBits)) & 1U;
}

void SampleBatch::set(std::uint64_t row, std::size_t col, bool value) {
  auto words = column_words(col);
  const std::uint64_t mask = std::uint64_t{1} << (row % kWordBits);
  if (value) {
    words[row / kWordBits] |= mask;
  } else {
    words[row / kWordBits] &= ~mask;
  }
}

std::span<const std::uint64_t> SampleBatch::column_words(std::size_t col) const {
  return std::span<const std::uint64_t>(bits_).subspan(col * words_per_column_,
                                                       words_per_column_);
}

std::span<std::uint64_t> SampleBatch::column_words(std::size_t col) {
  return std::span<std::uint64_t>(bits_).subspan(col * words_per_column_,
                                                 words_per_column_);
}

std::uint64_t SampleBatch::count_ones(std::size_t col, std::uint64_t begin,
                                      std::uint64_t end) const {
  if (begin >= end) return 0;
  const auto words = column_words(col);
  const std::uint64_t first = begin / kWordBits;
  const std::uint64_t last = (end - 1) / kWordBits;
  const std::uint64_t lo_mask = ~std::uint64_t{0} << (begin % kWordBits);
  const std::uint64_t hi_shift = kWordBits - 1 - ((end - 1) % kWordBits);
  const std::uint64_t hi_mask = ~std::uint64_t{0} >> hi_shift;
  if (first == last) {
    return static_cast<std::uint64_t>(std::popcount(words[first] & lo_mask & hi_mask));
  }
  std::uint64_t total = static_cast<std::uint64_t>(std::popcount(words[first] & lo_mask));
  for (std::uint64_t w = first + 1; w < last; ++w) {
    total += static_cast<std::uint64_t>(std::popcount(words[w]));
  }
  total += static_cast<std::uint64_t>(std::popcount(words[last] & hi_mask));
  return total;
}

void SampleBatch::prefix_counts(std::size_t coord, std::uint64_t begin,
                                std::span<const std::uint64_t> lengths,
                                std::span<std::uint64_t> out) const {
  check_lengths(lengths, out, begin, rows_);
  std::uint64_t prev = 0;
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    running += count_ones(coord, begin + prev, begin + lengths[i]);
    prev = lengths[i];
    out[i] = running;
  }
}

LazySample::LazySample(MeanVector p, std::uint64_t rows, std::uint64_t seed)
    : p_(std::move(p)), rows_(rows), seed_(seed) {}

void LazySample::prefix_counts(std::size_t coord, std::uint64_t begin,
                               std::span<const std::uint64_t> lengths,
                               std::span<std::uint64_t> out) const {
  check_lengths(lengths, out, begin, rows_);
  Rng rng(derive_seed(seed_, coord, begin));
  std::uint64_t prev = 0;
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    running += sample_binomial(rng, lengths[i] - prev, p_[coord]);
    prev = lengths[i];
    out[i] = running;
  }
}

ProductSampler::ProductSampler(MeanVector p, std::uint64_t seed,
                               SampleMode mode)
    : p_(std::move(p)), seed_(seed), mode_(mode) {}

std::uint64_t ProductSampler::next_stream() {
  return derive_seed(seed_, draw_calls_++);
}

SampleBatch ProductSampler::draw_batch(std::uint64_t n) {
  const std::uint64_t stream = next_stream();
  samples_drawn_ += n;
  return sample(p_, n, stream);
}

std::vector<std::uint64_t> ProductSampler::draw_column_counts(std::uint64_t n) {
  const std::uint64_t stream = next_stream();
  samples_drawn_ += n;
  std::vector<std::uint64_t> counts(p_.dim());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    Rng rng(derive_seed(stream, i));
    counts[i] = sample_binomial(rng, n, p_[i]);
  }
  return counts;
}

std::unique_ptr<SampleView> ProductSampler::draw_view(std::uint64_t n) {
  const std::uint64_t stream = next_stream();
  samples_drawn_ += n;
  if (mode_ == SampleMode::kBitPacked) {
    return std::make_unique<SampleBatch>(sample(p_, n, stream));
  }
  return std::make_unique<LazySample>(p_, n, stream);
}

SampleBatch sample(const MeanVector& p, std::uint64_t n, std::uint64_t seed) {
  SampleBatch batch(n, p.dim(), seed);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    fill_column(batch, i, p[i], derive_seed(seed, i));
  }
  return batch;
}

MeanVector empirical_mean(const SampleBatch& batch) {
  if (batch.rows() == 0) throw std::invalid_argument("empty batch");
  std::vector<std::uint64_t> counts(batch.dim());
  for (std::size_t i = 0; i < batch.dim(); ++i) {
    counts[i] = batch.count_ones(i, 0, batch.rows());
  }
  return empirical_mean(counts, batch.rows());
}

MeanVector empirical_mean(std::span<const std::uint64_t> column_counts,
                          std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty batch");
  std::vector<double> mean(column_counts.size());
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < mean.size(); ++i) {
    mean[i] = std::min(1.0, static_cast<double>(column_counts[i]) * inv);
  }
  return MeanVector(std::move(mean));
}

std::uint64_t poisson_cap(double rate) {
  return static_cast<std::uint64_t>(std::ceil(2.0 * std::numbers::e * rate));
}

PoissonDraw poissonized_counts(SampleSource& source, double rate,
                               std::uint64_t cap, std::uint64_t seed) {
  if (!(rate > 0.0)) throw std::invalid_argument("poisson rate must be > 0");
  const std::size_t d = source.dim();
  Rng rng(seed);
  PoissonCounts result;
  result.rate = rate;
  result.budgets.resize(d);
  std::uint64_t max_budget = 0;
  for (auto& b : result.budgets) {
    b = sample_poisson(rng, rate);
    max_budget = std::max(max_budget, b);
  }
  if (max_budget > cap) return CapExceeded{max_budget, cap};

  const auto view = source.draw_view(cap);
  result.counts.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint64_t len = result.budgets[i];
    view->prefix_counts(i, 0, std::span<const std::uint64_t>(&len, 1),
                        std::span<std::uint64_t>(&result.counts[i], 1));
  }
  return result;
}

PoissonDraw poissonized_counts(const MeanVector& p, double rate,
                               std::uint64_t cap, std::uint64_t seed,
                               SampleMode mode) {
  ProductSampler source(p, derive_seed(seed, 1), mode);
  return poissonized_counts(source, rate, cap, derive_seed(seed, 0));
}

}  // namespace advlearn
