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
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "advlearn/mean_vector.hpp"

namespace advlearn {

// A multiset of samples from a product distribution, read column by column.
//
// prefix_counts(coord, begin, lengths, out) writes, for every length L in the
// non-decreasing list `lengths`, the number of ones of column `coord` among
// rows [begin, begin + L). Implementations must return the same answer for
// the same (coord, begin, lengths) query; callers ask each (coord, begin)
// pair once with every length they will need.
class SampleView {
 public:
  virtual ~SampleView() = default;

  virtual std::uint64_t rows() const = 0;
  virtual std::size_t dim() const = 0;
  virtual void prefix_counts(std::size_t coord, std::uint64_t begin,
                             std::span<const std::uint64_t> lengths,
                             std::span<std::uint64_t> out) const = 0;
};

// n x d binary samples stored as bit-packed columns (one bit per row).
class SampleBatch final : public SampleView {
 public:
  SampleBatch() = default;
  SampleBatch(std::uint64_t rows, std::size_t dim, std::uint64_t seed = 0);

  // Builds a batch from explicit 0/1 rows; used by fixtures and tests.
  static SampleBatch from_rows(const std::vector<std::vector<int>>& rows);

  std::uint64_t rows() const override { return rows_; }
  std::size_t dim() const override { return dim_; }
  std::uint64_t seed() const { return seed_; }

  bool get(std::uint64_t row, std::size_t col) const;
  void set(std::uint64_t row, std::size_t col, bool value);

  std::span<const std::uint64_t> column_words(std::size_t col) const;
  std::span<std::uint64_t> column_words(std::size_t col);

  // Ones in column `col` over rows [begin, end).
  std::uint64_t count_ones(std::size_t col, std::uint64_t begin,
                           std::uint64_t end) const;

  void prefix_counts(std::size_t coord, std::uint64_t begin,
                     std::span<const std::uint64_t> lengths,
                     std::span<std::uint64_t> out) const override;

 private:
  std::uint64_t rows_ = 0;
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t words_per_column_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A multiset that is never materialized. Each (coord, begin) query is
// answered by chaining Binomial increments between consecutive lengths,
// which has exactly the law of prefix counts of i.i.d. Bernoulli(p_coord)
// rows. Memory is O(d) regardless of the row count.
class LazySample final : public SampleView {
 public:
  LazySample(MeanVector p, std::uint64_t rows, std::uint64_t seed);

  std::uint64_t rows() const override { return rows_; }
  std::size_t dim() const override { return p_.dim(); }

  void prefix_counts(std::size_t coord, std::uint64_t begin,
                     std::span<const std::uint64_t> lengths,
                     std::span<std::uint64_t> out) const override;

 private:
  MeanVector p_;
  std::uint64_t rows_;
  std::uint64_t seed_;
};

// Sample access to an unknown product distribution. Every draw is charged to
// samples_drawn(), which the pipeline audits.
class SampleSource {
 public:
  virtual ~SampleSource() = default;

  virtual std::size_t dim() const = 0;

  // n materialized rows.
  virtual SampleBatch draw_batch(std::uint64_t n) = 0;
  // Column sums of n fresh rows (the sufficient statistic of the mean).
  virtual std::vector<std::uint64_t> draw_column_counts(std::uint64_t n) = 0;
  // n fresh rows exposed as a column view; may be lazy.
  virtual std::unique_ptr<SampleView> draw_view(std::uint64_t n) = 0;

  virtual std::uint64_t samples_drawn() const = 0;
};

enum class SampleMode {
  // draw_view materializes bit-packed rows (the pool construction).
  kBitPacked,
  // draw_view returns a LazySample (per-coordinate thinning).
  kCounts,
};

class ProductSampler final : public SampleSource {
 public:
  ProductSampler(MeanVector p, std::uint64_t seed,
                 SampleMode mode = SampleMode::kCounts);

  std::size_t dim() const override { return p_.dim(); }
  const MeanVector& mean() const { return p_; }
  SampleMode mode() const { return mode_; }

  SampleBatch draw_batch(std::uint64_t n) override;
  std::vector<std::uint64_t> draw_column_counts(std::uint64_t n) override;
  std::unique_ptr<SampleView> draw_view(std::uint64_t n) override;

  std::uint64_t samples_drawn() const override { return samples_drawn_; }

 private:
  std::uint64_t next_stream();

  MeanVector p_;
  std::uint64_t seed_;
  SampleMode mode_;
  std::uint64_t draw_calls_ = 0;
  std::uint64_t samples_drawn_ = 0;
};

// n i.i.d. rows of Ber(p); row r, coordinate i is one with probability p_i.
SampleBatch sample(const MeanVector& p, std::uint64_t n, std::uint64_t seed);

// Column means of a non-empty batch. Throws "empty batch" when n == 0.
MeanVector empirical_mean(const SampleBatch& batch);
MeanVector empirical_mean(std::span<const std::uint64_t> column_counts,
                          std::uint64_t n);

struct PoissonCounts {
  std::vector<std::uint64_t> counts;   // X_i
  std::vector<std::uint64_t> budgets;  // m_i ~ Poisson(rate)
  double rate = 0.0;                   // m

  std::size_t dim() const { return counts.size(); }
};

// Some budget m_i exceeded the cap; the conditioning event failed.
struct CapExceeded {
  std::uint64_t max_budget = 0;
  std::uint64_t cap = 0;
};

using PoissonDraw = std::variant<PoissonCounts, CapExceeded>;

// ceil(2 e m): the pool size that covers every budget with high probability.
std::uint64_t poisson_cap(double rate);

// Draws budgets m_i ~ Poisson(rate) from `budget_rng`; when all fit under
// `cap`, takes `cap` rows from `source` and counts the ones among the first
// m_i rows of each column.
PoissonDraw poissonized_counts(SampleSource& source, double rate,
                               std::uint64_t cap, std::uint64_t seed);

// Convenience overload over a fresh ProductSampler for p.
PoissonDraw poissonized_counts(const MeanVector& p, double rate,
                               std::uint64_t cap, std::uint64_t seed,
                               SampleMode mode = SampleMode::kCounts);

}  // namespace advlearn
