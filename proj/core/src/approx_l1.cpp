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

#include "advlearn/approx_l1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "advlearn/numeric.hpp"
#include "advlearn/rng.hpp"

namespace advlearn {
namespace {

constexpr int kAttempts = 2;  // first draw plus one retry on CapExceeded

// Budgets and counts for one block, indexed [rep][level][attempt][coord].
class BlockDraws {
 public:
  BlockDraws(int reps, int levels, std::size_t width)
      : levels_(levels),
        width_(width),
        budgets_(static_cast<std::size_t>(reps) * levels * kAttempts * width),
        counts_(budgets_.size()),
        max_budget_(static_cast<std::size_t>(reps) * levels * kAttempts) {}

  std::size_t slot(int rep, int level, int attempt) const {
    return (static_cast<std::size_t>(rep) * levels_ + level) * kAttempts +
           attempt;
  }
  std::uint64_t& budget(std::size_t s, std::size_t coord) {
    return budgets_[s * width_ + coord];
  }
  std::uint64_t& count(std::size_t s, std::size_t coord) {
    return counts_[s * width_ + coord];
  }
  std::uint64_t& max_budget(std::size_t s) { return max_budget_[s]; }
  std::span<const std::uint64_t> counts(std::size_t s) const {
    return std::span<const std::uint64_t>(counts_).subspan(s * width_, width_);
  }

 private:
  int levels_;
  std::size_t width_;
  std::vector<std::uint64_t> budgets_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> max_budget_;
};

}  // namespace

BlockPartition partition_blocks(std::size_t d, std::size_t k) {
  if (k < 1 || k > d) {
    throw std::invalid_argument("partition_blocks: need 1 <= k <= d (k = " +
                                std::to_string(k) + ", d = " +
                                std::to_string(d) + ")");
  }
  BlockPartition partition;
  partition.k = k;
  for (std::size_t begin = 0; begin < d; begin += k) {
    partition.blocks.push_back({begin, std::min(begin + k, d)});
  }
  return partition;
}

int ladder_levels(double alpha, double zeta) {
  return static_cast<int>(std::ceil(std::log2(zeta / alpha)));
}

void ApproxL1Params::validate(std::size_t d) const {
  if (k < 1 || k > d) throw std::invalid_argument("approx_l1: need 1 <= k <= d");
  if (!(alpha > 0.0)) throw std::invalid_argument("approx_l1: alpha must be > 0");
  if (!(zeta > 2.0 * alpha)) {
    throw std::invalid_argument("approx_l1: need 0 < 2 alpha < zeta");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("approx_l1: delta must lie in (0, 1)");
  }
  if (!(sample_multiplier >= 1.0)) {
    throw std::invalid_argument("approx_l1: sample_multiplier must be >= 1");
  }
  TesterConfig{alpha, delta, c, threshold_factor}.validate();
}

ApproxL1Plan plan_approx_l1(std::size_t d, const ApproxL1Params& params) {
  params.validate(d);
  ApproxL1Plan plan;
  plan.w = (d + params.k - 1) / params.k;
  plan.levels = ladder_levels(params.alpha, params.zeta);
  plan.delta_prime =
      params.delta / (static_cast<double>(plan.w) * plan.levels);
  plan.repetitions = tester_repetitions(plan.delta_prime);

  const double sqrt_k = std::sqrt(static_cast<double>(params.k));
  const double alpha_sq = params.alpha * params.alpha;
  const double stated =
      static_cast<double>(ceil_count(16.0 * sqrt_k / (3.0 * alpha_sq)));
  const std::uint64_t chunk = ceil_count(params.sample_multiplier * stated);
  // Every level-1 Poisson pool must fit inside its repetition's chunk.
  const std::uint64_t pool = poisson_cap(params.c * sqrt_k / alpha_sq);
  plan.chunk_rows = std::max(chunk, pool);
  plan.total_rows = plan.chunk_rows * static_cast<std::uint64_t>(plan.repetitions);
  return plan;
}

ApproxL1Outcome approx_l1(SampleSource& source, const MeanVector& q,
                          const ApproxL1Params& params, std::uint64_t seed) {
  require_same_dim(source.dim(), q.dim(), "approx_l1");
  const ApproxL1Plan plan = plan_approx_l1(q.dim(), params);
  const auto samples = source.draw_view(plan.total_rows);
  return approx_l1(*samples, q, params, seed);
}

ApproxL1Outcome approx_l1(const SampleView& samples, const MeanVector& q,
                          const ApproxL1Params& params, std::uint64_t seed) {
  const std::size_t d = q.dim();
  require_same_dim(samples.dim(), d, "approx_l1");
  const ApproxL1Plan plan = plan_approx_l1(d, params);
  if (samples.rows() < plan.total_rows) {
    throw std::invalid_argument("approx_l1: sample set has " +
                                std::to_string(samples.rows()) +
                                " rows, need " +
                                std::to_string(plan.total_rows));
  }
  const BlockPartition partition = partition_blocks(d, params.k);
  const int reps = plan.repetitions;
  const int levels = plan.levels;

  ApproxL1Outcome out;
  out.plan = plan;
  out.samples_used = samples.rows();
  out.block_levels.assign(partition.w(), std::nullopt);
  out.column_totals.assign(d, 0);

  std::vector<std::pair<std::uint64_t, std::size_t>> wanted;
  std::vector<std::uint64_t> lengths;
  std::vector<std::uint64_t> counted;

  for (std::size_t j = 0; j < partition.w(); ++j) {
    const BlockRange block = partition.blocks[j];
    const std::size_t width = block.size();
    const auto q_block = q.slice(block.begin, block.end);

    std::vector<double> level_eps(static_cast<std::size_t>(levels));
    std::vector<TesterConfig> level_cfg;
    for (int i = 0; i < levels; ++i) {
      level_eps[static_cast<std::size_t>(i)] = std::ldexp(params.alpha, i);
      level_cfg.push_back({level_eps[static_cast<std::size_t>(i)],
                           plan.delta_prime, params.c,
                           params.threshold_factor});
    }

    // Budgets for every (repetition, level, attempt) are drawn up front so
    // each (coordinate, chunk) of S is read exactly once.
    BlockDraws draws(reps, levels, width);
    for (int t = 0; t < reps; ++t) {
      Rng rng(derive_seed(seed, j, t));
      for (int i = 0; i < levels; ++i) {
        const double rate = level_cfg[static_cast<std::size_t>(i)].rate(width);
        for (int a = 0; a < kAttempts; ++a) {
          const std::size_t s = draws.slot(t, i, a);
          std::uint64_t max_budget = 0;
          for (std::size_t c = 0; c < width; ++c) {
            const std::uint64_t b = sample_poisson(rng, rate);
            draws.budget(s, c) = b;
            max_budget = std::max(max_budget, b);
          }
          draws.max_budget(s) = max_budget;
        }
      }
    }

    std::vector<std::uint64_t> caps(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) {
      caps[static_cast<std::size_t>(i)] =
          std::min(level_cfg[static_cast<std::size_t>(i)].cap(width),
                   plan.chunk_rows);
    }

    for (std::size_t c = 0; c < width; ++c) {
      for (int t = 0; t < reps; ++t) {
        wanted.clear();
        for (int i = 0; i < levels; ++i) {
          for (int a = 0; a < kAttempts; ++a) {
            const std::size_t s = draws.slot(t, i, a);
            if (draws.max_budget(s) <= caps[static_cast<std::size_t>(i)]) {
              wanted.emplace_back(draws.budget(s, c), s);
            }
          }
        }
        wanted.emplace_back(plan.chunk_rows, SIZE_MAX);
        std::sort(wanted.begin(), wanted.end());
        lengths.resize(wanted.size());
        counted.resize(wanted.size());
        for (std::size_t n = 0; n < wanted.size(); ++n) {
          lengths[n] = wanted[n].first;
        }
        samples.prefix_counts(block.begin + c,
                              static_cast<std::uint64_t>(t) * plan.chunk_rows,
                              lengths, counted);
        for (std::size_t n = 0; n < wanted.size(); ++n) {
          if (wanted[n].second == SIZE_MAX) {
            out.column_totals[block.begin + c] += counted[n];
          } else {
            draws.count(wanted[n].second, c) = counted[n];
          }
        }
      }
    }

    // Ladder: first level whose majority vote accepts.
    for (int i = 0; i < levels; ++i) {
      const TesterConfig& cfg = level_cfg[static_cast<std::size_t>(i)];
      const double rate = cfg.rate(width);
      const double threshold = cfg.threshold(width);
      int accepts = 0;
      for (int t = 0; t < reps; ++t) {
        for (int a = 0; a < kAttempts; ++a) {
          const std::size_t s = draws.slot(t, i, a);
          if (draws.max_budget(s) > caps[static_cast<std::size_t>(i)]) continue;
          if (z_statistic(draws.counts(s), rate, q_block) <= threshold) {
            ++accepts;
          }
          break;
        }
      }
      const Verdict verdict =
          2 * accepts > reps ? Verdict::kAccept : Verdict::kReject;
      out.trace.push_back({j, i + 1, cfg.epsilon, verdict, accepts});
      if (verdict == Verdict::kAccept) {
        out.block_levels[j] = cfg.epsilon;
        break;
      }
    }
  }

  double lambda = 0.0;
  for (std::size_t j = 0; j < partition.w(); ++j) {
    if (!out.block_levels[j]) {
      out.status = ApproxL1Status::kFail;
      return out;
    }
    lambda += std::sqrt(static_cast<double>(partition.blocks[j].size())) *
              *out.block_levels[j];
  }
  out.status = ApproxL1Status::kEstimate;
  out.lambda = 2.0 * lambda;
  return out;
}

}  // namespace advlearn
