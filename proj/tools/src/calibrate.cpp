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

#include "advlearn/bench/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "advlearn/parallel.hpp"
#include "advlearn/rng.hpp"
#include "advlearn/sampling.hpp"
#include "advlearn/tester.hpp"

namespace advlearn::bench {
namespace {

constexpr double kMaxError = 0.25;

// q = 1/2 everywhere; p moves every coordinate by distance / sqrt(d) with
// random signs, so ||p - q||_2 = distance exactly.
MeanVector shifted_half(std::size_t d, double distance, std::uint64_t seed) {
  Rng rng(seed);
  const double step = distance / std::sqrt(static_cast<double>(d));
  std::vector<double> p(d);
  for (double& x : p) x = 0.5 + (rng.uniform() < 0.5 ? -step : step);
  return MeanVector(std::move(p));
}

}  // namespace

double CalibrationRow::false_reject() const {
  return std::max(1.0 - accept[0], 1.0 - accept[1]);
}

double CalibrationRow::false_accept() const {
  return std::max(accept[2], accept[3]);
}

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  for (int j = -12; j <= 4; ++j) grid.push_back(std::exp2(j / 4.0));
  return grid;
}

CalibrationReport calibrate_tester(std::size_t d, double epsilon,
                                   std::size_t trials, std::uint64_t seed,
                                   const std::vector<double>& c_grid,
                                   double threshold_factor, int workers) {
  if (trials < 100) {
    throw std::invalid_argument("calibrate-tester: need trials >= 100");
  }
  if (c_grid.empty()) throw std::invalid_argument("calibrate-tester: empty c grid");
  if (d < 1) throw std::invalid_argument("calibrate-tester: need d >= 1");
  CalibrationReport report;
  report.d = d;
  report.epsilon = epsilon;
  report.trials = trials;
  report.threshold_factor = threshold_factor;
  std::vector<double> grid = c_grid;
  std::sort(grid.begin(), grid.end());
  report.rows.resize(grid.size());

  const MeanVector q = MeanVector::constant(d, 0.5);
  parallel_for(grid.size() * 4, workers, [&](std::size_t cell) {
    const std::size_t ci = cell / 4;
    const std::size_t di = cell % 4;
    const TesterConfig cfg{epsilon, 0.1, grid[ci], threshold_factor};
    const MeanVector p =
        shifted_half(d, static_cast<double>(di) * epsilon, derive_seed(seed, di));
    std::size_t accepts = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      ProductSampler source(p, derive_seed(seed, ci, di, t, 0));
      const TesterVerdict v = tmt_single(source, q, cfg, derive_seed(seed, ci, di, t, 1));
      if (v.verdict == Verdict::kAccept) ++accepts;
    }
    report.rows[ci].c = grid[ci];
    report.rows[ci].accept[di] =
        static_cast<double>(accepts) / static_cast<double>(trials);
  });
  for (const CalibrationRow& row : report.rows) {
    if (row.false_reject() <= kMaxError && row.false_accept() <= kMaxError) {
      report.recommended = row.c;
      break;
    }
  }
  return report;
}

void write_calibration_csv(std::ostream& out, const CalibrationReport& report) {
  out << "c,accept_0,accept_eps,accept_2eps,accept_3eps,false_reject,"
         "false_accept,recommended\n";
  char buf[256];
  for (const CalibrationRow& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                  row.c, row.accept[0], row.accept[1], row.accept[2],
                  row.accept[3], row.false_reject(), row.false_accept(),
                  report.recommended && *report.recommended == row.c ? "true"
                                                                     : "false");
    out << buf;
  }
}

}  // namespace advlearn::bench
