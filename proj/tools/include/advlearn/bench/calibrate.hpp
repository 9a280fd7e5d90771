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
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace advlearn::bench {

struct CalibrationRow {
  double c = 0.0;
  // Single-shot Accept rate at ||p - q||_2 = 0, eps, 2 eps, 3 eps.
  std::array<double, 4> accept{};
  // max(1 - accept[0], 1 - accept[1]): rejecting a close pair.
  double false_reject() const;
  // max(accept[2], accept[3]): accepting a far pair.
  double false_accept() const;
};

struct CalibrationReport {
  std::size_t d = 0;
  double epsilon = 0.0;
  std::size_t trials = 0;
  double threshold_factor = 0.0;
  std::vector<CalibrationRow> rows;  // ascending c
  std::optional<double> recommended;  // smallest c with both rates <= 1/4
};

// 2^{j/4} for j = -12, ..., 4.
std::vector<double> default_c_grid();

// Throws std::invalid_argument when trials < 100 or the grid is empty.
CalibrationReport calibrate_tester(std::size_t d, double epsilon,
                                   std::size_t trials, std::uint64_t seed,
                                   const std::vector<double>& c_grid,
                                   double threshold_factor, int workers);

void write_calibration_csv(std::ostream& out, const CalibrationReport& report);

}  // namespace advlearn::bench
