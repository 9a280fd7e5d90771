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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "advlearn/bench/calibrate.hpp"

namespace advlearn::bench {
namespace {

TEST(DefaultCGrid, PowersOfTwoToTheQuarter) {
  const std::vector<double> grid = default_c_grid();
  ASSERT_EQ(grid.size(), 17U);
  EXPECT_DOUBLE_EQ(grid.front(), 0.125);
  EXPECT_DOUBLE_EQ(grid[7], 0.42044820762685725);
  EXPECT_DOUBLE_EQ(grid.back(), 2.0);
}

TEST(CalibrationRow, ErrorRates) {
  CalibrationRow row;
  row.accept = {0.95, 0.8, 0.3, 0.05};
  EXPECT_DOUBLE_EQ(row.false_reject(), 0.2);
  EXPECT_DOUBLE_EQ(row.false_accept(), 0.3);
}

TEST(CalibrateTester, RejectsTooFewTrials) {
  EXPECT_THROW(calibrate_tester(64, 0.3, 99, 1, {1.0}, 2.5, 1), std::invalid_argument);
  EXPECT_THROW(calibrate_tester(64, 0.3, 100, 1, {}, 2.5, 1), std::invalid_argument);
}

TEST(CalibrateTester, SeparationImprovesWithC) {
  const CalibrationReport r = calibrate_tester(64, 0.3, 100, 5, {0.5, 2.0}, 2.5, 2);
  ASSERT_EQ(r.rows.size(), 2U);
  for (const CalibrationRow& row : r.rows) {
    EXPECT_GE(row.accept[0], row.accept[3]);
  }
  EXPECT_LE(r.rows[1].false_accept(), r.rows[0].false_accept() + 0.05);
  ASSERT_TRUE(r.recommended.has_value());
  EXPECT_EQ(r.d, 64U);

  const CalibrationReport again = calibrate_tester(64, 0.3, 100, 5, {0.5, 2.0}, 2.5, 1);
  EXPECT_EQ(again.rows[0].accept, r.rows[0].accept);

  std::ostringstream out;
  write_calibration_csv(out, r);
  const std::string text = out.str();
  EXPECT_NE(text.find("false_reject"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

}  // namespace
}  // namespace advlearn::bench
