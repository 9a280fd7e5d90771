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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace advlearn::bench {

struct VerifyOptions {
  int workers = 1;
  std::uint64_t seed = 20261018;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

// Runs acceptance check `id` in [1, kCriterionCount]. A check that finishes
// over its time budget fails.
CriterionResult run_criterion(int id, const VerifyOptions& options);

// metrics, tester, approxl1, lasso, pipeline-small, pipeline-large, all.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
std::vector<int> suite_criteria(const std::string& name);

std::vector<CriterionResult> run_suite(const std::string& name,
                                       const VerifyOptions& options);

// One human-readable line: "[PASS] C3 approxl1-sandwich: ... (1.2 s)".
std::string summary_line(const CriterionResult& r);
// One JSON object per line.
std::string summary_json(const CriterionResult& r);

}  // namespace advlearn::bench
