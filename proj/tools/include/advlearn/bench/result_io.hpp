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
#include <optional>
#include <string>
#include <vector>

namespace advlearn::bench {

inline constexpr int kResultSchemaVersion = 1;

// One trial, flattened. Doubles are written with 17 significant digits so
// a write/read cycle is lossless.
struct ResultRow {
  int schema_version = kResultSchemaVersion;
  std::string revision;
  std::uint64_t grid_index = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t d = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double tau = 0.0;
  std::string advice_model;
  double tester_c = 0.0;
  double threshold_factor = 0.0;
  double lasso_constant = 0.0;
  double baseline_constant = 0.0;
  double stage1_multiplier = 0.0;
  bool box_clamp = true;
  bool reuse_stage1 = false;
  std::uint64_t k = 0;
  double alpha = 0.0;
  double zeta = 0.0;
  double delta_prime = 0.0;
  std::uint64_t levels = 0;
  std::uint64_t repetitions = 0;
  std::string approx_status;
  std::string branch;
  std::optional<double> lambda;
  std::uint64_t samples_stage1 = 0;
  std::uint64_t samples_stage2 = 0;
  std::uint64_t samples_total = 0;
  std::uint64_t baseline_samples = 0;
  bool audit_ok = false;
  double true_l1 = 0.0;
  double true_l2 = 0.0;
  double realized_l2 = 0.0;
  std::optional<double> realized_tv;
  std::vector<double> estimate;
  double wall_ms = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Column names in CSV order.
const std::vector<std::string>& csv_header();

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_jsonl_row(std::ostream& out, const ResultRow& row);
void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows);

// Throw std::runtime_error on a malformed file.
std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> read_jsonl(std::istream& in);

// FNV-1a over the CSV rendering with wall_ms zeroed.
std::uint64_t result_hash(const std::vector<ResultRow>& rows);
std::string hash_hex(std::uint64_t hash);

// Empty when every row invariant holds; otherwise one message per failure.
std::vector<std::string> audit(const ResultRow& row);

}  // namespace advlearn::bench
