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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "advlearn/pipeline.hpp"
#include "advlearn/sampling.hpp"

namespace advlearn::bench {

inline constexpr int kConfigSchemaVersion = 1;

// Malformed or out-of-range configuration. what() reads
// "<source>:<line>: <field>: <problem>".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How the unknown mean p is drawn for each trial.
struct TruthModel {
  enum class Kind { kUniform, kConstant };
  Kind kind = Kind::kUniform;  // kUniform: p_i ~ U[tau, 1 - tau]
  double value = 0.5;          // kConstant only
};

// How the advice q is derived from p (or, for instance families, how both
// are generated).
struct AdviceModel {
  enum class Kind {
    kExact,       // q = p
    kSparse,      // t coordinates moved by +-magnitude
    kDense,       // every coordinate moved by +-l1_budget / d
    kCorner,      // q_i = 1 if p_i < 1/2 else 0
    kUnbalanced,  // unbalanced family with |S| = subset_size
    kBalanced,    // balanced family with radius lambda
    kExplicit,    // p and q given verbatim
  };
  Kind kind = Kind::kExact;
  std::size_t t = 0;
  double magnitude = 0.0;
  double l1_budget = 0.0;
  std::size_t subset_size = 0;
  double lambda = 0.0;
  std::vector<double> p;
  std::vector<double> q;

  std::string label() const;
};

struct SweepSpec {
  std::string source = "<config>";
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::vector<std::size_t> dims;
  std::vector<double> epsilons;
  std::vector<double> etas;
  std::vector<double> taus;
  std::vector<double> deltas{0.1};
  TruthModel truth;
  std::vector<AdviceModel> advice{AdviceModel{}};

  // Overridable pipeline constants.
  double tester_c = kDefaultTesterC;
  double threshold_factor = kDefaultThresholdFactor;
  double lasso_constant = kLassoSampleConstant;
  double baseline_constant = kBaselineSampleConstant;
  double stage1_multiplier = 1.0;
  bool box_clamp = true;
  bool reuse_stage1 = false;
  SampleMode sample_mode = SampleMode::kCounts;

  std::size_t grid_size() const;
};

SweepSpec parse_config(const std::string& text,
                       const std::string& source = "<config>");
SweepSpec load_config(const std::string& path);

// Command-line overrides; re-validated.
void apply_overrides(SweepSpec& spec, std::optional<std::uint64_t> seed,
                     std::optional<std::size_t> trials);

// Renders `spec` back to the config format.
std::string to_yaml(const SweepSpec& spec);

}  // namespace advlearn::bench
