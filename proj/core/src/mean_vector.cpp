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

#include "advlearn/mean_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "advlearn/numeric.hpp"

namespace advlearn {

MeanVector::MeanVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("mean vector entry " + std::to_string(i) +
                                  " = " + std::to_string(v) +
                                  " is outside [0, 1]");
    }
  }
}

MeanVector::MeanVector(std::initializer_list<double> values)
    : MeanVector(std::vector<double>(values)) {}

MeanVector MeanVector::constant(std::size_t dim, double value) {
  return MeanVector(std::vector<double>(dim, value));
}

bool MeanVector::is_balanced(double tau) const {
  for (double v : values_) {
    if (v < tau || v > 1.0 - tau) return false;
  }
  return true;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "l1_distance");
  CompensatedSum sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum.add(std::abs(a[i] - b[i]));
  return sum.value();
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "l2_distance");
  CompensatedSum sum;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum.add(diff * diff);
  }
  return std::sqrt(sum.value());
}

}  // namespace advlearn
