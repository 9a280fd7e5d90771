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
#include <initializer_list>
#include <span>
#include <vector>

namespace advlearn {

// Mean vector of a product distribution on {0,1}^d: every entry in [0, 1].
class MeanVector {
 public:
  MeanVector() = default;
  explicit MeanVector(std::vector<double> values);
  MeanVector(std::initializer_list<double> values);

  static MeanVector constant(std::size_t dim, double value);

  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  // Restriction to coordinates [begin, end).
  std::span<const double> slice(std::size_t begin, std::size_t end) const {
    return std::span<const double>(values_).subspan(begin, end - begin);
  }

  // True when every entry lies in [tau, 1 - tau].
  bool is_balanced(double tau) const;

  friend bool operator==(const MeanVector&, const MeanVector&) = default;

 private:
  std::vector<double> values_;
};

double l1_distance(std::span<const double> a, std::span<const double> b);
double l2_distance(std::span<const double> a, std::span<const double> b);

// Throws std::invalid_argument naming `what` when sizes differ.
void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace advlearn
