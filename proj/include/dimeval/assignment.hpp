// Copyright 2026 The dimeval Authors.
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

#ifndef DIMEVAL_ASSIGNMENT_HPP_
#define DIMEVAL_ASSIGNMENT_HPP_

#include <cstddef>
#include <vector>

namespace dimeval {

// Dense row-major cost matrix.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

inline constexpr int kUnassigned = -1;

// Minimum-total-cost assignment of maximum cardinality (min(rows, cols)
// pairs), by the Hungarian method with potentials, O(n^2 m). Returns the
// column assigned to each row, or kUnassigned.
std::vector<int> solve_assignment(const CostMatrix& cost);

}  // namespace dimeval

#endif  // DIMEVAL_ASSIGNMENT_HPP_
