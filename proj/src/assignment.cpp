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

#include "dimeval/assignment.hpp"

#include <limits>

namespace dimeval {

namespace {

// Requires rows <= cols. Rows and columns are 1-based internally; column 0 is
// the virtual source of each augmenting search.
std::vector<int> solve_wide(const CostMatrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);

  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_slack(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = owner[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= m; ++c) {
        if (used[c]) continue;
        const double slack = cost.at(r0 - 1, c - 1) - u[r0] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= m; ++c) {
        if (used[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<int> assignment(n, kUnassigned);
  for (std::size_t c = 1; c <= m; ++c) {
    if (owner[c] != 0) assignment[owner[c] - 1] = static_cast<int>(c - 1);
  }
  return assignment;
}

}  // namespace

std::vector<int> solve_assignment(const CostMatrix& cost) {
  if (cost.rows() == 0 || cost.cols() == 0) {
    return std::vector<int>(cost.rows(), kUnassigned);
  }
  if (cost.rows() <= cost.cols()) return solve_wide(cost);

  CostMatrix transposed(cost.cols(), cost.rows());
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) {
      transposed.at(c, r) = cost.at(r, c);
    }
  }
  const std::vector<int> by_col = solve_wide(transposed);
  std::vector<int> assignment(cost.rows(), kUnassigned);
  for (std::size_t c = 0; c < by_col.size(); ++c) {
    if (by_col[c] != kUnassigned) {
      assignment[static_cast<std::size_t>(by_col[c])] = static_cast<int>(c);
    }
  }
  return assignment;
}

}  // namespace dimeval
