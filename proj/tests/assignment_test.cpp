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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dimeval/assignment.hpp"

using namespace dimeval;

namespace {

// Minimum cost over every maximum-cardinality assignment, by enumeration.
double enumerate_minimum(const CostMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  const bool rows_small = r <= c;
  const std::size_t small = rows_small ? r : c;
  const std::size_t large = rows_small ? c : r;
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < small; ++i) {
      cost += rows_small ? m.at(i, perm[i]) : m.at(perm[i], i);
    }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double assignment_cost(const CostMatrix& m, const std::vector<int>& a) {
  double cost = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != kUnassigned) cost += m.at(i, static_cast<std::size_t>(a[i]));
  }
  return cost;
}

void check_valid(const CostMatrix& m, const std::vector<int>& a) {
  REQUIRE(a.size() == m.rows());
  std::set<int> used;
  std::size_t assigned = 0;
  for (int col : a) {
    if (col == kUnassigned) continue;
    REQUIRE(col >= 0);
    REQUIRE(static_cast<std::size_t>(col) < m.cols());
    REQUIRE(used.insert(col).second);
    ++assigned;
  }
  REQUIRE(assigned == std::min(m.rows(), m.cols()));
}

}  // namespace

TEST_CASE("empty and single-cell matrices") {
  CHECK(solve_assignment(CostMatrix(0, 0)).empty());
  CHECK(solve_assignment(CostMatrix(0, 3)).empty());
  const auto a = solve_assignment(CostMatrix(2, 0));
  CHECK(a == std::vector<int>{kUnassigned, kUnassigned});
  CostMatrix one(1, 1);
  one.at(0, 0) = 0.7;
  CHECK(solve_assignment(one) == std::vector<int>{0});
}

TEST_CASE("a hand-checked 3x3 instance") {
  CostMatrix m(3, 3);
  const double values[3][3] = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = values[i][j];
  const auto a = solve_assignment(m);
  check_valid(m, a);
  CHECK(assignment_cost(m, a) == 5.0);
}

TEST_CASE("property: solver cost equals the enumerated minimum") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> real(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  for (int trial = 0; trial < 3000; ++trial) {
    CostMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = trial % 2 ? real(rng) : coarse(rng) * 0.25;
    const auto a = solve_assignment(m);
    check_valid(m, a);
    REQUIRE(std::abs(assignment_cost(m, a) - enumerate_minimum(m)) < 1e-12);
  }
}
