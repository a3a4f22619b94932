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
#include <random>
#include <vector>

#include "dimeval/numeric.hpp"

using namespace dimeval;

TEST_CASE("round half up") {
  CHECK(round_half_up(1.375, 2) == doctest::Approx(1.38).epsilon(1e-15));
  CHECK(round_half_up(0.125, 2) == doctest::Approx(0.13).epsilon(1e-15));
  CHECK(round_half_up(0.12499, 2) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(round_half_up(2.5, 0) == 3.0);
  CHECK(round_half_up(-2.5, 0) == -3.0);
  CHECK(round_half_up(0.0, 4) == 0.0);
}

TEST_CASE("fixed formatting") {
  CHECK(format_fixed(0.5, 4) == "0.5000");
  CHECK(format_fixed(1.375, 3) == "1.375");
  CHECK(format_fixed(0.392857142857, 4) == "0.3929");
  CHECK(format_fixed(2.0, 0) == "2");
  CHECK(format_fixed(-0.00001, 4) == "0.0000");
  CHECK(format_fixed(1.0 / 3.0, 12) == "0.333333333333");
}

TEST_CASE("compensated sum recovers cancelled terms") {
  CompensatedSum s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1.0);
}

TEST_CASE("property: order-insensitive sum is identical under permutation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + trial % 60);
    for (auto& x : v) x = d(rng) * std::pow(10.0, trial % 7 - 3);
    const double reference = order_insensitive_sum(v);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(v.begin(), v.end(), rng);
      REQUIRE(order_insensitive_sum(v) == reference);
    }
  }
}

TEST_CASE("order-insensitive sum of nothing is zero") {
  CHECK(order_insensitive_sum({}) == 0.0);
}
