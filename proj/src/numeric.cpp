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

#include "dimeval/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace dimeval {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

double order_insensitive_sum(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  CompensatedSum sum;
  for (double v : sorted) sum.add(v);
  return sum.value();
}

double round_half_up(double x, int places) {
  const double scale = std::pow(10.0, places);
  const double scaled = std::fabs(x) * scale;
  const double out = std::floor(scaled + 0.5) / scale;
  return std::signbit(x) ? -out : out;
}

std::string format_fixed(double x, int places) {
  places = std::clamp(places, 0, kMaxReportPrecision);
  double r = round_half_up(x, places);
  if (r == 0.0) r = 0.0;  // drop negative zero
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", places, r);
  return buffer;
}

}  // namespace dimeval
