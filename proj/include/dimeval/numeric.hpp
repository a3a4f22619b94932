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

#ifndef DIMEVAL_NUMERIC_HPP_
#define DIMEVAL_NUMERIC_HPP_

#include <span>
#include <string>

namespace dimeval {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

// Sum that does not depend on the order of `values`: the terms are sorted
// before compensated accumulation, so any permutation gives the same bits.
double order_insensitive_sum(std::span<const double> values);

// Rounds half away from zero to `places` decimals.
double round_half_up(double x, int places);

// Rounds half-up, then prints exactly `places` fractional digits.
std::string format_fixed(double x, int places);

// Reports never use more than this many decimals.
inline constexpr int kMaxReportPrecision = 12;

}  // namespace dimeval

#endif  // DIMEVAL_NUMERIC_HPP_
