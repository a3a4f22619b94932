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

#ifndef DIMEVAL_AGREEMENT_HPP_
#define DIMEVAL_AGREEMENT_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimeval/model.hpp"
#include "dimeval/text.hpp"

namespace dimeval {

struct RatingKey {
  std::string record_id;
  std::size_t tuple_index = 0;

  friend auto operator<=>(const RatingKey&, const RatingKey&) = default;
};

struct AnnotatorRatings {
  std::string annotator;
  std::map<RatingKey, VAPair> ratings;

  // Keys every tuple of every record by (record id, position in the record).
  static AnnotatorRatings from_dataset(const Dataset& dataset,
                                       std::string annotator);
};

struct TupleAgreement {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Categorical tuple F1 with `reference` as gold and `other` as prediction.
// VA is ignored. Throws kSubtaskMismatch or kKeyMismatch (record ID sets
// differ).
TupleAgreement tuple_agreement_f1(const Dataset& reference,
                                  const Dataset& other, Subtask subtask,
                                  const NormalizeOptions& options = {});

enum class MeanReference {
  kInclusive,   // compare against the mean of all annotators
  kLeaveOneOut  // compare against the mean of the other annotators
};

struct AnnotatorDeviation {
  std::string annotator;
  double rmse_valence = 0.0;
  double rmse_arousal = 0.0;
};

struct VaAgreement {
  std::vector<AnnotatorDeviation> annotators;  // input order
  double average_valence = 0.0;
  double average_arousal = 0.0;
};

// Per-annotator RMSE against the per-key mean rating, valence and arousal
// separately, plus the mean over annotators. Throws kTooFewAnnotators,
// kKeyMismatch or kEmptyInput.
VaAgreement va_agreement_rmse(std::span<const AnnotatorRatings> ratings,
                              MeanReference reference =
                                  MeanReference::kInclusive);

// Coordinate-wise mean rounded half-up to hundredths. Throws kEmptyInput.
VAPair aggregate_va(std::span<const VAPair> ratings);

struct AgreementReport {
  std::vector<std::string> annotators;
  // tuple_f1[i][j]: annotator i as reference, annotator j as prediction.
  std::vector<std::vector<double>> tuple_f1;
  std::optional<VaAgreement> va;
  MeanReference reference = MeanReference::kInclusive;

  std::string to_json(int precision) const;
};

}  // namespace dimeval

#endif  // DIMEVAL_AGREEMENT_HPP_
