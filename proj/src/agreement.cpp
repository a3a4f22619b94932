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

#include "dimeval/agreement.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_map>

#include "dimeval/error.hpp"
#include "dimeval/json_writer.hpp"
#include "dimeval/metrics.hpp"
#include "dimeval/numeric.hpp"

namespace dimeval {

AnnotatorRatings AnnotatorRatings::from_dataset(const Dataset& dataset,
                                                std::string annotator) {
  AnnotatorRatings out;
  out.annotator = std::move(annotator);
  for (const auto& record : dataset.records) {
    for (std::size_t i = 0; i < record.tuples.size(); ++i) {
      out.ratings.emplace(RatingKey{record.id, i}, record.tuples[i].va());
    }
  }
  return out;
}

TupleAgreement tuple_agreement_f1(const Dataset& reference,
                                  const Dataset& other, Subtask subtask,
                                  const NormalizeOptions& options) {
  if (reference.subtask != subtask || other.subtask != subtask) {
    throw Error(ErrorCode::kSubtaskMismatch,
                "annotator files must both be " +
                    std::string(to_string(subtask)));
  }
  std::unordered_map<std::string_view, const SentenceRecord*> other_by_id;
  for (const auto& r : other.records) other_by_id.emplace(r.id, &r);
  if (other_by_id.size() != reference.records.size()) {
    throw Error(ErrorCode::kKeyMismatch,
                "annotator files cover different numbers of records (" +
                    std::to_string(reference.records.size()) + " vs " +
                    std::to_string(other_by_id.size()) + ")");
  }

  MatchOptions match;
  match.normalize = options;
  match.ignore_va = true;
  std::size_t matched = 0;
  std::size_t reference_count = 0;
  std::size_t other_count = 0;
  for (const auto& r : reference.records) {
    const auto it = other_by_id.find(r.id);
    if (it == other_by_id.end()) {
      throw Error(ErrorCode::kKeyMismatch,
                  "record '" + r.id + "' is missing from one annotator file");
    }
    matched += match_tuples(r.tuples, it->second->tuples, match).pairs.size();
    reference_count += r.tuples.size();
    other_count += it->second->tuples.size();
  }

  TupleAgreement out;
  if (other_count > 0) {
    out.precision = static_cast<double>(matched) / other_count;
  }
  if (reference_count > 0) {
    out.recall = static_cast<double>(matched) / reference_count;
  }
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

VaAgreement va_agreement_rmse(std::span<const AnnotatorRatings> ratings,
                              MeanReference reference) {
  if (ratings.size() < 2) {
    throw Error(ErrorCode::kTooFewAnnotators,
                "VA agreement needs at least two annotators");
  }
  const auto& keys = ratings.front().ratings;
  if (keys.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no ratings to compare");
  }
  for (const auto& a : ratings) {
    bool same = a.ratings.size() == keys.size();
    for (auto i = a.ratings.begin(), j = keys.begin();
         same && i != a.ratings.end(); ++i, ++j) {
      same = i->first == j->first;
    }
    if (!same) {
      throw Error(ErrorCode::kKeyMismatch,
                  "annotator '" + a.annotator +
                      "' rates a different set of (record, tuple) keys than '" +
                      ratings.front().annotator + "'");
    }
  }

  // With n annotators and per-key sum S, an annotator rating r deviates from
  // the inclusive mean by (n*r - S) / n and from the leave-one-out mean by
  // (n*r - S) / (n - 1). The numerators are integers in hundredths.
  const auto n = static_cast<std::int64_t>(ratings.size());
  const double denominator =
      100.0 * static_cast<double>(reference == MeanReference::kInclusive ? n
                                                                         : n - 1);
  std::vector<std::int64_t> valence_sum(keys.size(), 0);
  std::vector<std::int64_t> arousal_sum(keys.size(), 0);
  for (const auto& a : ratings) {
    std::size_t k = 0;
    for (const auto& [key, va] : a.ratings) {
      valence_sum[k] += va.valence_hundredths();
      arousal_sum[k] += va.arousal_hundredths();
      ++k;
    }
  }

  VaAgreement out;
  std::vector<double> valence_rmses;
  std::vector<double> arousal_rmses;
  const auto key_count = static_cast<double>(keys.size());
  for (const auto& a : ratings) {
    std::int64_t valence_sq = 0;
    std::int64_t arousal_sq = 0;
    std::size_t k = 0;
    for (const auto& [key, va] : a.ratings) {
      const std::int64_t dv = n * va.valence_hundredths() - valence_sum[k];
      const std::int64_t da = n * va.arousal_hundredths() - arousal_sum[k];
      valence_sq += dv * dv;
      arousal_sq += da * da;
      ++k;
    }
    AnnotatorDeviation d;
    d.annotator = a.annotator;
    d.rmse_valence =
        std::sqrt(static_cast<double>(valence_sq) / key_count) / denominator;
    d.rmse_arousal =
        std::sqrt(static_cast<double>(arousal_sq) / key_count) / denominator;
    valence_rmses.push_back(d.rmse_valence);
    arousal_rmses.push_back(d.rmse_arousal);
    out.annotators.push_back(std::move(d));
  }
  out.average_valence =
      order_insensitive_sum(valence_rmses) / static_cast<double>(n);
  out.average_arousal =
      order_insensitive_sum(arousal_rmses) / static_cast<double>(n);
  return out;
}

VAPair aggregate_va(std::span<const VAPair> ratings) {
  if (ratings.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot aggregate zero ratings");
  }
  std::int64_t valence = 0;
  std::int64_t arousal = 0;
  for (const auto& va : ratings) {
    valence += va.valence_hundredths();
    arousal += va.arousal_hundredths();
  }
  // floor(S/n + 1/2) for S >= 0
  const auto n = static_cast<std::int64_t>(ratings.size());
  auto mean = [n](std::int64_t sum) {
    return static_cast<int>((2 * sum + n) / (2 * n));
  };
  return VAPair::from_hundredths(mean(valence), mean(arousal));
}

std::string AgreementReport::to_json(int precision) const {
  JsonWriter w;
  w.begin_object();
  w.key("annotators").begin_array();
  for (const auto& a : annotators) w.value(a);
  w.end_array();
  w.key("tuple_f1").begin_array();
  for (const auto& row : tuple_f1) {
    w.begin_array();
    for (double v : row) w.fixed(v, precision);
    w.end_array();
  }
  w.end_array();
  w.key("va_reference")
      .value(reference == MeanReference::kInclusive ? "mean_of_all"
                                                    : "leave_one_out");
  w.key("va_agreement");
  if (!va) {
    w.null();
  } else {
    w.begin_object();
    w.key("per_annotator").begin_array();
    for (const auto& d : va->annotators) {
      w.begin_object();
      w.key("annotator").value(d.annotator);
      w.key("rmse_valence").fixed(d.rmse_valence, precision);
      w.key("rmse_arousal").fixed(d.rmse_arousal, precision);
      w.end_object();
    }
    w.end_array();
    w.key("average_rmse_valence").fixed(va->average_valence, precision);
    w.key("average_rmse_arousal").fixed(va->average_arousal, precision);
    w.end_object();
  }
  w.end_object();
  return w.str();
}

}  // namespace dimeval
