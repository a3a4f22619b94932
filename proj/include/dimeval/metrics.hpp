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

#ifndef DIMEVAL_METRICS_HPP_
#define DIMEVAL_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dimeval/io.hpp"
#include "dimeval/model.hpp"
#include "dimeval/text.hpp"

namespace dimeval {

struct MetricConfig {
  // Largest Euclidean distance on the [1, 9] x [1, 9] square: sqrt(8^2 + 8^2).
  static constexpr double kMaxDistance = 11.313708498984760390;
  static constexpr int kDefaultPrecision = 4;

  int report_precision = kDefaultPrecision;
};

// Euclidean VA distance scaled into [0, 1] by kMaxDistance. Symmetric.
double va_distance(const VAPair& pred, const VAPair& gold);

struct RegressionScore {
  double rmse = 0.0;
  // Supplementary single-dimension errors; not part of the official metric.
  double rmse_valence = 0.0;
  double rmse_arousal = 0.0;
  std::size_t instance_count = 0;
  std::vector<std::string> warnings;
};

// Pooled RMSE over (gold, pred) pairs. Throws Error(kEmptyInput).
RegressionScore rmse_va(std::span<const VaPairing> pairs);

enum class MatchPolicy {
  kOptimal,  // max-cardinality, max-total-cTP assignment per class
  kGreedy,   // each prediction takes the first free gold tuple, file order
};

struct MatchOptions {
  NormalizeOptions normalize;
  MatchPolicy policy = MatchPolicy::kOptimal;
  // Treat every categorical match as VA-perfect (distance 0).
  bool ignore_va = false;
};

struct MatchedPair {
  std::size_t gold;  // index into the gold list
  std::size_t pred;  // index into the prediction list
  double distance;
  double ctp;
};

struct Matching {
  std::vector<MatchedPair> pairs;  // ordered by gold index
  std::vector<std::size_t> unmatched_gold;
  std::vector<std::size_t> unmatched_pred;

  double total_ctp() const;
};

// Normalized categorical identity of a tuple: aspect, plus opinion and
// category where the subtask has them.
std::string categorical_key(const SentimentTuple& tuple,
                            const NormalizeOptions& options = {});

Matching match_tuples(std::span<const SentimentTuple> gold,
                      std::span<const SentimentTuple> pred,
                      const MatchOptions& options = {});

inline constexpr std::size_t kBruteForceClassLimit = 6;

// Exhaustive reference matcher. Throws Error(kTooLarge) when a class has more
// than kBruteForceClassLimit tuples on its smaller side, or when a class
// would need more than 10^7 assignments.
Matching brute_force_match(std::span<const SentimentTuple> gold,
                           std::span<const SentimentTuple> pred,
                           const MatchOptions& options = {});

struct SentenceDetail {
  std::string id;
  std::size_t gold_count = 0;
  std::size_t pred_count = 0;
  std::size_t matched = 0;
  double ctp = 0.0;
  bool in_gold = true;
};

struct ExtractionScore {
  double total_ctp = 0.0;
  std::size_t gold_count = 0;
  std::size_t pred_count = 0;
  std::size_t matched_count = 0;
  double c_precision = 0.0;
  double c_recall = 0.0;
  double c_f1 = 0.0;
  double cat_precision = 0.0;
  double cat_recall = 0.0;
  double cat_f1 = 0.0;
  std::vector<std::string> warnings;
  std::vector<SentenceDetail> sentences;  // filled when requested
};

struct ScoreOptions {
  MatchOptions match;
  unsigned threads = 1;
  bool per_sentence = false;
};

// Throws Error(kSubtaskMismatch) unless gold, pred and `subtask` agree on
// DimASTE or DimASQP.
ExtractionScore score_extraction(const GoldDataset& gold,
                                 const PredictionSet& pred, Subtask subtask,
                                 const ScoreOptions& options = {});

// Aligns then applies rmse_va. Alignment errors propagate.
RegressionScore score_regression(const GoldDataset& gold,
                                 const PredictionSet& pred,
                                 const NormalizeOptions& options = {});

// Harmonic mean with the 0/0 -> 0 convention.
double f1_score(double precision, double recall);

// Serialized score of one (team, dataset, subtask) run. Also the input format
// of leaderboards.
struct ScoreReport {
  Subtask subtask = Subtask::kDimASR;
  std::string metric;
  double score = 0.0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::vector<std::string> warnings;
  std::optional<std::string> team;
  std::optional<std::string> dataset;
  bool baseline = false;
  std::vector<SentenceDetail> sentences;

  std::string to_json(int precision = MetricConfig::kDefaultPrecision) const;

  // Reads the fields needed for ranking. Throws Error(kSchemaError).
  static ScoreReport from_json(std::string_view json_text);
};

ScoreReport make_report(const ExtractionScore& score, Subtask subtask);
ScoreReport make_report(const RegressionScore& score);

}  // namespace dimeval

#endif  // DIMEVAL_METRICS_HPP_
