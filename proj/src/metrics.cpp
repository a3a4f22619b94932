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

#include "dimeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "dimeval/assignment.hpp"
#include "dimeval/error.hpp"
#include "dimeval/json_writer.hpp"
#include "dimeval/numeric.hpp"

namespace dimeval {

namespace {

// kMaxDistance^2 expressed in squared hundredths.
constexpr double kMaxSquaredHundredths = 128.0 * 10000.0;

std::int64_t squared_gap(int a, int b) {
  const std::int64_t d = static_cast<std::int64_t>(a) - b;
  return d * d;
}

struct EquivalenceClass {
  std::vector<std::size_t> gold;
  std::vector<std::size_t> pred;
};

std::map<std::string, EquivalenceClass> partition(
    std::span<const SentimentTuple> gold, std::span<const SentimentTuple> pred,
    const NormalizeOptions& options) {
  std::map<std::string, EquivalenceClass> classes;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    classes[categorical_key(gold[i], options)].gold.push_back(i);
  }
  for (std::size_t j = 0; j < pred.size(); ++j) {
    classes[categorical_key(pred[j], options)].pred.push_back(j);
  }
  return classes;
}

MatchedPair pair_of(std::span<const SentimentTuple> gold,
                      std::span<const SentimentTuple> pred, std::size_t g,
                      std::size_t p, bool ignore_va) {
  const double distance =
      ignore_va ? 0.0 : va_distance(pred[p].va(), gold[g].va());
  return {g, p, distance, 1.0 - distance};
}

// Fills unmatched lists and orders pairs by gold index.
Matching finish(std::vector<MatchedPair> pairs, std::size_t gold_size,
                std::size_t pred_size) {
  Matching m;
  std::sort(pairs.begin(), pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) {
              return a.gold < b.gold;
            });
  std::vector<bool> gold_used(gold_size, false), pred_used(pred_size, false);
  for (const auto& p : pairs) {
    gold_used[p.gold] = true;
    pred_used[p.pred] = true;
  }
  for (std::size_t i = 0; i < gold_size; ++i) {
    if (!gold_used[i]) m.unmatched_gold.push_back(i);
  }
  for (std::size_t j = 0; j < pred_size; ++j) {
    if (!pred_used[j]) m.unmatched_pred.push_back(j);
  }
  m.pairs = std::move(pairs);
  return m;
}

void match_class_optimal(const EquivalenceClass& cls,
                         std::span<const SentimentTuple> gold,
                         std::span<const SentimentTuple> pred, bool ignore_va,
                         std::vector<MatchedPair>& out) {
  CostMatrix cost(cls.gold.size(), cls.pred.size());
  for (std::size_t r = 0; r < cls.gold.size(); ++r) {
    for (std::size_t c = 0; c < cls.pred.size(); ++c) {
      cost.at(r, c) = ignore_va ? 0.0
                                : va_distance(pred[cls.pred[c]].va(),
                                              gold[cls.gold[r]].va());
    }
  }
  const auto assignment = solve_assignment(cost);
  for (std::size_t r = 0; r < assignment.size(); ++r) {
    if (assignment[r] == kUnassigned) continue;
    out.push_back(pair_of(gold, pred, cls.gold[r],
                            cls.pred[static_cast<std::size_t>(assignment[r])],
                            ignore_va));
  }
}

void match_class_greedy(const EquivalenceClass& cls,
                        std::span<const SentimentTuple> gold,
                        std::span<const SentimentTuple> pred, bool ignore_va,
                        std::vector<MatchedPair>& out) {
  const std::size_t n = std::min(cls.gold.size(), cls.pred.size());
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(pair_of(gold, pred, cls.gold[k], cls.pred[k], ignore_va));
  }
}

// Depth-first enumeration of injective maps from the smaller side into the
// larger side of one class.
class Enumerator {
 public:
  Enumerator(const std::vector<std::vector<double>>& ctp) : ctp_(ctp) {
    used_.assign(ctp.empty() ? 0 : ctp[0].size(), false);
    current_.assign(ctp.size(), 0);
  }

  std::vector<std::size_t> run() {
    visit(0, 0.0);
    return best_;
  }

 private:
  void visit(std::size_t row, double total) {
    if (row == ctp_.size()) {
      if (best_.empty() || total > best_total_) {
        best_total_ = total;
        best_ = current_;
      }
      return;
    }
    for (std::size_t c = 0; c < used_.size(); ++c) {
      if (used_[c]) continue;
      used_[c] = true;
      current_[row] = c;
      visit(row + 1, total + ctp_[row][c]);
      used_[c] = false;
    }
  }

  const std::vector<std::vector<double>>& ctp_;
  std::vector<bool> used_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double best_total_ = 0.0;
};

double permutations(std::size_t n, std::size_t k) {
  double count = 1.0;
  for (std::size_t i = 0; i < k; ++i) count *= static_cast<double>(n - i);
  return count;
}

}  // namespace

double va_distance(const VAPair& pred, const VAPair& gold) {
  const std::int64_t squared =
      squared_gap(pred.valence_hundredths(), gold.valence_hundredths()) +
      squared_gap(pred.arousal_hundredths(), gold.arousal_hundredths());
  return std::sqrt(static_cast<double>(squared) / kMaxSquaredHundredths);
}

RegressionScore rmse_va(std::span<const VaPairing> pairs) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "RMSE needs at least one instance");
  }
  // Squared errors in hundredths are integers, so the sums are exact and
  // independent of instance order.
  std::int64_t valence = 0;
  std::int64_t arousal = 0;
  for (const auto& p : pairs) {
    valence += squared_gap(p.pred.valence_hundredths(),
                           p.gold.valence_hundredths());
    arousal += squared_gap(p.pred.arousal_hundredths(),
                           p.gold.arousal_hundredths());
  }
  const double n = static_cast<double>(pairs.size());
  RegressionScore score;
  score.instance_count = pairs.size();
  score.rmse = std::sqrt(static_cast<double>(valence + arousal) / n) / 100.0;
  score.rmse_valence = std::sqrt(static_cast<double>(valence) / n) / 100.0;
  score.rmse_arousal = std::sqrt(static_cast<double>(arousal) / n) / 100.0;
  return score;
}

double Matching::total_ctp() const {
  std::vector<double> values;
  values.reserve(pairs.size());
  for (const auto& p : pairs) values.push_back(p.ctp);
  return order_insensitive_sum(values);
}

std::string categorical_key(const SentimentTuple& tuple,
                            const NormalizeOptions& options) {
  std::string key = normalize_span(tuple.aspect(), options);
  if (tuple.opinion()) {
    key += '\x1f';
    key += normalize_span(*tuple.opinion(), options);
  }
  if (tuple.category()) {
    key += '\x1f';
    key += normalize_span(*tuple.category(), options);
  }
  return key;
}

Matching match_tuples(std::span<const SentimentTuple> gold,
                      std::span<const SentimentTuple> pred,
                      const MatchOptions& options) {
  std::vector<MatchedPair> pairs;
  for (const auto& [key, cls] : partition(gold, pred, options.normalize)) {
    if (cls.gold.empty() || cls.pred.empty()) continue;
    if (options.policy == MatchPolicy::kGreedy) {
      match_class_greedy(cls, gold, pred, options.ignore_va, pairs);
    } else {
      match_class_optimal(cls, gold, pred, options.ignore_va, pairs);
    }
  }
  return finish(std::move(pairs), gold.size(), pred.size());
}

Matching brute_force_match(std::span<const SentimentTuple> gold,
                           std::span<const SentimentTuple> pred,
                           const MatchOptions& options) {
  std::vector<MatchedPair> pairs;
  for (const auto& [key, cls] : partition(gold, pred, options.normalize)) {
    if (cls.gold.empty() || cls.pred.empty()) continue;
    const bool gold_rows = cls.gold.size() <= cls.pred.size();
    const auto& rows = gold_rows ? cls.gold : cls.pred;
    const auto& cols = gold_rows ? cls.pred : cls.gold;
    if (rows.size() > kBruteForceClassLimit ||
        permutations(cols.size(), rows.size()) > 1e7) {
      throw Error(ErrorCode::kTooLarge,
                  "class with " + std::to_string(cls.gold.size()) +
                      " gold and " + std::to_string(cls.pred.size()) +
                      " predicted tuples exceeds the enumeration bound");
    }
    std::vector<std::vector<double>> ctp(rows.size(),
                                         std::vector<double>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::size_t g = gold_rows ? rows[r] : cols[c];
        const std::size_t p = gold_rows ? cols[c] : rows[r];
        ctp[r][c] = pair_of(gold, pred, g, p, options.ignore_va).ctp;
      }
    }
    const auto best = Enumerator(ctp).run();
    for (std::size_t r = 0; r < best.size(); ++r) {
      const std::size_t g = gold_rows ? rows[r] : cols[best[r]];
      const std::size_t p = gold_rows ? cols[best[r]] : rows[r];
      pairs.push_back(pair_of(gold, pred, g, p, options.ignore_va));
    }
  }
  return finish(std::move(pairs), gold.size(), pred.size());
}

double f1_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

ExtractionScore score_extraction(const GoldDataset& gold,
                                 const PredictionSet& pred, Subtask subtask,
                                 const ScoreOptions& options) {
  if (!is_extraction(subtask) || gold.subtask != subtask ||
      pred.subtask != subtask) {
    throw Error(ErrorCode::kSubtaskMismatch,
                "extraction scoring needs DimASTE or DimASQP gold and "
                "predictions of the same subtask (got gold " +
                    std::string(to_string(gold.subtask)) + ", predictions " +
                    std::string(to_string(pred.subtask)) + ", requested " +
                    std::string(to_string(subtask)) + ")");
  }

  std::unordered_map<std::string_view, const SentenceRecord*> pred_by_id;
  for (const auto& r : pred.records) pred_by_id.emplace(r.id, &r);
  std::unordered_map<std::string_view, bool> gold_ids;
  for (const auto& r : gold.records) gold_ids.emplace(r.id, true);

  struct Item {
    const SentenceRecord* gold = nullptr;
    const SentenceRecord* pred = nullptr;
  };
  std::vector<Item> items;
  std::size_t missing_predictions = 0;
  for (const auto& g : gold.records) {
    const auto it = pred_by_id.find(g.id);
    const SentenceRecord* p = it == pred_by_id.end() ? nullptr : it->second;
    if (p == nullptr) ++missing_predictions;
    items.push_back({&g, p});
  }
  std::vector<std::string> unknown_ids;
  for (const auto& p : pred.records) {
    if (!gold_ids.contains(p.id)) {
      items.push_back({nullptr, &p});
      unknown_ids.push_back(p.id);
    }
  }

  struct Outcome {
    std::vector<double> ctps;
    std::size_t matched = 0;
  };
  std::vector<Outcome> outcomes(items.size());
  auto work = [&](std::size_t i) {
    const Item& item = items[i];
    if (item.gold == nullptr || item.pred == nullptr) return;
    const Matching m =
        match_tuples(item.gold->tuples, item.pred->tuples, options.match);
    outcomes[i].matched = m.pairs.size();
    for (const auto& pair : m.pairs) outcomes[i].ctps.push_back(pair.ctp);
  };

  const std::size_t workers = std::clamp<std::size_t>(
      options.threads, 1, std::max<std::size_t>(items.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) work(i);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < items.size(); i += workers) work(i);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  ExtractionScore score;
  std::vector<double> all_ctps;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& item = items[i];
    const Outcome& out = outcomes[i];
    const std::size_t g = item.gold ? item.gold->tuples.size() : 0;
    const std::size_t p = item.pred ? item.pred->tuples.size() : 0;
    score.gold_count += g;
    score.pred_count += p;
    score.matched_count += out.matched;
    all_ctps.insert(all_ctps.end(), out.ctps.begin(), out.ctps.end());
    if (options.per_sentence) {
      score.sentences.push_back({item.gold ? item.gold->id : item.pred->id, g,
                                 p, out.matched,
                                 order_insensitive_sum(out.ctps),
                                 item.gold != nullptr});
    }
  }
  score.total_ctp = order_insensitive_sum(all_ctps);

  auto ratio = [](double num, std::size_t den) {
    return den == 0 ? 0.0 : num / static_cast<double>(den);
  };
  score.c_precision = ratio(score.total_ctp, score.pred_count);
  score.c_recall = ratio(score.total_ctp, score.gold_count);
  score.c_f1 = f1_score(score.c_precision, score.c_recall);
  const auto matched = static_cast<double>(score.matched_count);
  score.cat_precision = ratio(matched, score.pred_count);
  score.cat_recall = ratio(matched, score.gold_count);
  score.cat_f1 = f1_score(score.cat_precision, score.cat_recall);

  if (missing_predictions > 0) {
    score.warnings.push_back(std::to_string(missing_predictions) +
                             " gold record(s) have no prediction line and "
                             "were scored as empty predictions");
  }
  for (const auto& id : unknown_ids) {
    score.warnings.push_back("prediction for unknown ID '" + id +
                             "' counted toward predicted tuples only");
  }
  return score;
}

RegressionScore score_regression(const GoldDataset& gold,
                                 const PredictionSet& pred,
                                 const NormalizeOptions& options) {
  const RegressionAlignment alignment =
      align_for_regression(gold, pred, options);
  RegressionScore score = rmse_va(alignment.pairs);
  for (const auto& id : alignment.unknown_prediction_ids) {
    score.warnings.push_back("prediction for unknown ID '" + id +
                             "' ignored");
  }
  return score;
}

// ---------------------------------------------------------------------------
// ScoreReport

ScoreReport make_report(const ExtractionScore& score, Subtask subtask) {
  ScoreReport r;
  r.subtask = subtask;
  r.metric = "cF1";
  r.score = score.c_f1;
  r.values = {{"cPrecision", score.c_precision},
              {"cRecall", score.c_recall},
              {"cF1", score.c_f1},
              {"totalCTP", score.total_ctp},
              {"precision", score.cat_precision},
              {"recall", score.cat_recall},
              {"f1", score.cat_f1}};
  r.counts = {{"gold", static_cast<std::int64_t>(score.gold_count)},
              {"predicted", static_cast<std::int64_t>(score.pred_count)},
              {"matched", static_cast<std::int64_t>(score.matched_count)}};
  r.warnings = score.warnings;
  r.sentences = score.sentences;
  return r;
}

ScoreReport make_report(const RegressionScore& score) {
  ScoreReport r;
  r.subtask = Subtask::kDimASR;
  r.metric = "RMSE";
  r.score = score.rmse;
  r.values = {{"RMSE", score.rmse},
              {"RMSE_valence", score.rmse_valence},
              {"RMSE_arousal", score.rmse_arousal}};
  r.counts = {{"instances", static_cast<std::int64_t>(score.instance_count)}};
  r.warnings = score.warnings;
  return r;
}

std::string ScoreReport::to_json(int precision) const {
  JsonWriter w;
  w.begin_object();
  w.key("subtask").value(to_string(subtask));
  w.key("metric").value(metric);
  w.key("score").fixed(score, precision);
  w.key("precision").value(precision);
  if (team) w.key("team").value(*team);
  if (dataset) w.key("dataset").value(*dataset);
  if (baseline) w.key("baseline").value(true);
  w.key("values").begin_object();
  for (const auto& [name, v] : values) w.key(name).fixed(v, precision);
  w.end_object();
  w.key("counts").begin_object();
  for (const auto& [name, n] : counts) w.key(name).value(n);
  w.end_object();
  w.key("warnings").begin_array();
  for (const auto& warning : warnings) w.value(warning);
  w.end_array();
  if (!sentences.empty()) {
    w.key("sentences").begin_array();
    for (const auto& s : sentences) {
      w.begin_object();
      w.key("id").value(s.id);
      w.key("gold").value(s.gold_count);
      w.key("predicted").value(s.pred_count);
      w.key("matched").value(s.matched);
      w.key("cTP").fixed(s.ctp, precision);
      if (!s.in_gold) w.key("unknown_id").value(true);
      w.end_object();
    }
    w.end_array();
  }
  w.end_object();
  return w.str();
}

ScoreReport ScoreReport::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string("score report is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, "score report must be an object");
  }
  ScoreReport r;
  const auto subtask = doc.find("subtask");
  if (subtask == doc.end() || !subtask->is_string() ||
      !parse_subtask(subtask->get<std::string>())) {
    throw Error(ErrorCode::kSchemaError,
                "score report needs a \"subtask\" of DimASR, DimASTE or "
                "DimASQP");
  }
  r.subtask = *parse_subtask(subtask->get<std::string>());
  const auto score = doc.find("score");
  if (score == doc.end() || !score->is_number()) {
    throw Error(ErrorCode::kSchemaError,
                "score report needs a numeric \"score\"");
  }
  r.score = score->get<double>();
  if (!std::isfinite(r.score) || r.score < 0.0) {
    throw Error(ErrorCode::kSchemaError,
                "score report \"score\" must be a finite non-negative number");
  }
  r.metric = r.subtask == Subtask::kDimASR ? "RMSE" : "cF1";
  if (auto it = doc.find("metric"); it != doc.end() && it->is_string()) {
    r.metric = it->get<std::string>();
  }
  if (auto it = doc.find("team"); it != doc.end() && it->is_string()) {
    r.team = it->get<std::string>();
  }
  if (auto it = doc.find("dataset"); it != doc.end() && it->is_string()) {
    r.dataset = it->get<std::string>();
  }
  if (auto it = doc.find("baseline"); it != doc.end() && it->is_boolean()) {
    r.baseline = it->get<bool>();
  }
  return r;
}

}  // namespace dimeval
