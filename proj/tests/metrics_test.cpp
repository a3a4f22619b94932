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
#include <random>
#include <string>
#include <vector>

#include "dimeval/error.hpp"
#include "dimeval/io.hpp"
#include "dimeval/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dimeval;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected dimeval::Error");
  return ErrorCode::kIoError;
}

VAPair va(int v, int a) { return VAPair::from_hundredths(v, a); }

SentimentTuple tri(const std::string& a, const std::string& o, int v, int ar) {
  return SentimentTuple::triplet(a, o, va(v, ar));
}

Dataset one_sentence(Subtask subtask, std::vector<SentimentTuple> tuples) {
  Dataset d;
  d.subtask = subtask;
  d.records.push_back({"s1", std::nullopt, std::move(tuples)});
  return d;
}

Dataset load(const std::string& name, Subtask subtask) {
  auto r = load_predictions(testing::fixture(name), subtask);
  REQUIRE(r.ok());
  return r.dataset;
}

}  // namespace

TEST_CASE("distance fixtures") {
  CHECK(va_distance(va(800, 800), va(700, 700)) == 0.125);
  CHECK(va_distance(va(750, 750), va(350, 350)) == 0.5);
  CHECK(va_distance(va(100, 100), va(900, 900)) == 1.0);
  CHECK(va_distance(va(412, 633), va(412, 633)) == 0.0);
}

TEST_CASE("property: distance is a bounded symmetric metric") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20000; ++i) {
    const auto a = testing::random_va(rng);
    const auto b = testing::random_va(rng);
    const double d = va_distance(a, b);
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 1.0);
    REQUIRE(d == va_distance(b, a));
    REQUIRE(va_distance(a, a) == 0.0);
  }
}

TEST_CASE("RMSE examples") {
  const std::vector<VaPairing> single = {{va(500, 500), va(600, 500)}};
  CHECK(rmse_va(single).rmse == 1.0);
  const std::vector<VaPairing> two = {{va(500, 500), va(600, 600)},
                                      {va(300, 300), va(300, 300)}};
  CHECK(rmse_va(two).rmse == 1.0);
  CHECK(rmse_va(two).instance_count == 2);
  CHECK(rmse_va(two).rmse_valence == doctest::Approx(std::sqrt(0.5)));
  const std::vector<VaPairing> perfect = {{va(812, 145), va(812, 145)}};
  CHECK(rmse_va(perfect).rmse == 0.0);
  CHECK(code_of([] { rmse_va({}); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("RMSE fixture of ten instances matches the decimal oracle") {
  const int errors[10][2] = {{0, 0},    {100, 0},  {-50, 25}, {13, -7},
                             {300, 300}, {-1, 1},  {0, -250}, {77, 77},
                             {-400, 0}, {5, 5}};
  std::vector<VaPairing> pairs;
  for (int i = 0; i < 10; ++i) {
    pairs.push_back({va(500, 450), va(500 + errors[i][0], 450 + errors[i][1])});
  }
  const double got = rmse_va(pairs).rmse;
  CHECK(std::abs(got - testing::oracle_rmse(pairs)) < 1e-9);
}

TEST_CASE("property: RMSE matches the oracle and ignores order") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> n(1, 100);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<VaPairing> pairs(static_cast<std::size_t>(n(rng)),
                                 {va(100, 100), va(100, 100)});
    for (auto& p : pairs) p = {testing::random_va(rng), testing::random_va(rng)};
    const auto score = rmse_va(pairs);
    REQUIRE(std::abs(score.rmse - testing::oracle_rmse(pairs)) < 1e-9);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    REQUIRE(rmse_va(pairs).rmse == score.rmse);
  }
}

TEST_CASE("worked example matches to the documented pairs") {
  const std::vector<SentimentTuple> gold = {
      tri("food", "good", 700, 700), tri("soup", "spicy", 350, 350),
      tri("staff", "always friendly", 750, 750)};
  const std::vector<SentimentTuple> pred = {
      tri("food", "good", 800, 800), tri("soup", "spicy", 750, 750),
      tri("staff", "friendly", 700, 700), tri("staff", "good", 700, 700)};
  const auto m = match_tuples(gold, pred);
  REQUIRE(m.pairs.size() == 2);
  CHECK(m.pairs[0].gold == 0);
  CHECK(m.pairs[0].ctp == 0.875);
  CHECK(m.pairs[1].gold == 1);
  CHECK(m.pairs[1].ctp == 0.5);
  CHECK(m.unmatched_gold == std::vector<std::size_t>{2});
  CHECK(m.unmatched_pred == std::vector<std::size_t>{2, 3});
  CHECK(m.total_ctp() == 1.375);
  CHECK(brute_force_match(gold, pred).total_ctp() == 1.375);
}

TEST_CASE("worked example scores from files") {
  for (auto [subtask, prefix] :
       {std::pair{Subtask::kDimASTE, "worked_example_aste"},
        std::pair{Subtask::kDimASQP, "worked_example_asqp"}}) {
    const auto gold = load(std::string(prefix) + "_gold.jsonl", subtask);
    const auto pred = load(std::string(prefix) + "_pred.jsonl", subtask);
    const auto s = score_extraction(gold, pred, subtask);
    CHECK(s.total_ctp == 1.375);
    CHECK(s.gold_count == 3);
    CHECK(s.pred_count == 4);
    CHECK(s.matched_count == 2);
    CHECK(std::abs(s.c_recall - 0.4583) <= 1e-4);
    CHECK(std::abs(s.c_precision - 0.3438) <= 1e-4);
    CHECK(std::abs(s.c_f1 - 0.3929) <= 5e-4);
    CHECK(s.cat_precision == 0.5);
    CHECK(std::abs(s.cat_recall - 2.0 / 3.0) < 1e-15);
  }
}

TEST_CASE("a prediction pairs with its exact duplicate") {
  const std::vector<SentimentTuple> gold = {tri("food", "good", 700, 700),
                                            tri("food", "good", 300, 300)};
  const std::vector<SentimentTuple> pred = {tri("food", "good", 700, 700)};
  const auto m = match_tuples(gold, pred);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0].gold == 0);
  CHECK(m.pairs[0].ctp == 1.0);
  CHECK(m.unmatched_gold == std::vector<std::size_t>{1});
  // The gold order must not matter.
  const std::vector<SentimentTuple> swapped = {gold[1], gold[0]};
  CHECK(match_tuples(swapped, pred).pairs.at(0).gold == 1);
}

TEST_CASE("greedy policy pairs in file order") {
  const std::vector<SentimentTuple> gold = {tri("food", "good", 700, 700),
                                            tri("food", "good", 300, 300)};
  const std::vector<SentimentTuple> pred = {tri("food", "good", 300, 300),
                                            tri("food", "good", 700, 700)};
  CHECK(match_tuples(gold, pred).total_ctp() == 2.0);
  MatchOptions greedy;
  greedy.policy = MatchPolicy::kGreedy;
  const auto m = match_tuples(gold, pred, greedy);
  REQUIRE(m.pairs.size() == 2);
  CHECK(m.pairs[0].pred == 0);
  CHECK(m.total_ctp() == 1.0);
}

TEST_CASE("categorical identity uses normalized spans") {
  const std::vector<SentimentTuple> gold = {tri("Food", "good", 700, 700)};
  const std::vector<SentimentTuple> pred = {
      tri("  Food ", "good", 700, 700)};
  CHECK(match_tuples(gold, pred).pairs.size() == 1);
  const std::vector<SentimentTuple> lower = {tri("food", "good", 700, 700)};
  CHECK(match_tuples(gold, lower).pairs.empty());
  MatchOptions fold;
  fold.normalize.ignore_case = true;
  CHECK(match_tuples(gold, lower, fold).pairs.size() == 1);
  CHECK(categorical_key(gold[0]) == categorical_key(pred[0]));
}

TEST_CASE("quadruplets need matching categories") {
  const std::vector<SentimentTuple> gold = {SentimentTuple::quadruplet(
      "food", "FOOD#QUALITY", "good", va(700, 700))};
  const std::vector<SentimentTuple> pred = {SentimentTuple::quadruplet(
      "food", "FOOD#PRICES", "good", va(700, 700))};
  CHECK(match_tuples(gold, pred).pairs.empty());
}

TEST_CASE("brute force refuses oversized classes") {
  std::vector<SentimentTuple> many(7, tri("a", "b", 500, 500));
  CHECK(code_of([&] { brute_force_match(many, many); }) ==
        ErrorCode::kTooLarge);
  std::vector<SentimentTuple> wide(40, tri("a", "b", 500, 500));
  std::vector<SentimentTuple> six(6, tri("a", "b", 500, 500));
  CHECK(code_of([&] { brute_force_match(six, wide); }) ==
        ErrorCode::kTooLarge);
  CHECK(brute_force_match(six, std::span(wide).first(8)).total_ctp() == 6.0);
  CHECK(match_tuples(many, wide).total_ctp() == 7.0);
}

TEST_CASE("property: optimal matching equals both enumeration oracles") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto subtask = trial % 2 ? Subtask::kDimASTE : Subtask::kDimASQP;
    const auto inst = testing::random_matching_instance(rng, subtask);
    const double got = match_tuples(inst.gold, inst.pred).total_ctp();
    REQUIRE(std::abs(got - brute_force_match(inst.gold, inst.pred).total_ctp()) <
            1e-12);
    REQUIRE(std::abs(got - testing::oracle_total_ctp(inst.gold, inst.pred)) <
            1e-12);
  }
}

TEST_CASE("property: matching invariants") {
  std::mt19937_64 rng(405);
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = testing::random_matching_instance(rng, Subtask::kDimASTE);
    const auto m = match_tuples(inst.gold, inst.pred);
    REQUIRE(m.pairs.size() + m.unmatched_gold.size() == inst.gold.size());
    REQUIRE(m.pairs.size() + m.unmatched_pred.size() == inst.pred.size());
    for (const auto& p : m.pairs) {
      REQUIRE(p.ctp >= 0.0);
      REQUIRE(p.ctp <= 1.0);
      REQUIRE(p.ctp == 1.0 - p.distance);
      REQUIRE(categorical_key(inst.gold[p.gold]) ==
              categorical_key(inst.pred[p.pred]));
    }
    // Swapping roles keeps the total.
    REQUIRE(match_tuples(inst.pred, inst.gold).total_ctp() == m.total_ctp());
    // Greedy never beats optimal.
    MatchOptions greedy;
    greedy.policy = MatchPolicy::kGreedy;
    REQUIRE(match_tuples(inst.gold, inst.pred, greedy).total_ctp() <=
            m.total_ctp() + 1e-12);
  }
}

TEST_CASE("extraction edge cases") {
  const auto gold =
      one_sentence(Subtask::kDimASTE, {tri("food", "good", 700, 700)});
  const auto empty = one_sentence(Subtask::kDimASTE, {});
  const auto s = score_extraction(gold, empty, Subtask::kDimASTE);
  CHECK(s.c_f1 == 0.0);
  CHECK(s.c_precision == 0.0);
  const auto both_empty = score_extraction(empty, empty, Subtask::kDimASTE);
  CHECK(both_empty.c_f1 == 0.0);
  const auto perfect = score_extraction(gold, gold, Subtask::kDimASTE);
  CHECK(perfect.c_f1 == 1.0);
  CHECK(perfect.cat_f1 == 1.0);
  CHECK(code_of([&] { score_extraction(gold, gold, Subtask::kDimASQP); }) ==
        ErrorCode::kSubtaskMismatch);
  CHECK(code_of([&] { score_extraction(gold, gold, Subtask::kDimASR); }) ==
        ErrorCode::kSubtaskMismatch);
  CHECK(f1_score(0.0, 0.0) == 0.0);
  CHECK(f1_score(0.5, 0.5) == 0.5);
}

TEST_CASE("unknown and missing prediction records") {
  auto gold = one_sentence(Subtask::kDimASTE, {tri("food", "good", 700, 700)});
  gold.records.push_back({"s2", "x", {tri("bar", "ok", 500, 500)}});
  auto pred = one_sentence(Subtask::kDimASTE, {tri("food", "good", 700, 700)});
  pred.records.push_back({"zz", std::nullopt, {tri("bar", "ok", 500, 500)}});
  ScoreOptions options;
  options.per_sentence = true;
  const auto s = score_extraction(gold, pred, Subtask::kDimASTE, options);
  CHECK(s.gold_count == 2);
  CHECK(s.pred_count == 2);
  CHECK(s.matched_count == 1);
  CHECK(s.total_ctp == 1.0);
  CHECK(s.warnings.size() == 2);
  REQUIRE(s.sentences.size() == 3);
  CHECK(s.sentences[2].id == "zz");
  CHECK_FALSE(s.sentences[2].in_gold);
}

TEST_CASE("property: extraction score invariants") {
  std::mt19937_64 rng(406);
  for (int trial = 0; trial < 300; ++trial) {
    const auto subtask = trial % 2 ? Subtask::kDimASTE : Subtask::kDimASQP;
    Dataset gold;
    Dataset pred;
    gold.subtask = pred.subtask = subtask;
    for (int r = 0; r < 8; ++r) {
      auto inst = testing::random_matching_instance(rng, subtask);
      const std::string id = "r" + std::to_string(r);
      gold.records.push_back({id, "t", inst.gold});
      pred.records.push_back({id, std::nullopt, inst.pred});
    }
    const auto s = score_extraction(gold, pred, subtask);
    REQUIRE(s.c_f1 >= 0.0);
    REQUIRE(s.c_f1 <= s.cat_f1);
    REQUIRE(s.c_precision <= s.cat_precision);
    REQUIRE(s.c_recall <= s.cat_recall);

    const auto swapped = score_extraction(pred, gold, subtask);
    REQUIRE(swapped.total_ctp == s.total_ctp);
    REQUIRE(swapped.c_precision == s.c_recall);
    REQUIRE(swapped.c_recall == s.c_precision);
    REQUIRE(swapped.c_f1 == s.c_f1);

    auto shuffled_gold = gold;
    auto shuffled_pred = pred;
    std::shuffle(shuffled_gold.records.begin(), shuffled_gold.records.end(), rng);
    std::shuffle(shuffled_pred.records.begin(), shuffled_pred.records.end(), rng);
    for (auto& r : shuffled_gold.records)
      std::shuffle(r.tuples.begin(), r.tuples.end(), rng);
    for (auto& r : shuffled_pred.records)
      std::shuffle(r.tuples.begin(), r.tuples.end(), rng);
    const auto p = score_extraction(shuffled_gold, shuffled_pred, subtask);
    REQUIRE(p.total_ctp == s.total_ctp);
    REQUIRE(p.c_f1 == s.c_f1);
  }
}

TEST_CASE("property: exact VA reduces cF1 to categorical F1") {
  std::mt19937_64 rng(408);
  for (int trial = 0; trial < 300; ++trial) {
    const auto subtask = trial % 2 ? Subtask::kDimASTE : Subtask::kDimASQP;
    Dataset gold;
    Dataset pred;
    gold.subtask = pred.subtask = subtask;
    for (int r = 0; r < 5; ++r) {
      auto inst = testing::random_exact_va_instance(rng, subtask);
      const std::string id = "r" + std::to_string(r);
      gold.records.push_back({id, "t", inst.gold});
      pred.records.push_back({id, std::nullopt, inst.pred});
    }
    const auto s = score_extraction(gold, pred, subtask);
    REQUIRE(s.c_precision == s.cat_precision);
    REQUIRE(s.c_recall == s.cat_recall);
    REQUIRE(s.c_f1 == s.cat_f1);
  }
}

TEST_CASE("property: reports are byte-identical across thread counts") {
  std::mt19937_64 rng(407);
  Dataset gold;
  Dataset pred;
  gold.subtask = pred.subtask = Subtask::kDimASQP;
  for (int r = 0; r < 200; ++r) {
    auto inst = testing::random_matching_instance(rng, Subtask::kDimASQP);
    const std::string id = "r" + std::to_string(r);
    gold.records.push_back({id, "t", inst.gold});
    pred.records.push_back({id, std::nullopt, inst.pred});
  }
  ScoreOptions options;
  options.per_sentence = true;
  const auto reference =
      make_report(score_extraction(gold, pred, Subtask::kDimASQP, options),
                  Subtask::kDimASQP)
          .to_json(12);
  for (unsigned threads : {2u, 3u, 8u, 64u}) {
    options.threads = threads;
    const auto json =
        make_report(score_extraction(gold, pred, Subtask::kDimASQP, options),
                    Subtask::kDimASQP)
            .to_json(12);
    REQUIRE(json == reference);
  }
}

TEST_CASE("regression scoring through alignment") {
  const auto gold = load("asr_gold.jsonl", Subtask::kDimASR);
  CHECK(score_regression(gold, gold).rmse == 0.0);
  const auto partial = load("asr_pred_missing.jsonl", Subtask::kDimASR);
  try {
    score_regression(gold, partial);
    FAIL("expected an alignment error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingRecord);
    CHECK(std::string(e.what()).find("r2") != std::string::npos);
  }
  Dataset empty;
  empty.subtask = Subtask::kDimASR;
  CHECK(code_of([&] { score_regression(empty, empty); }) ==
        ErrorCode::kEmptyInput);
}

TEST_CASE("score report json round trip") {
  const std::vector<VaPairing> pairs = {{va(500, 500), va(600, 500)}};
  auto report = make_report(rmse_va(pairs));
  report.team = "LogSigma";
  report.dataset = "eng-rest";
  const auto json = report.to_json(4);
  CHECK(json.find("\"score\": 1.0000") != std::string::npos);
  CHECK(json.find("\"metric\": \"RMSE\"") != std::string::npos);
  const auto back = ScoreReport::from_json(json);
  CHECK(back.subtask == Subtask::kDimASR);
  CHECK(back.score == 1.0);
  CHECK(back.team == "LogSigma");
  CHECK(back.dataset == "eng-rest");
  CHECK(code_of([] { ScoreReport::from_json("{}"); }) ==
        ErrorCode::kSchemaError);
  CHECK(code_of([] {
          ScoreReport::from_json(R"({"subtask":"DimASR","score":-1})");
        }) == ErrorCode::kSchemaError);
}
