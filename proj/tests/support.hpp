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

// Test-only helpers: random fixtures and temporary files.

#ifndef DIMEVAL_TESTS_SUPPORT_HPP_
#define DIMEVAL_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "dimeval/model.hpp"

namespace dimeval::testing {

inline VAPair random_va(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(VAPair::kMinHundredths,
                                       VAPair::kMaxHundredths);
  return VAPair::from_hundredths(d(rng), d(rng));
}

// VA on a coarse grid, so ties and exact repeats are common.
inline VAPair random_coarse_va(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(2, 18);
  return VAPair::from_hundredths(d(rng) * 50, d(rng) * 50);
}

inline const std::vector<std::string>& aspect_pool() {
  static const std::vector<std::string> pool = {"food", "soup", "staff",
                                                "service", "price", "view",
                                                "caf\xC3\xA9", "\xE6\x9C\x8D\xE5\x8A\xA1"};
  return pool;
}

inline const std::vector<std::string>& opinion_pool() {
  static const std::vector<std::string> pool = {"good", "spicy", "friendly",
                                                "a little slow", "bad"};
  return pool;
}

inline const std::vector<std::string>& category_pool() {
  static const std::vector<std::string> pool = {
      "FOOD#QUALITY", "SERVICE#GENERAL", "FOOD#PRICES", "AMBIENCE#GENERAL"};
  return pool;
}

// A tuple drawn from `classes` distinct categorical identities.
inline SentimentTuple random_tuple(std::mt19937_64& rng, Subtask subtask,
                                   int classes, bool coarse = false) {
  std::uniform_int_distribution<int> pick(0, classes - 1);
  const int c = pick(rng);
  const auto& aspects = aspect_pool();
  const auto& opinions = opinion_pool();
  const auto& categories = category_pool();
  const std::string aspect = aspects[c % aspects.size()];
  const std::string opinion = opinions[(c / aspects.size()) % opinions.size()];
  const std::string category =
      categories[(c / (aspects.size() * opinions.size())) % categories.size()];
  const VAPair va = coarse ? random_coarse_va(rng) : random_va(rng);
  switch (subtask) {
    case Subtask::kDimASR: return SentimentTuple::aspect_only(aspect, va);
    case Subtask::kDimASTE: return SentimentTuple::triplet(aspect, opinion, va);
    case Subtask::kDimASQP:
      return SentimentTuple::quadruplet(aspect, category, opinion, va);
  }
  return SentimentTuple::aspect_only(aspect, va);
}

inline std::vector<SentimentTuple> random_tuples(std::mt19937_64& rng,
                                                 Subtask subtask,
                                                 std::size_t max_count,
                                                 int classes,
                                                 bool coarse = false,
                                                 std::size_t min_count = 0) {
  std::uniform_int_distribution<std::size_t> n(min_count, max_count);
  std::vector<SentimentTuple> out;
  const std::size_t count = n(rng);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_tuple(rng, subtask, classes, coarse));
  }
  return out;
}

inline Dataset random_dataset(std::mt19937_64& rng, Subtask subtask,
                              std::size_t records, std::size_t max_tuples,
                              int classes, bool with_text = true,
                              std::size_t min_tuples = 0) {
  Dataset d;
  d.subtask = subtask;
  for (std::size_t i = 0; i < records; ++i) {
    SentenceRecord r;
    r.id = "id" + std::to_string(i);
    if (with_text) r.text = "sentence " + std::to_string(i);
    r.tuples =
        random_tuples(rng, subtask, max_tuples, classes, false, min_tuples);
    d.records.push_back(std::move(r));
  }
  return d;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dimeval-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name,
                              const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string fixture(const std::string& name) {
  return std::string(DIMEVAL_FIXTURE_DIR) + "/" + name;
}

}  // namespace dimeval::testing

#endif  // DIMEVAL_TESTS_SUPPORT_HPP_
