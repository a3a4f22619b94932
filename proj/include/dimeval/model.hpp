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

#ifndef DIMEVAL_MODEL_HPP_
#define DIMEVAL_MODEL_HPP_

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dimeval {

enum class Subtask { kDimASR, kDimASTE, kDimASQP };

std::string_view to_string(Subtask subtask);

// Accepts "DimASR"/"DimASTE"/"DimASQP" and the numeric forms "1"/"2"/"3".
std::optional<Subtask> parse_subtask(std::string_view text);

inline bool is_extraction(Subtask subtask) {
  return subtask != Subtask::kDimASR;
}

// A valence/arousal pair on the [1, 9] scale. Values are held as integer
// hundredths, which is the canonical precision of every VA value in the data.
class VAPair {
 public:
  static constexpr int kMinHundredths = 100;
  static constexpr int kMaxHundredths = 900;

  // Throws Error(kOutOfRangeVA) if either coordinate leaves [1.00, 9.00].
  static VAPair from_hundredths(int valence, int arousal);

  // Throws kOutOfRangeVA for out-of-range input and kMalformedVA for values
  // that are not a whole number of hundredths.
  static VAPair from_double(double valence, double arousal);

  int valence_hundredths() const { return valence_; }
  int arousal_hundredths() const { return arousal_; }
  double valence() const { return valence_ / 100.0; }
  double arousal() const { return arousal_ / 100.0; }

  friend bool operator==(const VAPair&, const VAPair&) = default;
  friend auto operator<=>(const VAPair&, const VAPair&) = default;

 private:
  VAPair(int valence, int arousal) : valence_(valence), arousal_(arousal) {}

  int valence_;
  int arousal_;
};

// One annotated or predicted unit. Which of opinion/category is present is
// fixed by the subtask and enforced on construction.
class SentimentTuple {
 public:
  static SentimentTuple aspect_only(std::string aspect, VAPair va);
  static SentimentTuple triplet(std::string aspect, std::string opinion,
                                VAPair va);
  static SentimentTuple quadruplet(std::string aspect, std::string category,
                                   std::string opinion, VAPair va);

  Subtask subtask() const { return subtask_; }
  const std::string& aspect() const { return aspect_; }
  const std::optional<std::string>& opinion() const { return opinion_; }
  const std::optional<std::string>& category() const { return category_; }
  const VAPair& va() const { return va_; }

  SentimentTuple with_va(VAPair va) const {
    SentimentTuple copy = *this;
    copy.va_ = va;
    return copy;
  }

  friend bool operator==(const SentimentTuple&, const SentimentTuple&) =
      default;

 private:
  SentimentTuple(Subtask subtask, std::string aspect,
                 std::optional<std::string> opinion,
                 std::optional<std::string> category, VAPair va);

  Subtask subtask_;
  std::string aspect_;
  std::optional<std::string> opinion_;
  std::optional<std::string> category_;
  VAPair va_;
};

struct SentenceRecord {
  std::string id;
  std::optional<std::string> text;
  std::vector<SentimentTuple> tuples;

  friend bool operator==(const SentenceRecord&, const SentenceRecord&) =
      default;
};

// A parsed file: records in file order, all of one subtask.
struct Dataset {
  Subtask subtask = Subtask::kDimASR;
  std::vector<SentenceRecord> records;
  // Set only for multi-annotator files.
  std::optional<std::string> annotator;

  std::size_t tuple_count() const;
};

using GoldDataset = Dataset;
using PredictionSet = Dataset;

enum class Domain { kRestaurant, kLaptop, kHotel };

std::string_view to_string(Domain domain);
std::optional<Domain> parse_domain(std::string_view text);

class CategoryVocabulary {
 public:
  static const CategoryVocabulary& builtin(Domain domain);

  // A user-supplied vocabulary; labels must be non-empty and free of '#'.
  static CategoryVocabulary custom(std::vector<std::string> entities,
                                   std::vector<std::string> attributes);

  // Parses {"entities": [...], "attributes": [...]}. Throws kSchemaError.
  static CategoryVocabulary from_json(std::string_view json_text);

  const std::optional<Domain>& domain() const { return domain_; }
  const std::set<std::string, std::less<>>& entities() const {
    return entities_;
  }
  const std::set<std::string, std::less<>>& attributes() const {
    return attributes_;
  }
  std::size_t category_count() const {
    return entities_.size() * attributes_.size();
  }

 private:
  CategoryVocabulary(std::optional<Domain> domain,
                     std::set<std::string, std::less<>> entities,
                     std::set<std::string, std::less<>> attributes)
      : domain_(domain),
        entities_(std::move(entities)),
        attributes_(std::move(attributes)) {}

  std::optional<Domain> domain_;
  std::set<std::string, std::less<>> entities_;
  std::set<std::string, std::less<>> attributes_;
};

// True iff `category` splits on its first '#' into a known entity and a known
// attribute. Total over arbitrary input.
bool category_is_valid(std::string_view category,
                       const CategoryVocabulary& vocab);

// Checks only the ENTITY#ATTRIBUTE shape (both parts non-empty).
bool category_is_well_formed(std::string_view category);

enum class Track { kA, kB };

// One of the fifteen language-domain datasets, e.g. "eng-rest" or "deu-pol".
class DatasetId {
 public:
  static std::optional<DatasetId> parse(std::string_view text);
  static std::span<const DatasetId> all();

  const std::string& language() const { return language_; }
  const std::string& domain() const { return domain_; }
  Track track() const { return track_; }
  std::string name() const { return language_ + "-" + domain_; }

  // The category vocabulary used for quadruplet validation, when the domain
  // has one (finance and the stance domains do not).
  std::optional<Domain> vocabulary_domain() const;

  friend bool operator==(const DatasetId&, const DatasetId&) = default;
  friend auto operator<=>(const DatasetId&, const DatasetId&) = default;

 private:
  DatasetId(std::string language, std::string domain, Track track)
      : language_(std::move(language)),
        domain_(std::move(domain)),
        track_(track) {}

  std::string language_;
  std::string domain_;
  Track track_;
};

}  // namespace dimeval

#endif  // DIMEVAL_MODEL_HPP_
