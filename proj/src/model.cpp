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

#include "dimeval/model.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "dimeval/error.hpp"

namespace dimeval {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedVA: return "MalformedVA";
    case ErrorCode::kOutOfRangeVA: return "OutOfRangeVA";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInvalidCategory: return "InvalidCategory";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMissingRecord: return "MissingRecord";
    case ErrorCode::kMissingAspect: return "MissingAspect";
    case ErrorCode::kExtraAspect: return "ExtraAspect";
    case ErrorCode::kSubtaskMismatch: return "SubtaskMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kTooFewAnnotators: return "TooFewAnnotators";
    case ErrorCode::kMixedDatasets: return "MixedDatasets";
  }
  return "Unknown";
}

bool is_alignment_error(ErrorCode code) {
  return code == ErrorCode::kMissingRecord ||
         code == ErrorCode::kMissingAspect || code == ErrorCode::kExtraAspect;
}

std::string_view to_string(Subtask subtask) {
  switch (subtask) {
    case Subtask::kDimASR: return "DimASR";
    case Subtask::kDimASTE: return "DimASTE";
    case Subtask::kDimASQP: return "DimASQP";
  }
  return "Unknown";
}

std::optional<Subtask> parse_subtask(std::string_view text) {
  if (text == "1" || text == "DimASR") return Subtask::kDimASR;
  if (text == "2" || text == "DimASTE") return Subtask::kDimASTE;
  if (text == "3" || text == "DimASQP") return Subtask::kDimASQP;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// VAPair

VAPair VAPair::from_hundredths(int valence, int arousal) {
  auto in_range = [](int v) {
    return v >= kMinHundredths && v <= kMaxHundredths;
  };
  if (!in_range(valence) || !in_range(arousal)) {
    throw Error(ErrorCode::kOutOfRangeVA,
                "VA value outside [1, 9]: " + std::to_string(valence / 100.0) +
                    "#" + std::to_string(arousal / 100.0));
  }
  return VAPair(valence, arousal);
}

VAPair VAPair::from_double(double valence, double arousal) {
  if (!(valence >= 1.0 && valence <= 9.0) ||
      !(arousal >= 1.0 && arousal <= 9.0)) {
    throw Error(ErrorCode::kOutOfRangeVA,
                "VA value outside [1, 9]: " + std::to_string(valence) + "#" +
                    std::to_string(arousal));
  }
  auto to_hundredths = [](double x) {
    const double scaled = x * 100.0;
    const double rounded = std::round(scaled);
    if (std::fabs(scaled - rounded) > 1e-6) {
      throw Error(ErrorCode::kMalformedVA,
                  "VA value has more than 2 fractional digits: " +
                      std::to_string(x));
    }
    return static_cast<int>(rounded);
  };
  return from_hundredths(to_hundredths(valence), to_hundredths(arousal));
}

// ---------------------------------------------------------------------------
// SentimentTuple

SentimentTuple::SentimentTuple(Subtask subtask, std::string aspect,
                               std::optional<std::string> opinion,
                               std::optional<std::string> category, VAPair va)
    : subtask_(subtask),
      aspect_(std::move(aspect)),
      opinion_(std::move(opinion)),
      category_(std::move(category)),
      va_(va) {
  if (category_ && !category_is_well_formed(*category_)) {
    throw Error(ErrorCode::kInvalidCategory,
                "category is not of the form ENTITY#ATTRIBUTE: '" +
                    *category_ + "'");
  }
}

SentimentTuple SentimentTuple::aspect_only(std::string aspect, VAPair va) {
  return SentimentTuple(Subtask::kDimASR, std::move(aspect), std::nullopt,
                        std::nullopt, va);
}

SentimentTuple SentimentTuple::triplet(std::string aspect, std::string opinion,
                                       VAPair va) {
  return SentimentTuple(Subtask::kDimASTE, std::move(aspect),
                        std::move(opinion), std::nullopt, va);
}

SentimentTuple SentimentTuple::quadruplet(std::string aspect,
                                          std::string category,
                                          std::string opinion, VAPair va) {
  return SentimentTuple(Subtask::kDimASQP, std::move(aspect),
                        std::move(opinion), std::move(category), va);
}

std::size_t Dataset::tuple_count() const {
  return std::accumulate(records.begin(), records.end(), std::size_t{0},
                         [](std::size_t n, const SentenceRecord& r) {
                           return n + r.tuples.size();
                         });
}

// ---------------------------------------------------------------------------
// Category vocabularies

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::kRestaurant: return "restaurant";
    case Domain::kLaptop: return "laptop";
    case Domain::kHotel: return "hotel";
  }
  return "unknown";
}

std::optional<Domain> parse_domain(std::string_view text) {
  if (text == "restaurant" || text == "rest") return Domain::kRestaurant;
  if (text == "laptop" || text == "lap") return Domain::kLaptop;
  if (text == "hotel" || text == "hot") return Domain::kHotel;
  return std::nullopt;
}

namespace {

using LabelSet = std::set<std::string, std::less<>>;

LabelSet to_set(std::initializer_list<const char*> labels) {
  LabelSet out;
  for (const char* l : labels) out.emplace(l);
  return out;
}

bool valid_label(std::string_view label) {
  return !label.empty() && label.find('#') == std::string_view::npos;
}

}  // namespace

const CategoryVocabulary& CategoryVocabulary::builtin(Domain domain) {
  static const CategoryVocabulary restaurant(
      Domain::kRestaurant,
      to_set({"RESTAURANT", "FOOD", "DRINKS", "AMBIENCE", "SERVICE",
              "LOCATION"}),
      to_set({"GENERAL", "PRICES", "QUALITY", "STYLE_OPTIONS",
              "MISCELLANEOUS"}));
  static const CategoryVocabulary laptop(
      Domain::kLaptop,
      to_set({"LAPTOP", "DISPLAY", "KEYBOARD", "MOUSE", "MOTHERBOARD", "CPU",
              "FANS_COOLING", "PORTS", "MEMORY", "POWER_SUPPLY",
              "OPTICAL_DRIVES", "BATTERY", "GRAPHICS", "HARD_DISK",
              "MULTIMEDIA_DEVICES", "HARDWARE", "SOFTWARE", "OS", "WARRANTY",
              "SHIPPING", "SUPPORT", "COMPANY"}),
      to_set({"GENERAL", "PRICE", "QUALITY", "DESIGN_FEATURES",
              "OPERATION_PERFORMANCE", "USABILITY", "PORTABILITY",
              "CONNECTIVITY", "MISCELLANEOUS"}));
  static const CategoryVocabulary hotel(
      Domain::kHotel,
      to_set({"HOTEL", "ROOMS", "FACILITIES", "ROOM_AMENITIES", "SERVICE",
              "LOCATION", "FOOD_DRINKS"}),
      to_set({"GENERAL", "PRICE", "COMFORT", "CLEANLINESS", "QUALITY",
              "DESIGN_FEATURES", "STYLE_OPTIONS", "MISCELLANEOUS"}));
  switch (domain) {
    case Domain::kRestaurant: return restaurant;
    case Domain::kLaptop: return laptop;
    case Domain::kHotel: return hotel;
  }
  return restaurant;
}

CategoryVocabulary CategoryVocabulary::custom(
    std::vector<std::string> entities, std::vector<std::string> attributes) {
  LabelSet e, a;
  for (auto& label : entities) {
    if (!valid_label(label)) {
      throw Error(ErrorCode::kSchemaError,
                  "invalid entity label '" + label + "'");
    }
    e.insert(std::move(label));
  }
  for (auto& label : attributes) {
    if (!valid_label(label)) {
      throw Error(ErrorCode::kSchemaError,
                  "invalid attribute label '" + label + "'");
    }
    a.insert(std::move(label));
  }
  if (e.empty() || a.empty()) {
    throw Error(ErrorCode::kSchemaError,
                "vocabulary needs at least one entity and one attribute");
  }
  return CategoryVocabulary(std::nullopt, std::move(e), std::move(a));
}

CategoryVocabulary CategoryVocabulary::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string("vocabulary is not valid JSON: ") + e.what());
  }
  auto read_list = [&](const char* key) {
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array()) {
      throw Error(ErrorCode::kSchemaError,
                  std::string("vocabulary needs an array field \"") + key +
                      "\"");
    }
    std::vector<std::string> out;
    for (const auto& item : doc[key]) {
      if (!item.is_string()) {
        throw Error(ErrorCode::kSchemaError,
                    std::string("non-string label in \"") + key + "\"");
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  };
  return custom(read_list("entities"), read_list("attributes"));
}

bool category_is_well_formed(std::string_view category) {
  const auto hash = category.find('#');
  return hash != std::string_view::npos && hash > 0 &&
         hash + 1 < category.size();
}

bool category_is_valid(std::string_view category,
                       const CategoryVocabulary& vocab) {
  const auto hash = category.find('#');
  if (hash == std::string_view::npos) return false;
  const auto entity = category.substr(0, hash);
  const auto attribute = category.substr(hash + 1);
  return vocab.entities().contains(entity) &&
         vocab.attributes().contains(attribute);
}

// ---------------------------------------------------------------------------
// DatasetId

std::span<const DatasetId> DatasetId::all() {
  static const std::vector<DatasetId> datasets = {
      {"eng", "rest", Track::kA}, {"eng", "lap", Track::kA},
      {"jpn", "hot", Track::kA},  {"jpn", "fin", Track::kA},
      {"rus", "rest", Track::kA}, {"tat", "rest", Track::kA},
      {"ukr", "rest", Track::kA}, {"zho", "rest", Track::kA},
      {"zho", "lap", Track::kA},  {"zho", "fin", Track::kA},
      {"eng", "env", Track::kB},  {"deu", "pol", Track::kB},
      {"zho", "env", Track::kB},  {"pcm", "pol", Track::kB},
      {"swa", "pol", Track::kB},
  };
  return datasets;
}

std::optional<DatasetId> DatasetId::parse(std::string_view text) {
  for (const auto& id : all()) {
    if (id.name() == text) return id;
  }
  return std::nullopt;
}

std::optional<Domain> DatasetId::vocabulary_domain() const {
  if (track_ != Track::kA) return std::nullopt;
  if (domain_ == "rest") return Domain::kRestaurant;
  if (domain_ == "lap") return Domain::kLaptop;
  if (domain_ == "hot") return Domain::kHotel;
  return std::nullopt;
}

}  // namespace dimeval
