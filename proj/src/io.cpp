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

#include "dimeval/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "dimeval/json_writer.hpp"

namespace dimeval {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kIdKey = "ID";
constexpr std::string_view kTextKey = "Text";
constexpr std::string_view kAnnotatorKey = "Annotator";
constexpr std::string_view kAspectKey = "Aspect";
constexpr std::string_view kOpinionKey = "Opinion";
constexpr std::string_view kCategoryKey = "Category";
constexpr std::string_view kVAKey = "VA";

std::string_view list_key(Subtask subtask) {
  switch (subtask) {
    case Subtask::kDimASR: return "Aspect";
    case Subtask::kDimASTE: return "Triplet";
    case Subtask::kDimASQP: return "Quadruplet";
  }
  return "Aspect";
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses one decimal coordinate into hundredths.
int parse_coordinate(std::string_view text, std::string_view whole,
                     Strictness mode, bool& repaired) {
  auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::kMalformedVA,
                 "malformed VA '" + std::string(whole) + "': " + why);
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::size_t int_begin = pos;
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  const std::string_view int_part = text.substr(int_begin, pos - int_begin);
  std::string_view frac_part;
  if (pos < text.size() && text[pos] == '.') {
    const std::size_t frac_begin = ++pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    frac_part = text.substr(frac_begin, pos - frac_begin);
    if (frac_part.empty()) throw malformed("missing digits after '.'");
  }
  if (int_part.empty()) throw malformed("expected a decimal number");
  if (pos != text.size()) throw malformed("unexpected characters");

  std::string_view digits = int_part;
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  const bool frac_zero =
      frac_part.find_first_not_of('0') == std::string_view::npos;
  const bool int_zero = digits == "0";

  bool in_range = false;
  int whole_units = 0;
  if (digits.size() == 1) {
    whole_units = digits[0] - '0';
    in_range = (whole_units >= 1 && whole_units <= 8) ||
               (whole_units == 9 && frac_zero);
  }
  if (negative && !(int_zero && frac_zero)) in_range = false;
  if (!in_range) {
    throw Error(ErrorCode::kOutOfRangeVA,
                "VA '" + std::string(whole) + "' outside [1, 9]");
  }

  if (frac_part.size() > 2) {
    if (mode == Strictness::kStrict) {
      throw malformed("more than 2 fractional digits");
    }
    repaired = true;
  }
  int hundredths = whole_units * 100;
  if (!frac_part.empty()) hundredths += (frac_part[0] - '0') * 10;
  if (frac_part.size() > 1) hundredths += frac_part[1] - '0';
  if (frac_part.size() > 2 && frac_part[2] >= '5') hundredths += 1;
  return hundredths;
}

// Per-line diagnostic sink.
class LineScope {
 public:
  LineScope(ValidationReport& report, std::size_t line, Strictness mode)
      : report_(report), line_(line), mode_(mode) {}

  void set_id(std::string id) { id_ = std::move(id); }
  bool failed() const { return failed_; }

  void error(ErrorCode code, std::string message) {
    report_.errors.push_back(
        {line_, id_, std::string(to_string(code)), std::move(message)});
    failed_ = true;
  }

  void warning(std::string code, std::string message) {
    report_.warnings.push_back({line_, id_, std::move(code), std::move(message)});
  }

  // An error in strict mode, a warning in lenient mode.
  void repairable(ErrorCode strict_code, std::string lenient_code,
                  std::string message) {
    if (mode_ == Strictness::kStrict) {
      error(strict_code, std::move(message));
    } else {
      warning(std::move(lenient_code), std::move(message));
    }
  }

 private:
  ValidationReport& report_;
  std::size_t line_;
  Strictness mode_;
  std::optional<std::string> id_;
  bool failed_ = false;
};

bool belongs_to_other_shape(std::string_view key, Subtask subtask,
                            bool in_tuple) {
  if (in_tuple) {
    if (key == kOpinionKey) return subtask == Subtask::kDimASR;
    if (key == kCategoryKey) return subtask != Subtask::kDimASQP;
    return false;
  }
  for (Subtask other :
       {Subtask::kDimASR, Subtask::kDimASTE, Subtask::kDimASQP}) {
    if (other != subtask && key == list_key(other)) return true;
  }
  return false;
}

std::optional<std::string> required_string(const json& object,
                                           std::string_view key,
                                           std::string_view where,
                                           LineScope& scope) {
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) {
    scope.error(ErrorCode::kSchemaError,
                std::string(where) + " is missing field \"" +
                    std::string(key) + "\"");
    return std::nullopt;
  }
  if (!it->is_string()) {
    scope.error(ErrorCode::kSchemaError,
                std::string(where) + " field \"" + std::string(key) +
                    "\" must be a string");
    return std::nullopt;
  }
  auto value = it->get<std::string>();
  if (normalize_span(value).empty()) {
    scope.error(ErrorCode::kSchemaError,
                std::string(where) + " field \"" + std::string(key) +
                    "\" is empty");
    return std::nullopt;
  }
  return value;
}

std::optional<SentimentTuple> parse_tuple(const json& item, std::size_t index,
                                          Subtask subtask,
                                          const LoadOptions& options,
                                          LineScope& scope) {
  const std::string where = "tuple " + std::to_string(index + 1);
  if (!item.is_object()) {
    scope.error(ErrorCode::kSchemaError, where + " is not a JSON object");
    return std::nullopt;
  }
  for (const auto& [key, value] : item.items()) {
    const bool known =
        key == kAspectKey || key == kVAKey ||
        (key == kOpinionKey && subtask != Subtask::kDimASR) ||
        (key == kCategoryKey && subtask == Subtask::kDimASQP);
    if (known) continue;
    if (belongs_to_other_shape(key, subtask, true)) {
      scope.error(ErrorCode::kSchemaError,
                  where + " has field \"" + key + "\", which " +
                      std::string(to_string(subtask)) + " tuples do not carry");
    } else {
      scope.repairable(ErrorCode::kSchemaError, "UnknownField",
                       where + " has unknown field \"" + key + "\"");
    }
  }

  bool ok = true;
  auto aspect = required_string(item, kAspectKey, where, scope);
  ok &= aspect.has_value();
  std::optional<std::string> opinion;
  std::optional<std::string> category;
  if (subtask != Subtask::kDimASR) {
    opinion = required_string(item, kOpinionKey, where, scope);
    ok &= opinion.has_value();
  }
  if (subtask == Subtask::kDimASQP) {
    const auto it = item.find(kCategoryKey);
    if (it != item.end() && it->is_string()) {
      category = it->get<std::string>();
      if (!category_is_well_formed(*category)) {
        scope.error(ErrorCode::kInvalidCategory,
                    where + " category '" + *category +
                        "' is not of the form ENTITY#ATTRIBUTE");
        ok = false;
      } else if (options.vocabulary != nullptr &&
                 !category_is_valid(*category, *options.vocabulary)) {
        const auto& domain = options.vocabulary->domain();
        scope.error(ErrorCode::kInvalidCategory,
                    where + " category '" + *category + "' is not in the " +
                        (domain ? std::string(to_string(*domain))
                                : std::string("custom")) +
                        " vocabulary");
        ok = false;
      }
    } else {
      ok &= required_string(item, kCategoryKey, where, scope).has_value();
    }
  }

  std::optional<VAPair> va;
  const auto va_it = item.find(kVAKey);
  if (va_it == item.end() || va_it->is_null()) {
    scope.error(ErrorCode::kSchemaError,
                where + " is missing its \"VA\" value");
  } else if (!va_it->is_string()) {
    scope.error(ErrorCode::kSchemaError,
                where + " \"VA\" must be a string of the form \"v#a\"");
  } else {
    try {
      bool repaired = false;
      va = parse_va(va_it->get<std::string>(), options.strictness, &repaired);
      if (repaired) {
        scope.warning("PrecisionRepaired",
                      where + " VA '" + va_it->get<std::string>() +
                          "' rounded to " + format_va(*va));
      }
    } catch (const Error& e) {
      scope.error(e.code(), where + ": " + e.what());
    }
  }
  if (!ok || !va) return std::nullopt;

  if (aspect && *aspect == "NULL") {
    scope.warning("NullAspect",
                  where + " uses the literal aspect \"NULL\"; it is scored "
                          "as an ordinary aspect string");
  }
  switch (subtask) {
    case Subtask::kDimASR:
      return SentimentTuple::aspect_only(std::move(*aspect), *va);
    case Subtask::kDimASTE:
      return SentimentTuple::triplet(std::move(*aspect), std::move(*opinion),
                                     *va);
    case Subtask::kDimASQP:
      return SentimentTuple::quadruplet(std::move(*aspect),
                                        std::move(*category),
                                        std::move(*opinion), *va);
  }
  return std::nullopt;
}

struct ParseState {
  std::map<std::string, std::size_t, std::less<>> first_line_of_id;
  std::optional<std::pair<std::string, std::size_t>> annotator;
};

void parse_line(std::string_view line, std::size_t line_number,
                Subtask subtask, const LoadOptions& options,
                ParseState& state, LoadResult& result) {
  LineScope scope(result.report, line_number, options.strictness);

  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::exception& e) {
    scope.error(ErrorCode::kSchemaError,
                std::string("line is not valid JSON: ") + e.what());
    return;
  }
  if (!doc.is_object()) {
    scope.error(ErrorCode::kSchemaError, "line is not a JSON object");
    return;
  }

  SentenceRecord record;
  const auto id_it = doc.find(kIdKey);
  if (id_it == doc.end() || !id_it->is_string() ||
      id_it->get<std::string>().empty()) {
    scope.error(ErrorCode::kSchemaError,
                "record needs a non-empty string field \"ID\"");
  } else {
    record.id = id_it->get<std::string>();
    scope.set_id(record.id);
    const auto [it, inserted] =
        state.first_line_of_id.emplace(record.id, line_number);
    if (!inserted) {
      scope.error(ErrorCode::kDuplicateId,
                  "duplicate ID '" + record.id + "' (lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(line_number) + ")");
    }
  }

  const std::string_view tuples_key = list_key(subtask);
  for (const auto& [key, value] : doc.items()) {
    if (key == kIdKey || key == kTextKey || key == tuples_key) continue;
    if (key == kAnnotatorKey && options.allow_annotator) continue;
    if (belongs_to_other_shape(key, subtask, false)) {
      scope.error(ErrorCode::kSchemaError,
                  "field \"" + key + "\" belongs to another subtask; " +
                      std::string(to_string(subtask)) + " records carry \"" +
                      std::string(tuples_key) + "\"");
    } else {
      scope.repairable(ErrorCode::kSchemaError, "UnknownField",
                       "unknown field \"" + key + "\"");
    }
  }

  const auto text_it = doc.find(kTextKey);
  if (text_it == doc.end() || text_it->is_null()) {
    if (options.require_text) {
      scope.error(ErrorCode::kSchemaError, "record is missing field \"Text\"");
    }
  } else if (!text_it->is_string()) {
    scope.error(ErrorCode::kSchemaError, "field \"Text\" must be a string");
  } else {
    record.text = text_it->get<std::string>();
  }

  if (options.allow_annotator) {
    const auto ann_it = doc.find(kAnnotatorKey);
    if (ann_it != doc.end()) {
      if (!ann_it->is_string()) {
        scope.error(ErrorCode::kSchemaError,
                    "field \"Annotator\" must be a string");
      } else if (!state.annotator) {
        state.annotator.emplace(ann_it->get<std::string>(), line_number);
      } else if (state.annotator->first != ann_it->get<std::string>()) {
        scope.error(ErrorCode::kSchemaError,
                    "annotator '" + ann_it->get<std::string>() +
                        "' differs from '" + state.annotator->first +
                        "' declared on line " +
                        std::to_string(state.annotator->second));
      }
    }
  }

  const auto list_it = doc.find(tuples_key);
  if (list_it == doc.end() || !list_it->is_array()) {
    scope.error(ErrorCode::kSchemaError,
                "record needs an array field \"" + std::string(tuples_key) +
                    "\"");
  } else {
    for (std::size_t i = 0; i < list_it->size(); ++i) {
      auto tuple = parse_tuple((*list_it)[i], i, subtask, options, scope);
      if (tuple) record.tuples.push_back(std::move(*tuple));
    }
  }

  if (scope.failed()) return;
  result.report.record_count += 1;
  result.report.tuple_count += record.tuples.size();
  result.dataset.records.push_back(std::move(record));
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

}  // namespace

// ---------------------------------------------------------------------------

VAPair parse_va(std::string_view text, Strictness mode,
                bool* precision_repaired) {
  const auto hash = text.find('#');
  if (hash == std::string_view::npos ||
      text.find('#', hash + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kMalformedVA,
                "malformed VA '" + std::string(text) +
                    "': expected exactly one '#' between valence and arousal");
  }
  bool repaired = false;
  const int valence =
      parse_coordinate(text.substr(0, hash), text, mode, repaired);
  const int arousal =
      parse_coordinate(text.substr(hash + 1), text, mode, repaired);
  if (precision_repaired != nullptr) *precision_repaired = repaired;
  return VAPair::from_hundredths(valence, arousal);
}

std::string format_va(const VAPair& va) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%d.%02d#%d.%02d",
                va.valence_hundredths() / 100, va.valence_hundredths() % 100,
                va.arousal_hundredths() / 100, va.arousal_hundredths() % 100);
  return buffer;
}

std::string ValidationReport::to_json() const {
  JsonWriter w;
  auto write_list = [&](const std::vector<Diagnostic>& items) {
    w.begin_array();
    for (const auto& d : items) {
      w.begin_object();
      w.key("line").value(d.line);
      w.key("id");
      if (d.id) {
        w.value(*d.id);
      } else {
        w.null();
      }
      w.key("code").value(d.code);
      w.key("message").value(d.message);
      w.end_object();
    }
    w.end_array();
  };
  w.begin_object();
  w.key("errors");
  write_list(errors);
  w.key("warnings");
  write_list(warnings);
  w.key("records").value(record_count);
  w.key("tuples").value(tuple_count);
  w.end_object();
  return w.str();
}

LoadResult parse_records(std::string_view content, Subtask subtask,
                         const LoadOptions& options) {
  LoadResult result;
  result.dataset.subtask = subtask;
  ParseState state;

  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  std::size_t line_number = 0;
  std::size_t begin = 0;
  while (begin < content.size()) {
    std::size_t end = content.find('\n', begin);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(begin, end - begin);
    begin = end + 1;
    ++line_number;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (is_blank(line)) continue;
    parse_line(line, line_number, subtask, options, state, result);
  }
  if (state.annotator) result.dataset.annotator = state.annotator->first;
  return result;
}

LoadResult parse_records(std::istream& in, Subtask subtask,
                         const LoadOptions& options) {
  const std::string content{std::istreambuf_iterator<char>(in),
                            std::istreambuf_iterator<char>()};
  return parse_records(std::string_view(content), subtask, options);
}

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    throw Error(ErrorCode::kIoError,
                "cannot read '" + path.string() + "': is a directory");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIoError, "error reading '" + path.string() + "'");
  }
  return buffer.str();
}

LoadResult load_gold(const std::filesystem::path& path, Subtask subtask,
                     const CategoryVocabulary* vocabulary,
                     Strictness strictness) {
  LoadOptions options;
  options.strictness = strictness;
  options.vocabulary = vocabulary;
  options.require_text = true;
  return parse_records(std::string_view(read_file(path)), subtask, options);
}

LoadResult load_predictions(const std::filesystem::path& path,
                            Subtask subtask, Strictness strictness,
                            const CategoryVocabulary* vocabulary) {
  LoadOptions options;
  options.strictness = strictness;
  options.vocabulary = vocabulary;
  options.require_text = false;
  return parse_records(std::string_view(read_file(path)), subtask, options);
}

std::string serialize_record(const SentenceRecord& record, Subtask subtask,
                             const std::optional<std::string>& annotator) {
  ordered_json line;
  line[kIdKey] = record.id;
  if (record.text) line[kTextKey] = *record.text;
  if (annotator) line[kAnnotatorKey] = *annotator;
  ordered_json tuples = ordered_json::array();
  for (const auto& t : record.tuples) {
    ordered_json item;
    item[kAspectKey] = t.aspect();
    if (subtask == Subtask::kDimASQP) item[kCategoryKey] = t.category().value_or("");
    if (subtask != Subtask::kDimASR) item[kOpinionKey] = t.opinion().value_or("");
    item[kVAKey] = format_va(t.va());
    tuples.push_back(std::move(item));
  }
  line[list_key(subtask)] = std::move(tuples);
  return line.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

std::string serialize(const Dataset& dataset) {
  std::string out;
  for (const auto& record : dataset.records) {
    out += serialize_record(record, dataset.subtask, dataset.annotator);
    out += '\n';
  }
  return out;
}

RegressionAlignment align_for_regression(const GoldDataset& gold,
                                         const PredictionSet& pred,
                                         const NormalizeOptions& options) {
  if (gold.subtask != Subtask::kDimASR || pred.subtask != Subtask::kDimASR) {
    throw Error(ErrorCode::kSubtaskMismatch,
                "regression alignment needs DimASR gold and predictions");
  }
  std::unordered_map<std::string_view, const SentenceRecord*> by_id;
  for (const auto& record : pred.records) by_id.emplace(record.id, &record);

  RegressionAlignment out;
  std::unordered_map<std::string_view, bool> gold_ids;
  for (const auto& g : gold.records) {
    gold_ids.emplace(g.id, true);
    const auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kMissingRecord,
                  "no prediction for gold record '" + g.id + "'");
    }
    std::map<std::string, std::vector<VAPair>> predicted;
    for (const auto& t : it->second->tuples) {
      predicted[normalize_span(t.aspect(), options)].push_back(t.va());
    }
    std::map<std::string, std::size_t> used;
    for (const auto& t : g.tuples) {
      const std::string key = normalize_span(t.aspect(), options);
      std::size_t& k = used[key];
      const auto p = predicted.find(key);
      if (p == predicted.end() || p->second.size() <= k) {
        throw Error(ErrorCode::kMissingAspect,
                    "record '" + g.id + "': no prediction for occurrence " +
                        std::to_string(k + 1) + " of aspect '" + t.aspect() +
                        "'");
      }
      out.pairs.push_back({t.va(), p->second[k]});
      ++k;
    }
    for (const auto& [key, values] : predicted) {
      const auto u = used.find(key);
      const std::size_t expected = u == used.end() ? 0 : u->second;
      if (values.size() > expected) {
        throw Error(ErrorCode::kExtraAspect,
                    "record '" + g.id + "': prediction lists aspect '" + key +
                        "' " + std::to_string(values.size()) +
                        " time(s), gold lists it " + std::to_string(expected) +
                        " time(s)");
      }
    }
  }
  for (const auto& record : pred.records) {
    if (!gold_ids.contains(record.id)) {
      out.unknown_prediction_ids.push_back(record.id);
    }
  }
  return out;
}

}  // namespace dimeval
