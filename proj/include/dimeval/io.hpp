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

#ifndef DIMEVAL_IO_HPP_
#define DIMEVAL_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimeval/error.hpp"
#include "dimeval/model.hpp"
#include "dimeval/text.hpp"

namespace dimeval {

// Strict mode treats repairable problems (excess VA precision, unknown extra
// fields) as errors; lenient mode repairs them and records a warning.
enum class Strictness { kStrict, kLenient };

struct Diagnostic {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::optional<std::string> id;
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
  std::size_t record_count = 0;
  std::size_t tuple_count = 0;

  bool ok() const { return errors.empty(); }
  std::string to_json() const;
};

// Parses "v#a". Throws Error(kMalformedVA) or Error(kOutOfRangeVA). In lenient
// mode values with more than two fractional digits are rounded half-up and
// `precision_repaired` (if given) is set.
VAPair parse_va(std::string_view text, Strictness mode = Strictness::kStrict,
                bool* precision_repaired = nullptr);

// Canonical "x.xx#y.yy".
std::string format_va(const VAPair& va);

struct LoadOptions {
  Strictness strictness = Strictness::kStrict;
  // Enables category validation for quadruplets.
  const CategoryVocabulary* vocabulary = nullptr;
  bool require_text = true;
  // Accept a top-level "Annotator" field (multi-annotator files).
  bool allow_annotator = false;
};

struct LoadResult {
  Dataset dataset;  // meaningful only when report.ok()
  ValidationReport report;

  bool ok() const { return report.ok(); }
};

// Line-delimited JSON records. Scans the whole input in all cases, so every
// bad line is reported with its 1-based line number.
LoadResult parse_records(std::istream& in, Subtask subtask,
                         const LoadOptions& options);
LoadResult parse_records(std::string_view content, Subtask subtask,
                         const LoadOptions& options);

// Throws Error(kIoError) if the file cannot be read.
LoadResult load_gold(const std::filesystem::path& path, Subtask subtask,
                     const CategoryVocabulary* vocabulary = nullptr,
                     Strictness strictness = Strictness::kStrict);
LoadResult load_predictions(const std::filesystem::path& path, Subtask subtask,
                            Strictness strictness = Strictness::kStrict,
                            const CategoryVocabulary* vocabulary = nullptr);

std::string read_file(const std::filesystem::path& path);

// Canonical single-line form of one record (no trailing newline).
std::string serialize_record(const SentenceRecord& record, Subtask subtask,
                             const std::optional<std::string>& annotator = {});
// Canonical file form: one record per line, each newline-terminated.
std::string serialize(const Dataset& dataset);

struct VaPairing {
  VAPair gold;
  VAPair pred;
};

struct RegressionAlignment {
  std::vector<VaPairing> pairs;  // gold file order
  std::vector<std::string> unknown_prediction_ids;
};

// Pairs every gold aspect instance with its prediction. Aspects within a
// record are keyed by (normalized aspect string, occurrence index). Throws
// Error with kMissingRecord, kMissingAspect, kExtraAspect or
// kSubtaskMismatch.
RegressionAlignment align_for_regression(const GoldDataset& gold,
                                         const PredictionSet& pred,
                                         const NormalizeOptions& options = {});

}  // namespace dimeval

#endif  // DIMEVAL_IO_HPP_
