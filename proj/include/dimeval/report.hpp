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

#ifndef DIMEVAL_REPORT_HPP_
#define DIMEVAL_REPORT_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimeval/model.hpp"

namespace dimeval {

enum class ScoreDirection { kLowerIsBetter, kHigherIsBetter };

// RMSE (DimASR) ranks ascending; cF1 (DimASTE, DimASQP) descending.
ScoreDirection direction_for(Subtask subtask);

struct LeaderboardEntry {
  std::string team;
  DatasetId dataset;
  Subtask subtask;
  double score;
  bool is_baseline = false;
};

struct RankedEntry {
  LeaderboardEntry entry;
  std::optional<int> rank;  // empty for baselines
};

struct RankedBoard {
  DatasetId dataset;
  Subtask subtask;
  // Ranked participants best-first, then baselines best-first.
  std::vector<RankedEntry> rows;
  // Participant mean; absent when the board has no participants.
  std::optional<double> average;
};

// Competition ranking (1, 1, 3) of the participants; ties are listed by team
// name. Throws kMixedDatasets if entries span datasets or subtasks, and
// kEmptyInput for an empty list.
RankedBoard rank(std::span<const LeaderboardEntry> entries);

// Mean participant score rounded half-up to `precision` decimals. Baselines
// are excluded. Throws kEmptyInput or kMixedDatasets.
double aggregate_average(std::span<const LeaderboardEntry> entries,
                         int precision = 4);

// One ranked board per (dataset, subtask), ordered by subtask then dataset.
std::vector<RankedBoard> build_leaderboards(
    std::span<const LeaderboardEntry> entries, int precision = 4);

enum class BoardFormat { kMarkdown, kCsv, kJson };

std::optional<BoardFormat> parse_board_format(std::string_view text);

std::string render(std::span<const RankedBoard> boards, BoardFormat format,
                   int precision = 4);

// "Baseline(KimiK2)", "Baseline (mBERT)", ...
bool looks_like_baseline(std::string_view team);

// Reads every <team>__<dataset>__<subtask>.json score report in `dir`.
// Throws kIoError or kSchemaError.
std::vector<LeaderboardEntry> load_report_directory(
    const std::filesystem::path& dir);

// Reads a manifest: either {"<team>": "<report path>", ...} or
// [{"team": ..., "file": ..., "dataset"?: ..., "baseline"?: bool}, ...].
// Relative paths resolve against the manifest's directory.
std::vector<LeaderboardEntry> load_manifest(const std::filesystem::path& path);

}  // namespace dimeval

#endif  // DIMEVAL_REPORT_HPP_
