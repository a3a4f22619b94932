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

#include "dimeval/report.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include <json.hpp>

#include "dimeval/error.hpp"
#include "dimeval/io.hpp"
#include "dimeval/json_writer.hpp"
#include "dimeval/metrics.hpp"
#include "dimeval/numeric.hpp"

namespace dimeval {

namespace {

// True if a ranks strictly ahead of b.
bool better(double a, double b, ScoreDirection direction) {
  return direction == ScoreDirection::kLowerIsBetter ? a < b : a > b;
}

void require_single_board(std::span<const LeaderboardEntry> entries) {
  for (const auto& e : entries) {
    if (e.dataset != entries.front().dataset ||
        e.subtask != entries.front().subtask) {
      throw Error(ErrorCode::kMixedDatasets,
                  "leaderboard entries mix " + entries.front().dataset.name() +
                      "/" + std::string(to_string(entries.front().subtask)) +
                      " with " + e.dataset.name() + "/" +
                      std::string(to_string(e.subtask)));
    }
  }
}

std::string metric_name(Subtask subtask) {
  return subtask == Subtask::kDimASR ? "RMSE" : "cF1";
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string markdown_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += '\\';
    if (c == '\n' || c == '\r') {
      out += ' ';
      continue;
    }
    out += c;
  }
  return out;
}

std::string render_markdown(std::span<const RankedBoard> boards,
                            int precision) {
  std::string out;
  for (const auto& board : boards) {
    if (!out.empty()) out += '\n';
    const bool lower =
        direction_for(board.subtask) == ScoreDirection::kLowerIsBetter;
    out += "## " + board.dataset.name() + " " +
           std::string(to_string(board.subtask)) + " (" +
           metric_name(board.subtask) + ", " +
           (lower ? "lower" : "higher") + " is better)\n\n";
    out += "| Rank | Team | Score |\n";
    out += "|---:|:---|---:|\n";
    bool average_written = false;
    for (const auto& row : board.rows) {
      if (!row.rank && board.average && !average_written) {
        out += "|  | Average | " + format_fixed(*board.average, precision) +
               " |\n";
        average_written = true;
      }
      out += "| " + (row.rank ? std::to_string(*row.rank) : std::string()) +
             " | " + markdown_cell(row.entry.team) + " | " +
             format_fixed(row.entry.score, precision) + " |\n";
    }
    if (board.average && !average_written) {
      out += "|  | Average | " + format_fixed(*board.average, precision) +
             " |\n";
    }
  }
  return out;
}

std::string render_csv(std::span<const RankedBoard> boards, int precision) {
  std::string out = "dataset,subtask,rank,team,score,baseline\r\n";
  for (const auto& board : boards) {
    for (const auto& row : board.rows) {
      out += csv_field(board.dataset.name()) + "," +
             std::string(to_string(board.subtask)) + "," +
             (row.rank ? std::to_string(*row.rank) : std::string()) + "," +
             csv_field(row.entry.team) + "," +
             format_fixed(row.entry.score, precision) + "," +
             (row.entry.is_baseline ? "true" : "false") + "\r\n";
    }
  }
  return out;
}

std::string render_json(std::span<const RankedBoard> boards, int precision) {
  JsonWriter w;
  w.begin_object();
  w.key("precision").value(precision);
  w.key("boards").begin_array();
  for (const auto& board : boards) {
    w.begin_object();
    w.key("dataset").value(board.dataset.name());
    w.key("subtask").value(to_string(board.subtask));
    w.key("metric").value(metric_name(board.subtask));
    w.key("direction")
        .value(direction_for(board.subtask) == ScoreDirection::kLowerIsBetter
                   ? "lower_is_better"
                   : "higher_is_better");
    w.key("average");
    if (board.average) {
      w.fixed(*board.average, precision);
    } else {
      w.null();
    }
    w.key("entries").begin_array();
    for (const auto& row : board.rows) {
      w.begin_object();
      w.key("rank");
      if (row.rank) {
        w.value(*row.rank);
      } else {
        w.null();
      }
      w.key("team").value(row.entry.team);
      w.key("score").fixed(row.entry.score, precision);
      w.key("baseline").value(row.entry.is_baseline);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

LeaderboardEntry entry_from_report(const std::filesystem::path& file,
                                   std::string team,
                                   std::optional<std::string> dataset_name,
                                   std::optional<Subtask> expected_subtask,
                                   bool baseline_flag) {
  ScoreReport report;
  try {
    report = ScoreReport::from_json(read_file(file));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), file.string() + ": " + e.what());
  }
  if (expected_subtask && *expected_subtask != report.subtask) {
    throw Error(ErrorCode::kSchemaError,
                file.string() + ": report subtask " +
                    std::string(to_string(report.subtask)) +
                    " does not match its file name");
  }
  if (!dataset_name) dataset_name = report.dataset;
  if (!dataset_name) {
    throw Error(ErrorCode::kSchemaError,
                file.string() + ": no dataset given for team '" + team + "'");
  }
  const auto dataset = DatasetId::parse(*dataset_name);
  if (!dataset) {
    throw Error(ErrorCode::kSchemaError,
                file.string() + ": unknown dataset '" + *dataset_name + "'");
  }
  const bool baseline =
      baseline_flag || report.baseline || looks_like_baseline(team);
  return {std::move(team), *dataset, report.subtask, report.score, baseline};
}

}  // namespace

ScoreDirection direction_for(Subtask subtask) {
  return subtask == Subtask::kDimASR ? ScoreDirection::kLowerIsBetter
                                     : ScoreDirection::kHigherIsBetter;
}

RankedBoard rank(std::span<const LeaderboardEntry> entries) {
  if (entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot rank an empty leaderboard");
  }
  require_single_board(entries);
  const ScoreDirection direction = direction_for(entries.front().subtask);

  std::vector<LeaderboardEntry> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end(),
            [direction](const LeaderboardEntry& a, const LeaderboardEntry& b) {
              if (a.is_baseline != b.is_baseline) return !a.is_baseline;
              if (a.score != b.score) return better(a.score, b.score, direction);
              return a.team < b.team;
            });

  RankedBoard board{entries.front().dataset, entries.front().subtask, {},
                    std::nullopt};
  int position = 0;
  std::optional<double> previous;
  int previous_rank = 0;
  for (auto& e : sorted) {
    RankedEntry row{std::move(e), std::nullopt};
    if (!row.entry.is_baseline) {
      ++position;
      if (!previous || *previous != row.entry.score) {
        previous_rank = position;
        previous = row.entry.score;
      }
      row.rank = previous_rank;
    }
    board.rows.push_back(std::move(row));
  }
  return board;
}

double aggregate_average(std::span<const LeaderboardEntry> entries,
                         int precision) {
  if (!entries.empty()) require_single_board(entries);
  std::vector<double> scores;
  for (const auto& e : entries) {
    if (!e.is_baseline) scores.push_back(e.score);
  }
  if (scores.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "no participant scores to average");
  }
  const double mean =
      order_insensitive_sum(scores) / static_cast<double>(scores.size());
  return round_half_up(mean, precision);
}

std::vector<RankedBoard> build_leaderboards(
    std::span<const LeaderboardEntry> entries, int precision) {
  std::map<std::tuple<Subtask, DatasetId>, std::vector<LeaderboardEntry>>
      groups;
  for (const auto& e : entries) groups[{e.subtask, e.dataset}].push_back(e);
  std::vector<RankedBoard> boards;
  for (const auto& [key, group] : groups) {
    RankedBoard board = rank(group);
    const bool has_participants =
        std::any_of(group.begin(), group.end(),
                    [](const LeaderboardEntry& e) { return !e.is_baseline; });
    if (has_participants) board.average = aggregate_average(group, precision);
    boards.push_back(std::move(board));
  }
  return boards;
}

std::optional<BoardFormat> parse_board_format(std::string_view text) {
  if (text == "markdown" || text == "md") return BoardFormat::kMarkdown;
  if (text == "csv") return BoardFormat::kCsv;
  if (text == "json") return BoardFormat::kJson;
  return std::nullopt;
}

std::string render(std::span<const RankedBoard> boards, BoardFormat format,
                   int precision) {
  switch (format) {
    case BoardFormat::kMarkdown: return render_markdown(boards, precision);
    case BoardFormat::kCsv: return render_csv(boards, precision);
    case BoardFormat::kJson: return render_json(boards, precision);
  }
  return {};
}

bool looks_like_baseline(std::string_view team) {
  constexpr std::string_view kPrefix = "baseline";
  if (team.size() < kPrefix.size()) return false;
  for (std::size_t i = 0; i < kPrefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(team[i])) != kPrefix[i]) {
      return false;
    }
  }
  return team.size() == kPrefix.size() ||
         !std::isalnum(static_cast<unsigned char>(team[kPrefix.size()]));
}

std::vector<LeaderboardEntry> load_report_directory(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoError,
                "'" + dir.string() + "' is not a readable directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::directory_iterator(dir, ec)) {
    if (item.is_regular_file() && item.path().extension() == ".json") {
      files.push_back(item.path());
    }
  }
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot list '" + dir.string() + "': " + ec.message());
  }
  std::sort(files.begin(), files.end());

  std::vector<LeaderboardEntry> entries;
  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    const auto first = stem.find("__");
    const auto second =
        first == std::string::npos ? first : stem.find("__", first + 2);
    if (first == std::string::npos || second == std::string::npos ||
        first == 0) {
      throw Error(ErrorCode::kSchemaError,
                  file.string() +
                      ": expected a name of the form "
                      "<team>__<dataset>__<subtask>.json");
    }
    const std::string team = stem.substr(0, first);
    const std::string dataset = stem.substr(first + 2, second - first - 2);
    const auto subtask = parse_subtask(stem.substr(second + 2));
    if (!subtask) {
      throw Error(ErrorCode::kSchemaError,
                  file.string() + ": unknown subtask '" +
                      stem.substr(second + 2) + "' in file name");
    }
    entries.push_back(
        entry_from_report(file, team, dataset, subtask, false));
  }
  return entries;
}

std::vector<LeaderboardEntry> load_manifest(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                path.string() + ": manifest is not valid JSON: " + e.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&base](const std::string& file) {
    const std::filesystem::path p(file);
    return p.is_absolute() ? p : base / p;
  };

  std::vector<LeaderboardEntry> entries;
  if (doc.is_object()) {
    for (const auto& [team, file] : doc.items()) {
      if (!file.is_string()) {
        throw Error(ErrorCode::kSchemaError,
                    path.string() + ": manifest value for '" + team +
                        "' must be a file path");
      }
      entries.push_back(entry_from_report(resolve(file.get<std::string>()),
                                          team, std::nullopt, std::nullopt,
                                          false));
    }
    return entries;
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kSchemaError,
                path.string() + ": manifest must be an object or an array");
  }
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("team") ||
        !item["team"].is_string() || !item.contains("file") ||
        !item["file"].is_string()) {
      throw Error(ErrorCode::kSchemaError,
                  path.string() +
                      ": manifest entries need string fields \"team\" and "
                      "\"file\"");
    }
    std::optional<std::string> dataset;
    if (item.contains("dataset") && item["dataset"].is_string()) {
      dataset = item["dataset"].get<std::string>();
    }
    const bool baseline = item.contains("baseline") &&
                          item["baseline"].is_boolean() &&
                          item["baseline"].get<bool>();
    entries.push_back(entry_from_report(
        resolve(item["file"].get<std::string>()),
        item["team"].get<std::string>(), dataset, std::nullopt, baseline));
  }
  return entries;
}

}  // namespace dimeval
