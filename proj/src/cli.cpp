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

#include "dimeval/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dimeval/agreement.hpp"
#include "dimeval/error.hpp"
#include "dimeval/io.hpp"
#include "dimeval/metrics.hpp"
#include "dimeval/numeric.hpp"
#include "dimeval/report.hpp"

namespace dimeval::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Diagnostics printed to stderr per failing file.
constexpr std::size_t kMaxListedDiagnostics = 20;

struct CommonOptions {
  std::string subtask;
  std::string gold;
  std::string pred;
  std::string vocab;
  std::string dataset;
  std::string out;
  std::string team;
  std::string format = "markdown";
  std::string reports;
  std::string manifest;
  std::vector<std::string> annotations;
  std::optional<int> precision;
  unsigned threads = 1;
  bool strict = false;
  bool lenient = false;
  bool ignore_case = false;
  bool greedy = false;
  bool per_sentence = false;
  bool baseline = false;
  bool leave_one_out = false;
  bool tuples_only = false;
};

Subtask require_subtask(const CommonOptions& o) {
  const auto subtask = parse_subtask(o.subtask);
  if (!subtask) {
    throw UsageError("--subtask must be 1, 2 or 3 (got '" + o.subtask + "')");
  }
  return *subtask;
}

int resolve_precision(const CommonOptions& o,
                      const std::optional<std::string>& env) {
  int precision = MetricConfig::kDefaultPrecision;
  if (o.precision) {
    precision = *o.precision;
  } else if (env && !env->empty()) {
    const char* first = env->data();
    const char* last = first + env->size();
    const auto [ptr, ec] = std::from_chars(first, last, precision);
    if (ec != std::errc() || ptr != last) {
      throw UsageError("DIMEVAL_PRECISION must be an integer (got '" + *env +
                       "')");
    }
  }
  if (precision < 0 || precision > kMaxReportPrecision) {
    throw UsageError("precision must be between 0 and " +
                     std::to_string(kMaxReportPrecision));
  }
  return precision;
}

Strictness strictness_of(const CommonOptions& o) {
  return o.lenient ? Strictness::kLenient : Strictness::kStrict;
}

std::optional<DatasetId> dataset_of(const CommonOptions& o) {
  if (o.dataset.empty()) return std::nullopt;
  auto id = DatasetId::parse(o.dataset);
  if (!id) throw UsageError("unknown dataset '" + o.dataset + "'");
  return id;
}

// Custom vocabulary from --vocab, else the built-in one for --dataset.
std::optional<CategoryVocabulary> vocabulary_of(const CommonOptions& o) {
  if (!o.vocab.empty()) {
    return CategoryVocabulary::from_json(read_file(o.vocab));
  }
  if (const auto id = dataset_of(o)) {
    if (const auto domain = id->vocabulary_domain()) {
      return CategoryVocabulary::builtin(*domain);
    }
  }
  return std::nullopt;
}

void check_greedy(const CommonOptions& o, Subtask subtask) {
  if (o.greedy && subtask == Subtask::kDimASR) {
    throw UsageError("--greedy-match does not apply to subtask 1");
  }
}

void list_diagnostics(std::ostream& err, const std::string& label,
                      const ValidationReport& report) {
  err << label << ": " << report.errors.size() << " error(s)\n";
  std::size_t shown = 0;
  for (const auto& d : report.errors) {
    if (shown++ == kMaxListedDiagnostics) {
      err << "  ...\n";
      break;
    }
    err << "  line " << d.line << ": " << d.code << ": " << d.message << "\n";
  }
}

void append_load_warnings(const std::string& label,
                          const ValidationReport& report,
                          std::vector<std::string>& warnings) {
  for (const auto& d : report.warnings) {
    warnings.push_back(label + " line " + std::to_string(d.line) + ": " +
                       d.code + ": " + d.message);
  }
}

class Output {
 public:
  Output(std::ostream& out, std::string path)
      : out_(out), path_(std::move(path)) {}

  void write(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIoError, "cannot write '" + path_ + "'");
    file << text;
    if (!file) throw Error(ErrorCode::kIoError, "error writing '" + path_ + "'");
  }

 private:
  std::ostream& out_;
  std::string path_;
};

int cmd_validate(const CommonOptions& o, std::ostream& out,
                 std::ostream& err) {
  const Subtask subtask = require_subtask(o);
  check_greedy(o, subtask);
  if (o.gold.empty() == o.pred.empty()) {
    throw UsageError("validate takes exactly one of --gold or --pred");
  }
  const auto vocab = vocabulary_of(o);
  const CategoryVocabulary* vocab_ptr =
      subtask == Subtask::kDimASQP && vocab ? &*vocab : nullptr;
  const LoadResult result =
      o.gold.empty()
          ? load_predictions(o.pred, subtask, strictness_of(o), vocab_ptr)
          : load_gold(o.gold, subtask, vocab_ptr, strictness_of(o));
  Output(out, o.out).write(result.report.to_json());
  if (!result.ok()) {
    list_diagnostics(err, o.gold.empty() ? o.pred : o.gold, result.report);
    return kValidationFailure;
  }
  return kSuccess;
}

int cmd_score(const CommonOptions& o, int precision, std::ostream& out,
              std::ostream& err) {
  const Subtask subtask = require_subtask(o);
  check_greedy(o, subtask);
  if (o.gold.empty() || o.pred.empty()) {
    throw UsageError("score needs both --gold and --pred");
  }
  const auto dataset = dataset_of(o);
  const auto vocab = vocabulary_of(o);
  const CategoryVocabulary* vocab_ptr =
      subtask == Subtask::kDimASQP && vocab ? &*vocab : nullptr;

  const LoadResult gold =
      load_gold(o.gold, subtask, vocab_ptr, strictness_of(o));
  const LoadResult pred = load_predictions(o.pred, subtask, strictness_of(o));
  if (!gold.ok() || !pred.ok()) {
    if (!gold.ok()) list_diagnostics(err, o.gold, gold.report);
    if (!pred.ok()) list_diagnostics(err, o.pred, pred.report);
    return kValidationFailure;
  }

  NormalizeOptions normalize;
  normalize.ignore_case = o.ignore_case;
  ScoreReport report;
  if (subtask == Subtask::kDimASR) {
    report = make_report(score_regression(gold.dataset, pred.dataset,
                                          normalize));
  } else {
    ScoreOptions options;
    options.match.normalize = normalize;
    options.match.policy =
        o.greedy ? MatchPolicy::kGreedy : MatchPolicy::kOptimal;
    options.threads = std::max(1u, o.threads);
    options.per_sentence = o.per_sentence;
    report = make_report(
        score_extraction(gold.dataset, pred.dataset, subtask, options),
        subtask);
  }
  std::vector<std::string> warnings;
  append_load_warnings("gold", gold.report, warnings);
  append_load_warnings("pred", pred.report, warnings);
  warnings.insert(warnings.end(), report.warnings.begin(),
                  report.warnings.end());
  report.warnings = std::move(warnings);
  if (!o.team.empty()) report.team = o.team;
  if (dataset) report.dataset = dataset->name();
  report.baseline = o.baseline;
  Output(out, o.out).write(report.to_json(precision));
  return kSuccess;
}

int cmd_agreement(const CommonOptions& o, int precision, std::ostream& out,
                  std::ostream& err) {
  const Subtask subtask = require_subtask(o);
  if (o.annotations.size() < 2) {
    throw UsageError("agreement needs at least two --annotations files");
  }
  NormalizeOptions normalize;
  normalize.ignore_case = o.ignore_case;

  std::vector<Dataset> datasets;
  AgreementReport report;
  report.reference = o.leave_one_out ? MeanReference::kLeaveOneOut
                                     : MeanReference::kInclusive;
  bool failed = false;
  for (const auto& path : o.annotations) {
    LoadOptions options;
    options.strictness = strictness_of(o);
    options.allow_annotator = true;
    LoadResult loaded =
        parse_records(std::string_view(read_file(path)), subtask, options);
    if (!loaded.ok()) {
      list_diagnostics(err, path, loaded.report);
      failed = true;
      continue;
    }
    report.annotators.push_back(
        loaded.dataset.annotator.value_or(
            std::filesystem::path(path).stem().string()));
    datasets.push_back(std::move(loaded.dataset));
  }
  if (failed) return kValidationFailure;

  for (const auto& a : datasets) {
    std::vector<double> row;
    for (const auto& b : datasets) {
      row.push_back(tuple_agreement_f1(a, b, subtask, normalize).f1);
    }
    report.tuple_f1.push_back(std::move(row));
  }
  if (!o.tuples_only) {
    std::vector<AnnotatorRatings> ratings;
    for (std::size_t i = 0; i < datasets.size(); ++i) {
      ratings.push_back(
          AnnotatorRatings::from_dataset(datasets[i], report.annotators[i]));
    }
    report.va = va_agreement_rmse(ratings, report.reference);
  }
  Output(out, o.out).write(report.to_json(precision));
  return kSuccess;
}

int cmd_leaderboard(const CommonOptions& o, int precision, std::ostream& out) {
  if (o.reports.empty() == o.manifest.empty()) {
    throw UsageError("leaderboard takes exactly one of --reports or --manifest");
  }
  const auto format = parse_board_format(o.format);
  if (!format) {
    throw UsageError("--format must be json, csv or markdown");
  }
  const auto entries = o.reports.empty() ? load_manifest(o.manifest)
                                         : load_report_directory(o.reports);
  const auto boards = build_leaderboards(entries, precision);
  Output(out, o.out).write(render(boards, *format, precision));
  return kSuccess;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool with_subtask) {
  if (with_subtask) {
    cmd->add_option("--subtask", o.subtask, "1 (DimASR), 2 (DimASTE) or 3 (DimASQP)")
        ->required();
  }
  cmd->add_option("--out", o.out, "Write output to PATH instead of stdout");
  cmd->add_option("--precision", o.precision,
                  "Decimal places in reported scores (default 4)");
}

void add_strictness(CLI::App* cmd, CommonOptions& o) {
  auto* strict = cmd->add_flag("--strict", o.strict,
                               "Treat repairable problems as errors (default)");
  auto* lenient = cmd->add_flag("--lenient", o.lenient,
                                "Repair what can be repaired and warn");
  strict->excludes(lenient);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& precision_env) {
  CLI::App app{"Evaluation toolkit for dimensional aspect-based sentiment "
               "and stance analysis",
               "dimeval"};
  app.require_subcommand(1);
  CommonOptions o;

  auto* validate = app.add_subcommand("validate", "Check a gold or prediction file");
  add_common(validate, o, true);
  add_strictness(validate, o);
  validate->add_option("--gold", o.gold, "Gold file");
  validate->add_option("--pred", o.pred, "Prediction file");
  validate->add_option("--vocab", o.vocab, "Custom category vocabulary (JSON)");
  validate->add_option("--dataset", o.dataset, "Dataset id, e.g. eng-rest");
  validate->add_flag("--ignore-case", o.ignore_case, "Accepted for symmetry with score");
  validate->add_flag("--greedy-match", o.greedy, "Accepted for symmetry with score");

  auto* score = app.add_subcommand("score", "Score predictions against gold");
  add_common(score, o, true);
  add_strictness(score, o);
  score->add_option("--gold", o.gold, "Gold file")->required();
  score->add_option("--pred", o.pred, "Prediction file")->required();
  score->add_option("--vocab", o.vocab, "Custom category vocabulary (JSON)");
  score->add_option("--dataset", o.dataset, "Dataset id, e.g. eng-rest");
  score->add_option("--team", o.team, "Team name recorded in the report");
  score->add_flag("--baseline", o.baseline, "Mark the report as a baseline run");
  score->add_flag("--ignore-case", o.ignore_case, "Case-insensitive span matching");
  score->add_flag("--greedy-match", o.greedy,
                  "First-come tuple pairing in file order (subtasks 2 and 3)");
  score->add_flag("--per-sentence", o.per_sentence,
                  "Include per-sentence cTP details (subtasks 2 and 3)");
  score->add_option("--threads", o.threads, "Worker threads for matching")
      ->check(CLI::Range(1u, 256u));

  auto* agreement =
      app.add_subcommand("agreement", "Inter-annotator agreement statistics");
  add_common(agreement, o, true);
  add_strictness(agreement, o);
  agreement->add_option("--annotations", o.annotations,
                        "One file per annotator")
      ->required()
      ->expected(2, -1);
  agreement->add_flag("--ignore-case", o.ignore_case, "Case-insensitive span matching");
  agreement->add_flag("--leave-one-out", o.leave_one_out,
                      "Compare each annotator with the mean of the others");
  agreement->add_flag("--tuples-only", o.tuples_only,
                      "Skip VA agreement (tuple sets differ across annotators)");

  auto* leaderboard =
      app.add_subcommand("leaderboard", "Rank score reports into tables");
  add_common(leaderboard, o, false);
  leaderboard->add_option("--reports", o.reports,
                          "Directory of <team>__<dataset>__<subtask>.json");
  leaderboard->add_option("--manifest", o.manifest, "Manifest JSON file");
  leaderboard->add_option("--format", o.format, "json, csv or markdown");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsageError;
  }

  try {
    auto precision = [&] { return resolve_precision(o, precision_env); };
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (score->parsed()) return cmd_score(o, precision(), out, err);
    if (agreement->parsed()) return cmd_agreement(o, precision(), out, err);
    if (leaderboard->parsed()) return cmd_leaderboard(o, precision(), out);
    err << "no subcommand given\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << (is_alignment_error(e.code()) ? "AlignmentError: " : "")
        << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kIoError ? kIoFailure : kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const char* env = std::getenv("DIMEVAL_PRECISION");
  return run(args, out, err,
             env ? std::optional<std::string>(env) : std::nullopt);
}

}  // namespace dimeval::cli
