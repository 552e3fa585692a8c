// Copyright 2026 The Pyramid Masker Authors.
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

// Command-line front end: mask, stats, score-sentence, eval-pyramid, inspect.
//
// Exit codes: 0 success, 1 fatal error (bad flags, I/O failure, strict-mode
// abort), 2 when every cluster in a non-empty input failed.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pyramid_masker/cluster.h"
#include "pyramid_masker/ingest.h"
#include "pyramid_masker/pipeline.h"
#include "pyramid_masker/pyr_eval.h"
#include "pyramid_masker/segment.h"
#include "pyramid_masker/select.h"
#include "pyramid_masker/text_util.h"

namespace pm = pyramid_masker;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitNoneSucceeded = 2;
constexpr char kWorkersEnv[] = "PYRAMID_MASKER_WORKERS";

// Reads a flat `key = value` file into `--key=value` arguments. Blank lines
// and lines starting with '#' are ignored; values may be quoted.
std::vector<std::string> ConfigFileArgs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pm::IoError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = pm::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    }
    std::string key(pm::Trim(trimmed.substr(0, eq)));
    std::string value(pm::Trim(trimmed.substr(eq + 1)));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

// argv with the config file's entries spliced in right after the
// subcommand name, so that later command-line flags override them.
std::vector<std::string> ExpandArgs(int argc, char** argv,
                                    std::vector<std::string>* user_args) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2 || args[1].empty() || args[1].front() == '-') {
    return args;
  }
  user_args->assign(args.begin() + 2, args.end());
  std::optional<std::string> config_path;
  for (size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path) return args;
  std::vector<std::string> expanded(args.begin(), args.begin() + 2);
  for (std::string& a : ConfigFileArgs(*config_path)) {
    expanded.push_back(std::move(a));
  }
  expanded.insert(expanded.end(), args.begin() + 2, args.end());
  return expanded;
}

bool GivenOnCommandLine(const std::vector<std::string>& user_args,
                        const std::vector<std::string>& names) {
  for (const std::string& arg : user_args) {
    for (const std::string& name : names) {
      if (arg == name || arg.rfind(name + "=", 0) == 0 ||
          (name.size() == 2 && arg.rfind(name, 0) == 0)) {
        return true;
      }
    }
  }
  return false;
}

struct NormalizationFlags {
  std::string stemming = "porter";
  bool no_lowercase = false;
  bool keep_punctuation = false;

  void Register(CLI::App* app) {
    app->add_option("--stemming", stemming, "Token stemming")
        ->check(CLI::IsMember({"none", "porter"}));
    app->add_flag("--no-lowercase", no_lowercase,
                  "Keep case when normalizing tokens for ROUGE");
    app->add_flag("--keep-punctuation", keep_punctuation,
                  "Keep punctuation when normalizing tokens for ROUGE");
  }

  pm::NormalizationConfig Build() const {
    pm::NormalizationConfig config;
    config.lowercase = !no_lowercase;
    config.strip_punctuation = !keep_punctuation;
    config.stemming =
        stemming == "none" ? pm::Stemming::kNone : pm::Stemming::kPorter;
    return config;
  }
};

pm::AbbreviationList LoadAbbreviations(const std::string& path) {
  return path.empty() ? pm::AbbreviationList::Default()
                      : pm::AbbreviationList::FromFile(path);
}

// Opens `path` for writing; "-" is stdout.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cout;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw pm::IoError("cannot open output '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

// ---------------------------------------------------------------- mask

struct MaskOptions {
  std::string input = "-";
  std::string output = "-";
  std::string config;
  std::string strategy = "entity_pyramid";
  double mask_ratio = 0.15;
  double copy_ratio = 0.15;
  std::string salience_variant = "mean_r1_r2_f1";
  uint64_t seed = 0;
  std::string entities = "rules";
  std::string abbreviations;
  int input_limit = 4096;
  int output_limit = 1024;
  bool no_lead_sep = false;
  bool emit_text = false;
  int workers = 1;
  bool strict = false;
  size_t progress_every = 1000;
  NormalizationFlags normalization;
};

void RegisterMask(CLI::App* app, MaskOptions& o) {
  app->add_option("--input,-i", o.input, "Cluster JSONL ('-' for stdin)");
  app->add_option("--output,-o", o.output, "Example JSONL ('-' for stdout)");
  app->add_option("--config", o.config, "Flat key = value file of flags");
  app->add_option("--strategy", o.strategy, "Sentence selection strategy")
      ->check(CLI::IsMember({"entity_pyramid", "principle", "lead", "random"}));
  app->add_option("--mask-ratio", o.mask_ratio, "Fraction of sentences masked")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--copy-ratio", o.copy_ratio,
                  "Fraction of sentences copied into the target")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--salience-variant", o.salience_variant,
                  "ROUGE used for sentence salience")
      ->check(CLI::IsMember({"r1_f1", "r2_f1", "mean_r1_r2_f1"}));
  app->add_option("--seed", o.seed, "Seed for the random strategy");
  app->add_option("--entities", o.entities, "Entity source")
      ->check(CLI::IsMember({"rules", "provided"}));
  app->add_option("--abbreviations", o.abbreviations,
                  "Abbreviation list replacing the built-in one")
      ->check(CLI::ExistingFile);
  app->add_option("--input-limit", o.input_limit, "Input token limit")
      ->check(CLI::PositiveNumber);
  app->add_option("--output-limit", o.output_limit, "Target token limit")
      ->check(CLI::PositiveNumber);
  app->add_flag("--no-lead-sep", o.no_lead_sep,
                "Separators only between documents, not before the first");
  app->add_flag("--emit-text", o.emit_text,
                "Also write space-joined input_text and target_text");
  app->add_option("--workers,-j", o.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  app->add_flag("--strict", o.strict, "Abort at the first bad record");
  app->add_option("--progress-every", o.progress_every,
                  "Clusters between progress lines on stderr (0 = off)");
  o.normalization.Register(app);
}

int RunMask(const MaskOptions& o, const std::vector<std::string>& user_args) {
  pm::PipelineConfig config;
  config.normalization = o.normalization.Build();
  config.selection.strategy = *pm::ParseStrategy(o.strategy);
  config.selection.mask_ratio = o.mask_ratio;
  config.selection.copy_ratio = o.copy_ratio;
  config.selection.variant = *pm::ParseSalienceVariant(o.salience_variant);
  config.selection.seed = o.seed;
  config.mask.input_token_limit = o.input_limit;
  config.mask.output_token_limit = o.output_limit;
  config.mask.lead_separator = !o.no_lead_sep;
  config.entity_source =
      o.entities == "provided" ? pm::EntitySource::kProvided
                               : pm::EntitySource::kRules;
  config.worker_count = o.workers;
  if (const char* env = std::getenv(kWorkersEnv);
      env != nullptr && *env != '\0' &&
      !GivenOnCommandLine(user_args, {"--workers", "-j"})) {
    try {
      config.worker_count = std::stoi(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(kWorkersEnv) +
                                  " is not an integer");
    }
  }
  config.strict = o.strict;
  config.emit_text = o.emit_text;
  config.progress_every = o.progress_every;

  const pm::ClusterProcessor processor(config,
                                       LoadAbbreviations(o.abbreviations));
  const std::unique_ptr<std::istream> in = pm::OpenInput(o.input);
  OutputSink out(o.output);
  const pm::RunSummary summary = pm::RunMaskPipeline(
      *in, o.input, out.stream(), std::cerr, processor);
  std::cerr << summary.ToJson().dump() << '\n';
  if (summary.processed == 0 && summary.clusters_seen() > 0) {
    return kExitNoneSucceeded;
  }
  return kExitOk;
}

// --------------------------------------------------------------- stats

struct StatsOptions {
  std::string input = "-";
  std::string config;
};

int RunStats(const StatsOptions& o) {
  const std::unique_ptr<std::istream> in = pm::OpenInput(o.input);
  pm::ClusterReader reader(*in, o.input);
  pm::CorpusStatsAccumulator stats;
  while (std::optional<pm::LoadedRecord> record = reader.Next()) {
    if (!record->ok()) {
      ordered_json line;
      line["event"] = "record_error";
      line["line"] = record->line;
      line["cluster_id"] = record->error().cluster_id;
      line["error"] = record->error().message;
      std::cerr << line.dump() << '\n';
      continue;
    }
    stats.Add(record->cluster());
  }
  std::cout << pm::CorpusStatsToJson(stats.Result()).dump() << '\n';
  return kExitOk;
}

// ------------------------------------------------------ score-sentence

struct ScoreOptions {
  std::string input = "-";
  std::string config;
  std::string cluster_id;
  size_t index = 0;
  std::string salience_variant = "mean_r1_r2_f1";
  std::string abbreviations;
  NormalizationFlags normalization;
};

int RunScore(const ScoreOptions& o) {
  const std::unique_ptr<std::istream> in = pm::OpenInput(o.input);
  pm::ClusterReader reader(*in, o.input);
  size_t position = 0;
  while (std::optional<pm::LoadedRecord> record = reader.Next()) {
    if (!record->ok()) continue;
    const pm::DocumentCluster& cluster = record->cluster();
    const bool wanted = o.cluster_id.empty() ? position == o.index
                                             : cluster.cluster_id == o.cluster_id;
    ++position;
    if (!wanted) continue;
    std::cout << pm::ScoreClusterSentences(
                     cluster, o.normalization.Build(),
                     LoadAbbreviations(o.abbreviations),
                     *pm::ParseSalienceVariant(o.salience_variant))
                     .dump()
              << '\n';
    return kExitOk;
  }
  std::cerr << "error: requested cluster not found in " << o.input << '\n';
  return kExitFatal;
}

// -------------------------------------------------------- eval-pyramid

struct EvalOptions {
  std::string input = "-";
  std::string config;
  std::string len_unit = "words";
  std::string aggregate = "mean";
  bool strict = false;
};

void AppendScore(const pm::PyramidScore& score, ordered_json* row) {
  (*row)["raw"] = score.raw;
  (*row)["recall"] = score.recall;
  (*row)["precision"] = score.precision;
  (*row)["f1"] = score.f1;
}

int RunEvalPyramid(const EvalOptions& o) {
  pm::PyramidEvalOptions options;
  options.length_unit =
      o.len_unit == "chars" ? pm::LengthUnit::kChars : pm::LengthUnit::kWords;
  options.aggregation = o.aggregate == "majority"
                            ? pm::CoverageAggregation::kMajority
                            : pm::CoverageAggregation::kMean;
  const std::unique_ptr<std::istream> in = pm::OpenInput(o.input);
  std::vector<pm::PyramidScore> scores;
  ordered_json summaries = ordered_json::array();
  std::string line;
  size_t line_no = 0;
  size_t failed = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (pm::Trim(line).empty()) continue;
    try {
      const pm::EvaluatedSummary result =
          pm::EvaluatePyramidRecord(json::parse(line), options);
      ordered_json row;
      row["summary_id"] = result.summary_id;
      row["gold_len"] = result.gold_len;
      row["sys_len"] = result.sys_len;
      AppendScore(result.score, &row);
      summaries.push_back(std::move(row));
      scores.push_back(result.score);
    } catch (const std::exception& e) {
      ++failed;
      ordered_json diag;
      diag["event"] = "record_error";
      diag["line"] = line_no;
      diag["error"] = e.what();
      std::cerr << diag.dump() << '\n';
      if (o.strict) return kExitFatal;
    }
  }
  if (in->bad()) throw pm::IoError("read failure on " + o.input);
  ordered_json out;
  out["count"] = scores.size();
  out["summaries"] = std::move(summaries);
  ordered_json mean;
  AppendScore(pm::MeanPyramidScore(scores), &mean);
  out["mean"] = std::move(mean);
  std::cout << out.dump() << '\n';
  return scores.empty() && failed > 0 ? kExitNoneSucceeded : kExitOk;
}

// ------------------------------------------------------------- inspect

struct InspectOptions {
  std::string input = "-";
  std::string config;
  std::string cluster_id;
  size_t index = 0;
};

int RunInspect(const InspectOptions& o) {
  const std::unique_ptr<std::istream> in = pm::OpenInput(o.input);
  std::string line;
  size_t position = 0;
  while (std::getline(*in, line)) {
    if (pm::Trim(line).empty()) continue;
    const pm::MaskedExample example = pm::ParseExample(line);
    const bool wanted = o.cluster_id.empty()
                            ? position == o.index
                            : example.cluster_id == o.cluster_id;
    ++position;
    if (wanted) {
      std::cout << pm::RenderExample(example);
      return kExitOk;
    }
  }
  std::cerr << "error: requested example not found in " << o.input << '\n';
  return kExitFatal;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"Builds masked-sentence pretraining examples from document "
               "clusters."};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  MaskOptions mask;
  CLI::App* mask_cmd =
      app.add_subcommand("mask", "Select, mask and serialize clusters");
  RegisterMask(mask_cmd, mask);

  StatsOptions stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("--input,-i", stats.input, "Cluster JSONL");
  stats_cmd->add_option("--config", stats.config, "Flat key = value file");

  ScoreOptions score;
  CLI::App* score_cmd = app.add_subcommand(
      "score-sentence", "Per-sentence salience scores for one cluster");
  score_cmd->add_option("--input,-i", score.input, "Cluster JSONL");
  score_cmd->add_option("--config", score.config, "Flat key = value file");
  score_cmd->add_option("--cluster-id", score.cluster_id,
                        "Cluster to score (default: by --index)");
  score_cmd->add_option("--index", score.index, "0-based record position");
  score_cmd->add_option("--salience-variant", score.salience_variant,
                        "ROUGE used for sentence salience")
      ->check(CLI::IsMember({"r1_f1", "r2_f1", "mean_r1_r2_f1"}));
  score_cmd->add_option("--abbreviations", score.abbreviations,
                        "Abbreviation list replacing the built-in one")
      ->check(CLI::ExistingFile);
  score.normalization.Register(score_cmd);

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval-pyramid", "Pyramid recall/precision/F1 from SCU judgments");
  eval_cmd->add_option("--input,-i", eval.input, "SCU JSONL");
  eval_cmd->add_option("--config", eval.config, "Flat key = value file");
  eval_cmd->add_option("--len-unit", eval.len_unit, "Summary length unit")
      ->check(CLI::IsMember({"words", "chars"}));
  eval_cmd->add_option("--aggregate", eval.aggregate,
                       "Combining several annotators' coverage votes")
      ->check(CLI::IsMember({"mean", "majority"}));
  eval_cmd->add_flag("--strict", eval.strict, "Abort at the first bad record");

  InspectOptions inspect;
  CLI::App* inspect_cmd =
      app.add_subcommand("inspect", "Pretty-print one masked example");
  inspect_cmd->add_option("--input,-i", inspect.input, "Example JSONL");
  inspect_cmd->add_option("--config", inspect.config, "Flat key = value file");
  inspect_cmd->add_option("--cluster-id", inspect.cluster_id,
                          "Example to show (default: by --index)");
  inspect_cmd->add_option("--index", inspect.index, "0-based line position");

  std::vector<std::string> user_args;
  try {
    std::vector<std::string> args = ExpandArgs(argc, argv, &user_args);
    args.erase(args.begin());
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  }

  try {
    if (mask_cmd->parsed()) return RunMask(mask, user_args);
    if (stats_cmd->parsed()) return RunStats(stats);
    if (score_cmd->parsed()) return RunScore(score);
    if (eval_cmd->parsed()) return RunEvalPyramid(eval);
    if (inspect_cmd->parsed()) return RunInspect(inspect);
  } catch (const pm::StrictModeError& e) {
    std::cerr << "error: strict mode: " << e.what() << '\n';
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}
