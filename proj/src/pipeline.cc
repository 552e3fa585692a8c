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

#include "pyramid_masker/pipeline.h"

#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "pyramid_masker/ingest.h"
#include "pyramid_masker/parallel.h"
#include "pyramid_masker/rouge.h"

namespace pyramid_masker {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out.append(t);
  }
  return out;
}

void AppendJsonString(std::string_view text, std::string* out) {
  static constexpr char kHex[] = "0123456789abcdef";
  out->push_back('"');
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '"': *out += "\\\""; break;
      case '\\': *out += "\\\\"; break;
      case '\b': *out += "\\b"; break;
      case '\f': *out += "\\f"; break;
      case '\n': *out += "\\n"; break;
      case '\r': *out += "\\r"; break;
      case '\t': *out += "\\t"; break;
      default:
        if (c < 0x20) {
          *out += "\\u00";
          out->push_back(kHex[c >> 4]);
          out->push_back(kHex[c & 0xF]);
        } else {
          out->push_back(ch);
        }
    }
  }
  out->push_back('"');
}

void AppendStringArray(const std::vector<std::string>& items,
                       std::string* out) {
  out->push_back('[');
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out->push_back(',');
    AppendJsonString(items[i], out);
  }
  out->push_back(']');
}

// Shortest round-trip form, always with a '.' or exponent.
void AppendJsonDouble(double value, std::string* out) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  const std::string_view text(buffer, end - buffer);
  out->append(text);
  if (text.find_first_of(".e") == std::string_view::npos) *out += ".0";
}

void AppendIds(const std::vector<SentenceId>& ids, std::string* out) {
  out->push_back('[');
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out->push_back(',');
    *out += "[" + std::to_string(ids[i].doc) + "," +
            std::to_string(ids[i].sent) + "]";
  }
  out->push_back(']');
}

std::vector<SentenceId> IdsFromJson(const json& value) {
  if (!value.is_array()) throw std::invalid_argument("expected [[doc, sent]]");
  std::vector<SentenceId> ids;
  for (const json& pair : value) {
    if (!pair.is_array() || pair.size() < 2) {
      throw std::invalid_argument("expected [doc, sent] pair");
    }
    ids.push_back({pair[0].get<int>(), pair[1].get<int>()});
  }
  return ids;
}

// What a worker hands back to the ordered writer.
struct Outcome {
  enum class Kind { kExample, kRecordError, kExampleError };
  Kind kind = Kind::kExample;
  size_t line = 0;
  std::string cluster_id;
  std::string payload;  // serialized example or error message
  std::vector<std::string> warnings;
};

}  // namespace

void PipelineConfig::Validate() const {
  selection.Validate();
  mask.Validate();
  if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
}

ClusterProcessor::ClusterProcessor(PipelineConfig config,
                                   AbbreviationList abbreviations)
    : config_(std::move(config)),
      abbreviations_(std::move(abbreviations)),
      extractor_(MakeExtractor(config_.entity_source)) {
  config_.Validate();
}

std::vector<Sentence> ClusterProcessor::Segment(
    const DocumentCluster& cluster) const {
  return SegmentCluster(cluster, config_.normalization, abbreviations_);
}

MaskedExample ClusterProcessor::Process(
    const DocumentCluster& cluster, std::vector<std::string>* warnings) const {
  try {
    ValidateCluster(cluster);
  } catch (const std::invalid_argument& e) {
    throw ExampleError(e.what());
  }
  const int num_docs = static_cast<int>(cluster.documents.size());
  const std::vector<Sentence> sentences = Segment(cluster);
  if (sentences.empty()) throw ExampleError("cluster has no sentences");

  EntityPyramid pyramid;
  if (config_.selection.strategy == Strategy::kEntityPyramid) {
    const std::vector<EntityMention> mentions =
        ExtractEntities(cluster, sentences, *extractor_, warnings);
    pyramid = BuildPyramid(mentions, num_docs);
  }
  const SelectionResult selection = SelectSentences(
      sentences, pyramid, config_.selection, cluster.cluster_id);
  const std::vector<Sentence> surviving =
      TruncatePerDocument(sentences, config_.mask.input_token_limit, num_docs,
                          config_.mask.lead_separator);
  return BuildMaskedExample(cluster, surviving, selection, config_.mask);
}

std::string SerializeExample(const MaskedExample& example,
                             const MaskConfig& config, bool emit_text) {
  // Written by hand: building a json tree per token dominated run time.
  std::string out;
  out.reserve(64 + example.input_tokens.size() * 8 +
              example.provenance.scores.size() * 32);
  out += "{\"cluster_id\":";
  AppendJsonString(example.cluster_id, &out);
  out += ",\"input\":";
  AppendStringArray(example.input_tokens, &out);
  out += ",\"global_attention\":[";
  for (size_t i = 0; i < example.global_attention_indices.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += std::to_string(example.global_attention_indices[i]);
  }
  out += "],\"target\":";
  AppendStringArray(example.target_tokens, &out);
  out += ",\"meta\":{\"strategy\":\"";
  out += StrategyName(example.provenance.strategy);
  out += "\",\"fallback_used\":";
  out += example.provenance.fallback_used ? "true" : "false";
  out += ",\"dropped_masked\":" + std::to_string(example.dropped_masked);
  out += ",\"dropped_copied\":" + std::to_string(example.dropped_copied);
  out += ",\"masked\":";
  AppendIds(example.provenance.masked, &out);
  out += ",\"copied\":";
  AppendIds(example.provenance.copied, &out);
  out += ",\"attention_window\":" + std::to_string(config.attention_window);
  if (!example.provenance.scores.empty()) {
    out += ",\"scores\":[";
    bool first = true;
    for (const auto& [id, score] : example.provenance.scores) {
      if (!first) out.push_back(',');
      first = false;
      out += "[" + std::to_string(id.doc) + "," + std::to_string(id.sent) + ",";
      AppendJsonDouble(score, &out);
      out.push_back(']');
    }
    out.push_back(']');
  }
  out.push_back('}');
  if (emit_text) {
    out += ",\"input_text\":";
    AppendJsonString(JoinTokens(example.input_tokens), &out);
    out += ",\"target_text\":";
    AppendJsonString(JoinTokens(example.target_tokens), &out);
  }
  out.push_back('}');
  return out;
}

MaskedExample ParseExample(std::string_view json_line) {
  try {
    const json record = json::parse(json_line);
    MaskedExample example;
    example.cluster_id = record.at("cluster_id").get<std::string>();
    example.input_tokens = record.at("input").get<std::vector<std::string>>();
    example.global_attention_indices =
        record.at("global_attention").get<std::vector<int>>();
    example.target_tokens = record.at("target").get<std::vector<std::string>>();
    const json& meta = record.at("meta");
    const auto strategy =
        ParseStrategy(meta.at("strategy").get<std::string>());
    if (!strategy) throw std::invalid_argument("unknown strategy");
    example.provenance.strategy = *strategy;
    example.provenance.fallback_used = meta.at("fallback_used").get<bool>();
    example.dropped_masked = meta.at("dropped_masked").get<int>();
    example.dropped_copied = meta.value("dropped_copied", 0);
    example.provenance.masked = IdsFromJson(meta.at("masked"));
    example.provenance.copied = IdsFromJson(meta.at("copied"));
    if (auto it = meta.find("scores"); it != meta.end()) {
      for (const json& triple : *it) {
        example.provenance.scores.emplace(
            SentenceId{triple.at(0).get<int>(), triple.at(1).get<int>()},
            triple.at(2).get<double>());
      }
    }
    return example;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed example: ") + e.what());
  }
}

std::string RenderExample(const MaskedExample& example) {
  std::ostringstream os;
  const auto ids = [](const std::vector<SentenceId>& list) {
    std::string s;
    for (SentenceId id : list) {
      s += " (" + std::to_string(id.doc) + "," + std::to_string(id.sent) + ")";
    }
    return s.empty() ? std::string(" none") : s;
  };
  os << "cluster_id: " << example.cluster_id << "\n"
     << "strategy:   " << StrategyName(example.provenance.strategy)
     << (example.provenance.fallback_used ? " (principle fallback used)" : "")
     << "\n"
     << "masked:    " << ids(example.provenance.masked) << "\n"
     << "copied:    " << ids(example.provenance.copied) << "\n"
     << "dropped:    masked=" << example.dropped_masked
     << " copied=" << example.dropped_copied << "\n"
     << "input (" << example.input_tokens.size() << " tokens, "
     << example.global_attention_indices.size() << " global):\n";
  std::vector<bool> is_global(example.input_tokens.size(), false);
  for (int i : example.global_attention_indices) {
    if (i >= 0 && static_cast<size_t>(i) < is_global.size()) is_global[i] = true;
  }
  bool line_open = false;
  for (size_t i = 0; i < example.input_tokens.size(); ++i) {
    if (is_global[i] || !line_open) {
      if (line_open) os << "\n";
      os << "  ";
      line_open = true;
    } else {
      os << " ";
    }
    os << example.input_tokens[i];
  }
  if (line_open) os << "\n";
  os << "target (" << example.target_tokens.size() << " tokens):\n  "
     << JoinTokens(example.target_tokens) << "\n";
  return os.str();
}

ordered_json ScoreClusterSentences(const DocumentCluster& cluster,
                                   const NormalizationConfig& normalization,
                                   const AbbreviationList& abbreviations,
                                   SalienceVariant variant) {
  const std::vector<Sentence> sentences =
      SegmentCluster(cluster, normalization, abbreviations);
  const ClusterScorer scorer(sentences);
  ordered_json rows = ordered_json::array();
  std::optional<size_t> top_principle;
  std::optional<size_t> top_cluster;
  std::vector<double> principle(sentences.size());
  std::vector<double> cluster_rouge(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    principle[i] = scorer.Principle(i, variant);
    cluster_rouge[i] = scorer.Cluster(i, variant);
    if (!top_principle || principle[i] > principle[*top_principle]) {
      top_principle = i;
    }
    if (!top_cluster || cluster_rouge[i] > cluster_rouge[*top_cluster]) {
      top_cluster = i;
    }
    ordered_json row;
    row["doc"] = sentences[i].doc_index;
    row["sent"] = sentences[i].sent_index;
    row["text"] = sentences[i].text;
    row["principle"] = principle[i];
    row["cluster_rouge"] = cluster_rouge[i];
    rows.push_back(std::move(row));
  }

  ordered_json out;
  out["cluster_id"] = cluster.cluster_id;
  out["salience_variant"] = SalienceVariantName(variant);
  out["sentences"] = std::move(rows);
  const auto id_of = [&](std::optional<size_t> i) {
    return i ? ordered_json::array({sentences[*i].doc_index,
                                    sentences[*i].sent_index})
             : ordered_json();
  };
  out["top_principle"] = id_of(top_principle);
  out["top_cluster_rouge"] = id_of(top_cluster);
  return out;
}

ordered_json RunSummary::ToJson() const {
  ordered_json out;
  out["event"] = "summary";
  out["processed"] = processed;
  out["skipped"] = skipped;
  out["errors"] = record_errors;
  out["warnings"] = warnings;
  out["seconds"] = seconds;
  out["clusters_per_second"] =
      seconds > 0 ? static_cast<double>(clusters_seen()) / seconds : 0.0;
  return out;
}

RunSummary RunMaskPipeline(std::istream& in, const std::string& source_name,
                           std::ostream& out, std::ostream& diagnostics,
                           const ClusterProcessor& processor) {
  const PipelineConfig& config = processor.config();
  const auto start = std::chrono::steady_clock::now();
  ClusterReader reader(in, source_name);
  RunSummary summary;
  std::string strict_failure;

  const auto produce = [&]() { return reader.Next(); };

  const auto transform = [&](LoadedRecord& record) {
    Outcome outcome;
    outcome.line = record.line;
    if (!record.ok()) {
      outcome.kind = Outcome::Kind::kRecordError;
      outcome.cluster_id = record.error().cluster_id;
      outcome.payload = record.error().message;
      return outcome;
    }
    const DocumentCluster& cluster = record.cluster();
    outcome.cluster_id = cluster.cluster_id;
    try {
      MaskedExample example = processor.Process(cluster, &outcome.warnings);
      outcome.payload =
          SerializeExample(example, config.mask, config.emit_text);
    } catch (const ExampleError& e) {
      outcome.kind = Outcome::Kind::kExampleError;
      outcome.payload = e.what();
    }
    return outcome;
  };

  const auto consume = [&](Outcome&& outcome) {
    for (const std::string& w : outcome.warnings) {
      ordered_json line;
      line["event"] = "warning";
      line["line"] = outcome.line;
      line["cluster_id"] = outcome.cluster_id;
      line["message"] = w;
      diagnostics << line.dump() << '\n';
      ++summary.warnings;
    }
    bool keep_going = true;
    if (outcome.kind == Outcome::Kind::kExample) {
      out << outcome.payload << '\n';
      if (!out) throw IoError("write failure on output");
      ++summary.processed;
    } else {
      const bool record_level = outcome.kind == Outcome::Kind::kRecordError;
      ordered_json line;
      line["event"] = record_level ? "record_error" : "example_error";
      line["line"] = outcome.line;
      line["cluster_id"] = outcome.cluster_id;
      line["error"] = outcome.payload;
      diagnostics << line.dump() << '\n';
      if (record_level) {
        ++summary.record_errors;
      } else {
        ++summary.skipped;
      }
      if (config.strict) {
        strict_failure = "line " + std::to_string(outcome.line) + ": " +
                         outcome.payload;
        keep_going = false;
      }
    }
    if (config.progress_every > 0 &&
        summary.clusters_seen() % config.progress_every == 0) {
      ordered_json line;
      line["event"] = "progress";
      line["clusters"] = summary.clusters_seen();
      diagnostics << line.dump() << '\n';
    }
    return keep_going;
  };

  RunOrdered<LoadedRecord>(config.worker_count,
                           static_cast<size_t>(config.worker_count) * 8,
                           produce, transform, consume);
  out.flush();
  summary.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  if (!strict_failure.empty()) throw StrictModeError(strict_failure);
  return summary;
}

}  // namespace pyramid_masker
