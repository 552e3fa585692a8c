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

#include "pyramid_masker/ingest.h"

#include <fstream>
#include <iostream>
#include <utility>

#include "pyramid_masker/text_util.h"

namespace pyramid_masker {

using nlohmann::json;

namespace {

const json& RequireField(const json& record, const char* name) {
  auto it = record.find(name);
  if (it == record.end()) {
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  }
  return *it;
}

}  // namespace

DocumentCluster ParseClusterRecord(std::string_view line) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!record.is_object()) {
    throw std::invalid_argument("record is not a JSON object");
  }

  DocumentCluster cluster;
  const json& id = RequireField(record, "cluster_id");
  if (!id.is_string()) {
    throw std::invalid_argument("'cluster_id' must be a string");
  }
  cluster.cluster_id = id.get<std::string>();

  const json& documents = RequireField(record, "documents");
  if (!documents.is_array()) {
    throw std::invalid_argument("'documents' must be an array");
  }
  cluster.documents.reserve(documents.size());
  for (const json& doc : documents) {
    if (!doc.is_string()) {
      throw std::invalid_argument("'documents' must contain only strings");
    }
    cluster.documents.push_back(doc.get<std::string>());
  }

  if (auto it = record.find("summary"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw std::invalid_argument("'summary' must be a string");
    }
    cluster.gold_summary = it->get<std::string>();
  }

  if (auto it = record.find("entities"); it != record.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw std::invalid_argument("'entities' must be an array");
    }
    std::vector<EntityAnnotation> annotations;
    for (const json& e : *it) {
      if (!e.is_object()) {
        throw std::invalid_argument("entity annotation is not an object");
      }
      const json& surface = RequireField(e, "surface");
      const json& doc = RequireField(e, "doc");
      if (!surface.is_string() || !doc.is_number_integer()) {
        throw std::invalid_argument(
            "entity annotation needs string 'surface' and integer 'doc'");
      }
      annotations.push_back({surface.get<std::string>(), doc.get<int>()});
    }
    cluster.entity_annotations = std::move(annotations);
  }

  ValidateCluster(cluster);
  return cluster;
}

json ClusterToJson(const DocumentCluster& cluster) {
  json out = {{"cluster_id", cluster.cluster_id},
              {"documents", cluster.documents}};
  if (cluster.gold_summary) out["summary"] = *cluster.gold_summary;
  if (cluster.entity_annotations) {
    json entities = json::array();
    for (const EntityAnnotation& a : *cluster.entity_annotations) {
      entities.push_back({{"surface", a.surface}, {"doc", a.doc}});
    }
    out["entities"] = std::move(entities);
  }
  return out;
}

ClusterReader::ClusterReader(std::istream& in, std::string source_name,
                             CorpusFormat format)
    : in_(in), source_name_(std::move(source_name)) {
  // JSONL is the only format today.
  (void)format;
}

std::optional<LoadedRecord> ClusterReader::Next() {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
    if (Trim(buffer_).empty()) continue;

    LoadedRecord record{line_, RecordError{}};
    try {
      DocumentCluster cluster = ParseClusterRecord(buffer_);
      if (!seen_ids_.insert(cluster.cluster_id).second) {
        record.value = RecordError{line_, cluster.cluster_id,
                                   "duplicate cluster_id '" +
                                       cluster.cluster_id + "'"};
      } else {
        record.value = std::move(cluster);
      }
    } catch (const std::invalid_argument& e) {
      std::string id;
      // Best effort: recover the id for diagnostics.
      try {
        json partial = json::parse(buffer_);
        if (partial.is_object() && partial.contains("cluster_id") &&
            partial["cluster_id"].is_string()) {
          id = partial["cluster_id"].get<std::string>();
        }
      } catch (const json::exception&) {
      }
      record.value = RecordError{line_, std::move(id), e.what()};
    }
    return record;
  }
  if (in_.bad()) {
    throw IoError("read failure on " + source_name_ + " after line " +
                  std::to_string(line_));
  }
  return std::nullopt;
}

std::unique_ptr<std::istream> OpenInput(const std::string& path) {
  if (path == "-") {
    return std::make_unique<std::istream>(std::cin.rdbuf());
  }
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!file->is_open()) {
    throw IoError("cannot open input file: " + path);
  }
  return file;
}

void CorpusStatsAccumulator::Add(const DocumentCluster& cluster) {
  ++clusters_;
  documents_ += cluster.documents.size();
  for (const std::string& doc : cluster.documents) {
    source_tokens_ += CountWhitespaceTokens(doc);
  }
  if (cluster.gold_summary) {
    ++summaries_;
    summary_tokens_ += CountWhitespaceTokens(*cluster.gold_summary);
  }
}

CorpusStats CorpusStatsAccumulator::Result() const {
  CorpusStats stats;
  stats.example_count = clusters_;
  if (clusters_ > 0) {
    const double n = static_cast<double>(clusters_);
    stats.mean_docs_per_cluster = static_cast<double>(documents_) / n;
    stats.mean_source_length = static_cast<double>(source_tokens_) / n;
  }
  if (summaries_ > 0) {
    stats.mean_summary_length =
        static_cast<double>(summary_tokens_) / static_cast<double>(summaries_);
  }
  return stats;
}

CorpusStats ComputeCorpusStats(std::span<const DocumentCluster> clusters) {
  CorpusStatsAccumulator acc;
  for (const DocumentCluster& c : clusters) acc.Add(c);
  return acc.Result();
}

json CorpusStatsToJson(const CorpusStats& stats) {
  json out = {{"example_count", stats.example_count}};
  if (stats.mean_docs_per_cluster) {
    out["length_unit"] = "whitespace_tokens";
    out["mean_docs_per_cluster"] = *stats.mean_docs_per_cluster;
  }
  if (stats.mean_source_length) {
    out["mean_source_length"] = *stats.mean_source_length;
  }
  if (stats.mean_summary_length) {
    out["mean_summary_length"] = *stats.mean_summary_length;
  }
  return out;
}

}  // namespace pyramid_masker
