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

#ifndef PYRAMID_MASKER_INGEST_H_
#define PYRAMID_MASKER_INGEST_H_

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>

#include "json.hpp"
#include "pyramid_masker/cluster.h"

namespace pyramid_masker {

enum class CorpusFormat { kJsonl };

struct RecordError {
  size_t line = 0;  // 1-based
  std::string cluster_id;  // empty when the record was unreadable
  std::string message;
};

struct LoadedRecord {
  size_t line = 0;
  std::variant<DocumentCluster, RecordError> value;

  bool ok() const { return std::holds_alternative<DocumentCluster>(value); }
  const DocumentCluster& cluster() const {
    return std::get<DocumentCluster>(value);
  }
  const RecordError& error() const { return std::get<RecordError>(value); }
};

// Parses one JSONL record. Throws std::invalid_argument with the cause.
DocumentCluster ParseClusterRecord(std::string_view line);
nlohmann::json ClusterToJson(const DocumentCluster& cluster);

// Streams clusters from a line-delimited source, one record per line. Blank
// lines are ignored. Malformed records come back as RecordError values
// carrying their line number; they never end the stream. Only the set of
// seen cluster ids grows with the corpus.
class ClusterReader {
 public:
  explicit ClusterReader(std::istream& in, std::string source_name = "<stream>",
                         CorpusFormat format = CorpusFormat::kJsonl);

  // Returns std::nullopt at end of input. Throws IoError if the stream fails.
  std::optional<LoadedRecord> Next();

  size_t lines_read() const { return line_; }

 private:
  std::istream& in_;
  std::string source_name_;
  size_t line_ = 0;
  std::string buffer_;
  std::unordered_set<std::string> seen_ids_;
};

// Opens `path` for reading; "-" means stdin. Throws IoError.
std::unique_ptr<std::istream> OpenInput(const std::string& path);

// Corpus statistics in whitespace tokens. Means are absent for an empty
// corpus; the summary mean is taken over clusters that have a gold summary.
struct CorpusStats {
  size_t example_count = 0;
  std::optional<double> mean_docs_per_cluster;
  std::optional<double> mean_source_length;
  std::optional<double> mean_summary_length;
};

class CorpusStatsAccumulator {
 public:
  void Add(const DocumentCluster& cluster);
  CorpusStats Result() const;

 private:
  size_t clusters_ = 0;
  size_t documents_ = 0;
  size_t source_tokens_ = 0;
  size_t summaries_ = 0;
  size_t summary_tokens_ = 0;
};

CorpusStats ComputeCorpusStats(std::span<const DocumentCluster> clusters);
nlohmann::json CorpusStatsToJson(const CorpusStats& stats);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_INGEST_H_
