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

#ifndef PYRAMID_MASKER_PIPELINE_H_
#define PYRAMID_MASKER_PIPELINE_H_

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pyramid_masker/cluster.h"
#include "pyramid_masker/entities.h"
#include "pyramid_masker/mask.h"
#include "pyramid_masker/segment.h"
#include "pyramid_masker/select.h"

namespace pyramid_masker {

struct PipelineConfig {
  NormalizationConfig normalization;
  SelectionConfig selection;
  MaskConfig mask;
  EntitySource entity_source = EntitySource::kRules;
  int worker_count = 1;
  bool strict = false;     // any bad record or cluster aborts the run
  bool emit_text = false;  // add space-joined input/target strings
  size_t progress_every = 1000;  // clusters between progress lines; 0 = off

  // Throws std::invalid_argument.
  void Validate() const;
};

// Everything that happens to one cluster: segmentation, entity extraction,
// pyramid, selection, truncation and assembly. Process() is const and safe
// to call from several threads at once.
class ClusterProcessor {
 public:
  explicit ClusterProcessor(
      PipelineConfig config,
      AbbreviationList abbreviations = AbbreviationList::Default());

  // Throws ExampleError for per-cluster failures. Non-fatal extractor
  // diagnostics are appended to `warnings` when given.
  MaskedExample Process(const DocumentCluster& cluster,
                        std::vector<std::string>* warnings = nullptr) const;

  std::vector<Sentence> Segment(const DocumentCluster& cluster) const;

  const PipelineConfig& config() const { return config_; }

 private:
  PipelineConfig config_;
  AbbreviationList abbreviations_;
  std::unique_ptr<EntityExtractor> extractor_;
};

// One JSON object, no trailing newline:
//   {cluster_id, input, global_attention, target,
//    meta: {strategy, fallback_used, dropped_masked, dropped_copied,
//           masked, copied, attention_window, scores?},
//    input_text?, target_text?}
// `scores` is a list of [doc, sent, score] triples.
std::string SerializeExample(const MaskedExample& example,
                             const MaskConfig& config, bool emit_text);

// Inverse of SerializeExample for the fields MaskedExample holds. Throws
// std::invalid_argument.
MaskedExample ParseExample(std::string_view json_line);

// Human-readable rendering for `inspect`.
std::string RenderExample(const MaskedExample& example);

// Per-sentence Principle and Cluster ROUGE for one cluster (the
// `score-sentence` surface).
nlohmann::ordered_json ScoreClusterSentences(
    const DocumentCluster& cluster, const NormalizationConfig& normalization,
    const AbbreviationList& abbreviations, SalienceVariant variant);

// Raised in strict mode at the first bad record or cluster.
class StrictModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSummary {
  size_t processed = 0;      // examples written
  size_t skipped = 0;        // clusters that failed assembly
  size_t record_errors = 0;  // malformed or duplicate records
  size_t warnings = 0;
  double seconds = 0.0;

  size_t clusters_seen() const { return processed + skipped + record_errors; }
  nlohmann::ordered_json ToJson() const;
};

// Streams `in` through the processor with config.worker_count threads and
// writes one line per example to `out` in input order. Record and cluster
// diagnostics go to `diagnostics` as JSON lines. Throws IoError if `out`
// fails and StrictModeError in strict mode.
RunSummary RunMaskPipeline(std::istream& in, const std::string& source_name,
                           std::ostream& out, std::ostream& diagnostics,
                           const ClusterProcessor& processor);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_PIPELINE_H_
