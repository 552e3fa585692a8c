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

#ifndef PYRAMID_MASKER_SELECT_H_
#define PYRAMID_MASKER_SELECT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pyramid_masker/entities.h"
#include "pyramid_masker/rouge.h"
#include "pyramid_masker/segment.h"

namespace pyramid_masker {

enum class Strategy { kEntityPyramid, kPrinciple, kLead, kRandom };

std::string_view StrategyName(Strategy strategy);
std::optional<Strategy> ParseStrategy(std::string_view name);
std::string_view SalienceVariantName(SalienceVariant variant);
std::optional<SalienceVariant> ParseSalienceVariant(std::string_view name);

struct SelectionConfig {
  Strategy strategy = Strategy::kEntityPyramid;
  double mask_ratio = 0.15;  // in (0, 1]
  double copy_ratio = 0.15;  // in [0, 1)
  SalienceVariant variant = SalienceVariant::kMeanR1R2F1;
  uint64_t seed = 0;  // random strategy only

  // Throws std::invalid_argument.
  void Validate() const;
};

struct SelectionResult {
  std::vector<SentenceId> masked;  // sorted
  std::vector<SentenceId> copied;  // sorted, disjoint from masked
  // Cluster ROUGE for entity_pyramid, Principle score for principle; empty
  // for lead and random.
  std::map<SentenceId, double> scores;
  Strategy strategy = Strategy::kEntityPyramid;
  // Entity pyramid only: some masked or copied sentence was chosen by the
  // Principle ranking because the pyramid ran out of candidates.
  bool fallback_used = false;
};

// round() with ties away from zero.
int64_t RoundHalfAway(double value);

// max(1, round(ratio * total)), capped at total - 1 so that a cluster with at
// least two sentences is never fully masked. Throws if total < 1.
int ComputeM(int total_sentences, double mask_ratio);

// round(copy_ratio * total), capped at the sentences left after masking.
int ComputeCopyCount(int total_sentences, int m, double copy_ratio);

// Greedy selection over the entity pyramid, most frequent entity first. For
// each entity the candidates are the not-yet-selected sentences whose
// normalized text contains it; the candidate with the highest Cluster ROUGE
// wins, ties going to the lower (doc_index, sent_index). An entity without a
// free candidate is skipped. Missing slots are filled from the Principle
// ranking. The copied set continues the same walk over the remaining
// entities, then the Principle ranking.
SelectionResult SelectEntityPyramid(std::span<const Sentence> sentences,
                                    const EntityPyramid& pyramid, int m,
                                    int copy_count, SalienceVariant variant);

// Top-m by Principle score (rest of the cluster as context), ties by index;
// the copied set takes the next ranks.
SelectionResult SelectPrinciple(std::span<const Sentence> sentences, int m,
                                int copy_count, SalienceVariant variant);

// The first m sentences of the concatenated cluster, then the next
// copy_count.
SelectionResult SelectLead(std::span<const Sentence> sentences, int m,
                           int copy_count);

// Uniform sample without replacement. The stream is SplitMix64 seeded with
// seed ^ FNV-1a-64(cluster_id); draws are taken by a partial Fisher-Yates
// shuffle using rejection sampling for bounded draws. The first m draws are
// masked, the next copy_count copied.
SelectionResult SelectRandom(std::span<const Sentence> sentences, int m,
                             int copy_count, uint64_t seed,
                             std::string_view cluster_id);

// Computes m and the copy count from `config` and dispatches. `sentences`
// must be the whole cluster in (doc_index, sent_index) order; throws
// ExampleError when it is empty.
SelectionResult SelectSentences(std::span<const Sentence> sentences,
                                const EntityPyramid& pyramid,
                                const SelectionConfig& config,
                                std::string_view cluster_id);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_SELECT_H_
