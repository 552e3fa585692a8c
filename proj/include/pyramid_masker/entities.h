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

#ifndef PYRAMID_MASKER_ENTITIES_H_
#define PYRAMID_MASKER_ENTITIES_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pyramid_masker/cluster.h"
#include "pyramid_masker/segment.h"

namespace pyramid_masker {

struct EntityMention {
  std::string surface;     // as matched in the text
  std::string normalized;  // case-folded, whitespace-collapsed
  int doc_index = 0;
  int sent_index = 0;

  SentenceId location() const { return {doc_index, sent_index}; }
};

struct PyramidEntry {
  std::string entity;  // normalized form
  int doc_frequency = 0;
  std::vector<SentenceId> locations;  // sorted, unique
};

// Entities ranked by the number of distinct documents mentioning them.
// Entities seen in a single document are not part of the pyramid.
struct EntityPyramid {
  std::vector<PyramidEntry> entries;

  bool empty() const { return entries.empty(); }
  size_t size() const { return entries.size(); }
};

std::string NormalizeEntity(std::string_view surface);

// True iff `entity` occurs in `normalized_text` on token boundaries, so that
// "us" is found in "the us said" but not in "usage". Both arguments are
// expected in NormalizeEntity form.
bool ContainsEntity(std::string_view normalized_text, std::string_view entity);

class EntityExtractor {
 public:
  virtual ~EntityExtractor() = default;

  // Appends non-fatal diagnostics to `warnings` when it is not null.
  virtual std::vector<EntityMention> Extract(
      const DocumentCluster& cluster, std::span<const Sentence> sentences,
      std::vector<std::string>* warnings) const = 0;
};

// Deterministic stand-in for a statistical tagger. Mentions are
//  - maximal runs of capitalized words, with capitalized function words
//    ("The", "In", "He", ...) excluded from runs;
//  - a single capitalized word opening a sentence only counts when its
//    lower-case form never occurs in the cluster ("Colorado" yes, "Officials"
//    no);
//  - four-digit years 1000-2099;
//  - a number followed by a unit word ("416 acres", "3 million"), or a
//    percentage ("15%").
class RuleBasedExtractor : public EntityExtractor {
 public:
  std::vector<EntityMention> Extract(
      const DocumentCluster& cluster, std::span<const Sentence> sentences,
      std::vector<std::string>* warnings) const override;
};

// Uses the cluster's own entity annotations, located in their document by
// substring search (exact case first, then case-insensitive). Each sentence
// of the document that contains the surface yields one mention. Clusters
// without annotations fall back to the rule-based extractor.
class ProvidedAnnotationExtractor : public EntityExtractor {
 public:
  std::vector<EntityMention> Extract(
      const DocumentCluster& cluster, std::span<const Sentence> sentences,
      std::vector<std::string>* warnings) const override;

 private:
  RuleBasedExtractor fallback_;
};

enum class EntitySource { kRules, kProvided };
std::unique_ptr<EntityExtractor> MakeExtractor(EntitySource source);

std::vector<EntityMention> ExtractEntities(
    const DocumentCluster& cluster, std::span<const Sentence> sentences,
    const EntityExtractor& extractor,
    std::vector<std::string>* warnings = nullptr);

// Sorted by doc_frequency descending; ties go to the entity that appears
// first (doc_index, then sent_index), then to the lexicographically smaller
// normalized form. The result does not depend on mention order.
EntityPyramid BuildPyramid(std::span<const EntityMention> mentions,
                           int num_docs);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_ENTITIES_H_
