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

#ifndef PYRAMID_MASKER_SEGMENT_H_
#define PYRAMID_MASKER_SEGMENT_H_

#include <functional>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pyramid_masker/cluster.h"

namespace pyramid_masker {

enum class Stemming { kNone, kPorter };

struct NormalizationConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  Stemming stemming = Stemming::kPorter;
};

struct Sentence {
  std::string cluster_id;
  int doc_index = 0;
  int sent_index = 0;
  std::string text;                 // original surface, trimmed
  std::vector<std::string> tokens;  // normalized, used for ROUGE

  SentenceId id() const { return {doc_index, sent_index}; }
};

// Words that end in a period without ending the sentence ("Dr.", "U.S.").
// Entries are lower case and stored without the final period.
class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(std::vector<std::string> entries);

  // The list shipped as resources/abbreviations.txt.
  static const AbbreviationList& Default();
  // One entry per line; '#' starts a comment line. Throws IoError.
  static AbbreviationList FromFile(const std::string& path);
  static AbbreviationList Parse(std::istream& in);

  // `word` is matched case-insensitively, without its trailing period.
  bool Contains(std::string_view word) const;
  size_t size() const { return entries_.size(); }

  bool operator==(const AbbreviationList&) const = default;

 private:
  std::set<std::string, std::less<>> entries_;
};

// Rule-based splitter. A boundary is a run of [.?!] followed by optional
// closing quotes or brackets and then whitespace or end of text. A single
// period after an abbreviation or a one-letter initial is not a boundary;
// decimals never are, since no whitespace follows their period. Sentences
// are trimmed, so rejoining them with spaces reproduces the document up to
// whitespace.
std::vector<std::string> SplitSentenceTexts(
    std::string_view document,
    const AbbreviationList& abbreviations = AbbreviationList::Default());

// Lower-casing and punctuation stripping are code-point aware; punctuation is
// replaced by a space before splitting on whitespace. Porter stemming only
// touches all-lower-case ASCII tokens and is iterated to a fixed point so
// that normalizing twice equals normalizing once.
std::vector<std::string> NormalizeTokens(std::string_view text,
                                         const NormalizationConfig& config = {});

std::vector<Sentence> SplitSentences(
    std::string_view document, int doc_index,
    const NormalizationConfig& config = {},
    const AbbreviationList& abbreviations = AbbreviationList::Default());

// All sentences of a cluster in (doc_index, sent_index) order.
std::vector<Sentence> SegmentCluster(
    const DocumentCluster& cluster, const NormalizationConfig& config = {},
    const AbbreviationList& abbreviations = AbbreviationList::Default());

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_SEGMENT_H_
