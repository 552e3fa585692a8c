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

#ifndef PYRAMID_MASKER_ROUGE_H_
#define PYRAMID_MASKER_ROUGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pyramid_masker/segment.h"

namespace pyramid_masker {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// F1 is 2PR/(P+R), or 0 when P+R is 0. Zero denominators yield 0.
RougeScore MakeRougeScore(double matches, double candidate_total,
                          double reference_total);

// Clipped n-gram overlap. n must be >= 1 (std::invalid_argument otherwise).
RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n);

inline constexpr size_t kDefaultLcsTokenCap = 2000;

// LCS-based ROUGE-L. Each side is truncated to `token_cap` tokens first to
// bound the quadratic table.
RougeScore RougeL(std::span<const std::string> candidate,
                  std::span<const std::string> reference,
                  size_t token_cap = kDefaultLcsTokenCap);

// Which ROUGE goes into the salience scores.
enum class SalienceVariant { kR1F1, kR2F1, kMeanR1R2F1 };

double SalienceRouge(std::span<const std::string> candidate,
                     std::span<const std::string> reference,
                     SalienceVariant variant);

// ROUGE of the sentence against the concatenated tokens of `context` (in the
// given order). The context must not contain the scored sentence itself,
// identified by (doc_index, sent_index); std::invalid_argument otherwise.
double PrincipleScore(const Sentence& sentence,
                      std::span<const Sentence> context,
                      SalienceVariant variant);

// Sum over every document other than the sentence's own of the ROUGE
// between the sentence and that document's concatenated tokens. Documents
// are summed in ascending doc_index order.
double ClusterRouge(const Sentence& sentence,
                    std::span<const Sentence> cluster_sentences,
                    SalienceVariant variant);

// Scores every sentence of one cluster without re-tokenizing the context for
// each sentence. Tokens are interned, n-gram counts are built once per
// document and for the whole cluster, and the context of a sentence is
// derived by removing its n-grams and adding the ones that bridge the gap.
// Results are bit-identical to PrincipleScore (with the rest of the cluster as
// context) and ClusterRouge.
class ClusterScorer {
 public:
  // `sentences` must be in (doc_index, sent_index) order and outlive the
  // scorer.
  explicit ClusterScorer(std::span<const Sentence> sentences);

  size_t size() const { return spans_.size(); }

  double Principle(size_t index, SalienceVariant variant) const;
  double Cluster(size_t index, SalienceVariant variant) const;

 private:
  struct Span {
    size_t begin = 0;
    size_t end = 0;
    int doc = 0;
  };

  static uint64_t BigramKey(uint32_t first, uint32_t second);
  // Dense n-gram ids of the windows lying inside sentence `index`.
  void SentenceWindows(size_t index, int n, std::vector<uint32_t>* out) const;
  RougeScore PrincipleRouge(size_t index, int n) const;
  RougeScore ClusterRougeFor(size_t index, size_t doc_slot, int n) const;

  std::vector<uint32_t> flat_;  // interned tokens of the whole cluster
  std::vector<Span> spans_;     // one per sentence
  std::vector<Span> docs_;      // documents that own at least one sentence
  std::vector<size_t> doc_slot_of_sentence_;
  std::unordered_map<uint64_t, uint32_t> bigram_ids_;
  // Per order: id of the window starting at each position, vocabulary size,
  // counts over the whole concatenation and within each document.
  std::vector<uint32_t> window_ids_[2];
  size_t vocab_size_[2] = {0, 0};
  std::vector<int> cluster_counts_[2];
  std::vector<std::vector<int>> doc_counts_[2];
};

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_ROUGE_H_
