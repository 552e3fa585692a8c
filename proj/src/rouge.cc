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

#include "pyramid_masker/rouge.h"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace pyramid_masker {
namespace {

std::unordered_map<std::string, int> CountNgrams(
    std::span<const std::string> tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (tokens.size() < static_cast<size_t>(n)) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key.append(tokens[i + k]);
    }
    ++counts[std::move(key)];
  }
  return counts;
}

size_t NgramTotal(size_t length, int n) {
  return length >= static_cast<size_t>(n) ? length - n + 1 : 0;
}

std::vector<std::string> ConcatTokens(std::span<const Sentence> sentences) {
  std::vector<std::string> out;
  for (const Sentence& s : sentences) {
    out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  }
  return out;
}

// Sums min(own count, reference count) over the distinct ids of a short
// run; `ref_count(id, own_count)` supplies the reference side. `ids` is
// scratch and gets sorted.
template <typename RefCount>
int ClippedMatches(std::vector<uint32_t>& ids, RefCount&& ref_count) {
  std::sort(ids.begin(), ids.end());
  int matches = 0;
  for (size_t i = 0; i < ids.size();) {
    size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    const int own = static_cast<int>(j - i);
    matches += std::min(own, ref_count(ids[i], own));
    i = j;
  }
  return matches;
}

double CombineVariant(SalienceVariant variant, const RougeScore& r1,
                      const RougeScore& r2) {
  switch (variant) {
    case SalienceVariant::kR1F1:
      return r1.f1;
    case SalienceVariant::kR2F1:
      return r2.f1;
    case SalienceVariant::kMeanR1R2F1:
      return (r1.f1 + r2.f1) / 2.0;
  }
  return 0.0;
}

}  // namespace

RougeScore MakeRougeScore(double matches, double candidate_total,
                          double reference_total) {
  RougeScore score;
  score.precision = candidate_total > 0 ? matches / candidate_total : 0.0;
  score.recall = reference_total > 0 ? matches / reference_total : 0.0;
  const double sum = score.precision + score.recall;
  score.f1 = sum > 0 ? 2.0 * score.precision * score.recall / sum : 0.0;
  return score;
}

RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n) {
  if (n < 1) throw std::invalid_argument("ROUGE-N needs n >= 1");
  const auto cand = CountNgrams(candidate, n);
  const auto ref = CountNgrams(reference, n);
  int matches = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) matches += std::min(count, it->second);
  }
  return MakeRougeScore(matches,
                        static_cast<double>(NgramTotal(candidate.size(), n)),
                        static_cast<double>(NgramTotal(reference.size(), n)));
}

RougeScore RougeL(std::span<const std::string> candidate,
                  std::span<const std::string> reference, size_t token_cap) {
  candidate = candidate.first(std::min(candidate.size(), token_cap));
  reference = reference.first(std::min(reference.size(), token_cap));
  if (candidate.empty() || reference.empty()) return {};
  std::vector<int> prev(candidate.size() + 1, 0);
  std::vector<int> cur(candidate.size() + 1, 0);
  for (size_t i = 1; i <= reference.size(); ++i) {
    for (size_t j = 1; j <= candidate.size(); ++j) {
      cur[j] = reference[i - 1] == candidate[j - 1]
                   ? prev[j - 1] + 1
                   : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return MakeRougeScore(prev[candidate.size()],
                        static_cast<double>(candidate.size()),
                        static_cast<double>(reference.size()));
}

double SalienceRouge(std::span<const std::string> candidate,
                     std::span<const std::string> reference,
                     SalienceVariant variant) {
  RougeScore r1;
  RougeScore r2;
  if (variant != SalienceVariant::kR2F1) r1 = RougeN(candidate, reference, 1);
  if (variant != SalienceVariant::kR1F1) r2 = RougeN(candidate, reference, 2);
  return CombineVariant(variant, r1, r2);
}

double PrincipleScore(const Sentence& sentence,
                      std::span<const Sentence> context,
                      SalienceVariant variant) {
  for (const Sentence& c : context) {
    if (c.id() == sentence.id()) {
      throw std::invalid_argument("context contains the scored sentence");
    }
  }
  if (context.empty()) return 0.0;
  return SalienceRouge(sentence.tokens, ConcatTokens(context), variant);
}

double ClusterRouge(const Sentence& sentence,
                    std::span<const Sentence> cluster_sentences,
                    SalienceVariant variant) {
  std::vector<int> docs;
  for (const Sentence& s : cluster_sentences) docs.push_back(s.doc_index);
  std::sort(docs.begin(), docs.end());
  docs.erase(std::unique(docs.begin(), docs.end()), docs.end());

  double total = 0.0;
  for (int doc : docs) {
    if (doc == sentence.doc_index) continue;
    std::vector<std::string> doc_tokens;
    for (const Sentence& s : cluster_sentences) {
      if (s.doc_index == doc) {
        doc_tokens.insert(doc_tokens.end(), s.tokens.begin(), s.tokens.end());
      }
    }
    total += SalienceRouge(sentence.tokens, doc_tokens, variant);
  }
  return total;
}

ClusterScorer::ClusterScorer(std::span<const Sentence> sentences) {
  std::unordered_map<std::string_view, uint32_t> ids;
  spans_.reserve(sentences.size());
  for (const Sentence& s : sentences) {
    if (!docs_.empty() && s.doc_index < docs_.back().doc) {
      throw std::invalid_argument("sentences are not in document order");
    }
    Span span{flat_.size(), 0, s.doc_index};
    for (const std::string& token : s.tokens) {
      auto [it, inserted] =
          ids.try_emplace(token, static_cast<uint32_t>(ids.size()));
      flat_.push_back(it->second);
    }
    span.end = flat_.size();
    if (docs_.empty() || docs_.back().doc != s.doc_index) {
      docs_.push_back({span.begin, span.end, s.doc_index});
    } else {
      docs_.back().end = span.end;
    }
    doc_slot_of_sentence_.push_back(docs_.size() - 1);
    spans_.push_back(span);
  }

  // Every n-gram window of the concatenated cluster gets a dense id, so all
  // count tables are plain arrays.
  window_ids_[0] = flat_;
  vocab_size_[0] = ids.size();
  for (size_t i = 0; i + 1 < flat_.size(); ++i) {
    auto [it, inserted] = bigram_ids_.try_emplace(
        BigramKey(flat_[i], flat_[i + 1]),
        static_cast<uint32_t>(bigram_ids_.size()));
    window_ids_[1].push_back(it->second);
  }
  vocab_size_[1] = bigram_ids_.size();

  for (int n = 1; n <= 2; ++n) {
    const std::vector<uint32_t>& windows = window_ids_[n - 1];
    std::vector<int>& all = cluster_counts_[n - 1];
    all.assign(vocab_size_[n - 1], 0);
    for (uint32_t id : windows) ++all[id];
    std::vector<std::vector<int>>& per_doc = doc_counts_[n - 1];
    per_doc.resize(docs_.size());
    for (size_t d = 0; d < docs_.size(); ++d) {
      per_doc[d].assign(vocab_size_[n - 1], 0);
      for (size_t i = docs_[d].begin; i + n <= docs_[d].end; ++i) {
        ++per_doc[d][windows[i]];
      }
    }
  }
}

uint64_t ClusterScorer::BigramKey(uint32_t first, uint32_t second) {
  return (static_cast<uint64_t>(first) << 32) | second;
}

void ClusterScorer::SentenceWindows(size_t index, int n,
                                    std::vector<uint32_t>* out) const {
  const Span& span = spans_[index];
  out->clear();
  if (span.end - span.begin < static_cast<size_t>(n)) return;
  const std::vector<uint32_t>& windows = window_ids_[n - 1];
  out->assign(windows.begin() + span.begin,
              windows.begin() + (span.end - n + 1));
}

RougeScore ClusterScorer::PrincipleRouge(size_t index, int n) const {
  const Span& span = spans_[index];
  const size_t length = flat_.size();
  const size_t a = span.begin;
  const size_t b = span.end;
  const std::vector<int>& all = cluster_counts_[n - 1];

  // The context is the cluster with [a, b) cut out. Its n-gram counts are
  // the cluster's, minus every window overlapping the cut, plus the windows
  // bridging the splice. Only n <= 2 is supported, so for bigrams that is
  // the windows starting at a-1 and b-1 out and the pair (a-1, b) in.
  std::optional<uint32_t> lost_left;
  std::optional<uint32_t> lost_right;
  std::optional<uint32_t> bridge;
  if (n == 2) {
    if (a > 0 && a < length) lost_left = window_ids_[1][a - 1];
    if (b > a && b < length) lost_right = window_ids_[1][b - 1];
    if (a > 0 && b < length) {
      auto it = bigram_ids_.find(BigramKey(flat_[a - 1], flat_[b]));
      if (it != bigram_ids_.end()) bridge = it->second;
    }
  }

  thread_local std::vector<uint32_t> scratch;
  SentenceWindows(index, n, &scratch);
  const size_t own_windows = scratch.size();
  const int matches = ClippedMatches(scratch, [&](uint32_t id, int own) {
    int count = all[id] - own;
    if (lost_left == id) --count;
    if (lost_right == id) --count;
    if (bridge == id) ++count;
    return count;
  });
  const size_t context_length = length - (b - a);
  return MakeRougeScore(matches, static_cast<double>(own_windows),
                        static_cast<double>(NgramTotal(context_length, n)));
}

RougeScore ClusterScorer::ClusterRougeFor(size_t index, size_t doc_slot,
                                          int n) const {
  const std::vector<int>& ref = doc_counts_[n - 1][doc_slot];
  thread_local std::vector<uint32_t> scratch;
  SentenceWindows(index, n, &scratch);
  const size_t own_windows = scratch.size();
  const int matches =
      ClippedMatches(scratch, [&](uint32_t id, int) { return ref[id]; });
  const Span& doc = docs_[doc_slot];
  return MakeRougeScore(matches, static_cast<double>(own_windows),
                        static_cast<double>(NgramTotal(doc.end - doc.begin, n)));
}

double ClusterScorer::Principle(size_t index, SalienceVariant variant) const {
  if (spans_.size() <= 1) return 0.0;
  RougeScore r1;
  RougeScore r2;
  if (variant != SalienceVariant::kR2F1) r1 = PrincipleRouge(index, 1);
  if (variant != SalienceVariant::kR1F1) r2 = PrincipleRouge(index, 2);
  return CombineVariant(variant, r1, r2);
}

double ClusterScorer::Cluster(size_t index, SalienceVariant variant) const {
  double total = 0.0;
  const size_t home = doc_slot_of_sentence_[index];
  for (size_t d = 0; d < docs_.size(); ++d) {
    if (d == home) continue;
    RougeScore r1;
    RougeScore r2;
    if (variant != SalienceVariant::kR2F1) r1 = ClusterRougeFor(index, d, 1);
    if (variant != SalienceVariant::kR1F1) r2 = ClusterRougeFor(index, d, 2);
    total += CombineVariant(variant, r1, r2);
  }
  return total;
}

}  // namespace pyramid_masker
