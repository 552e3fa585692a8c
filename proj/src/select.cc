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

#include "pyramid_masker/select.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pyramid_masker {
namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  uint64_t Below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = Next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  uint64_t state_;
};

uint64_t Fnv1a64(std::string_view text) {
  uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

void CheckCounts(size_t total, int m, int copy_count) {
  if (total == 0) throw ExampleError("cluster has no sentences");
  if (m < 1 || static_cast<size_t>(m) > total) {
    throw std::invalid_argument("m must be in [1, total sentences]");
  }
  if (copy_count < 0 || static_cast<size_t>(m + copy_count) > total) {
    throw std::invalid_argument("copy count exceeds the remaining sentences");
  }
}

std::vector<SentenceId> IdsOf(std::span<const Sentence> sentences,
                              std::vector<size_t> indices) {
  std::sort(indices.begin(), indices.end());
  std::vector<SentenceId> ids;
  ids.reserve(indices.size());
  for (size_t i : indices) ids.push_back(sentences[i].id());
  return ids;
}

// Indices ordered by descending score, ties by ascending index.
std::vector<size_t> RankByScore(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

std::map<SentenceId, double> ScoreMap(std::span<const Sentence> sentences,
                                      const std::vector<double>& scores) {
  std::map<SentenceId, double> out;
  for (size_t i = 0; i < sentences.size(); ++i) {
    out.emplace(sentences[i].id(), scores[i]);
  }
  return out;
}

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kEntityPyramid: return "entity_pyramid";
    case Strategy::kPrinciple: return "principle";
    case Strategy::kLead: return "lead";
    case Strategy::kRandom: return "random";
  }
  return "unknown";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kEntityPyramid, Strategy::kPrinciple,
                     Strategy::kLead, Strategy::kRandom}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view SalienceVariantName(SalienceVariant variant) {
  switch (variant) {
    case SalienceVariant::kR1F1: return "r1_f1";
    case SalienceVariant::kR2F1: return "r2_f1";
    case SalienceVariant::kMeanR1R2F1: return "mean_r1_r2_f1";
  }
  return "unknown";
}

std::optional<SalienceVariant> ParseSalienceVariant(std::string_view name) {
  for (SalienceVariant v : {SalienceVariant::kR1F1, SalienceVariant::kR2F1,
                            SalienceVariant::kMeanR1R2F1}) {
    if (SalienceVariantName(v) == name) return v;
  }
  return std::nullopt;
}

void SelectionConfig::Validate() const {
  if (!(mask_ratio > 0.0 && mask_ratio <= 1.0)) {
    throw std::invalid_argument("mask_ratio must be in (0, 1]");
  }
  if (!(copy_ratio >= 0.0 && copy_ratio < 1.0)) {
    throw std::invalid_argument("copy_ratio must be in [0, 1)");
  }
  if (mask_ratio + copy_ratio > 1.0) {
    throw std::invalid_argument("mask_ratio + copy_ratio must not exceed 1");
  }
}

int64_t RoundHalfAway(double value) {
  return static_cast<int64_t>(std::round(value));
}

int ComputeM(int total_sentences, double mask_ratio) {
  if (total_sentences < 1) {
    throw std::invalid_argument("ComputeM needs at least one sentence");
  }
  if (total_sentences == 1) return 1;
  int64_t m = std::max<int64_t>(1, RoundHalfAway(mask_ratio * total_sentences));
  return static_cast<int>(std::min<int64_t>(m, total_sentences - 1));
}

int ComputeCopyCount(int total_sentences, int m, double copy_ratio) {
  const int64_t wanted = RoundHalfAway(copy_ratio * total_sentences);
  const int64_t remaining = std::max(0, total_sentences - m);
  return static_cast<int>(std::clamp<int64_t>(wanted, 0, remaining));
}

SelectionResult SelectEntityPyramid(std::span<const Sentence> sentences,
                                    const EntityPyramid& pyramid, int m,
                                    int copy_count, SalienceVariant variant) {
  CheckCounts(sentences.size(), m, copy_count);
  const ClusterScorer scorer(sentences);
  const size_t n = sentences.size();

  std::vector<double> cluster_scores(n);
  for (size_t i = 0; i < n; ++i) cluster_scores[i] = scorer.Cluster(i, variant);
  std::vector<std::string> texts(n);
  for (size_t i = 0; i < n; ++i) texts[i] = NormalizeEntity(sentences[i].text);

  std::vector<bool> taken(n, false);
  size_t next_entry = 0;
  const auto next_from_pyramid = [&]() -> std::optional<size_t> {
    while (next_entry < pyramid.entries.size()) {
      const std::string& entity = pyramid.entries[next_entry++].entity;
      std::optional<size_t> best;
      for (size_t i = 0; i < n; ++i) {
        if (taken[i] || !ContainsEntity(texts[i], entity)) continue;
        if (!best || cluster_scores[i] > cluster_scores[*best]) best = i;
      }
      if (best) return best;
    }
    return std::nullopt;
  };

  std::vector<size_t> principle_order;
  size_t principle_pos = 0;
  SelectionResult result;
  const auto next_from_fallback = [&]() -> size_t {
    if (principle_order.empty()) {
      std::vector<double> principle(n);
      for (size_t i = 0; i < n; ++i) principle[i] = scorer.Principle(i, variant);
      principle_order = RankByScore(principle);
    }
    result.fallback_used = true;
    while (taken[principle_order[principle_pos]]) ++principle_pos;
    return principle_order[principle_pos];
  };

  const auto pick = [&](int count) {
    std::vector<size_t> picked;
    while (static_cast<int>(picked.size()) < count) {
      std::optional<size_t> i = next_from_pyramid();
      const size_t chosen = i ? *i : next_from_fallback();
      taken[chosen] = true;
      picked.push_back(chosen);
    }
    return picked;
  };

  std::vector<size_t> masked = pick(m);
  std::vector<size_t> copied = pick(copy_count);
  result.masked = IdsOf(sentences, std::move(masked));
  result.copied = IdsOf(sentences, std::move(copied));
  result.scores = ScoreMap(sentences, cluster_scores);
  result.strategy = Strategy::kEntityPyramid;
  return result;
}

SelectionResult SelectPrinciple(std::span<const Sentence> sentences, int m,
                                int copy_count, SalienceVariant variant) {
  CheckCounts(sentences.size(), m, copy_count);
  const ClusterScorer scorer(sentences);
  std::vector<double> scores(sentences.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    scores[i] = scorer.Principle(i, variant);
  }
  const std::vector<size_t> order = RankByScore(scores);

  SelectionResult result;
  result.strategy = Strategy::kPrinciple;
  result.masked = IdsOf(sentences, {order.begin(), order.begin() + m});
  result.copied = IdsOf(sentences, {order.begin() + m,
                                    order.begin() + m + copy_count});
  result.scores = ScoreMap(sentences, scores);
  return result;
}

SelectionResult SelectLead(std::span<const Sentence> sentences, int m,
                           int copy_count) {
  CheckCounts(sentences.size(), m, copy_count);
  std::vector<size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), size_t{0});

  SelectionResult result;
  result.strategy = Strategy::kLead;
  result.masked = IdsOf(sentences, {order.begin(), order.begin() + m});
  result.copied = IdsOf(sentences, {order.begin() + m,
                                    order.begin() + m + copy_count});
  return result;
}

SelectionResult SelectRandom(std::span<const Sentence> sentences, int m,
                             int copy_count, uint64_t seed,
                             std::string_view cluster_id) {
  CheckCounts(sentences.size(), m, copy_count);
  std::vector<size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), size_t{0});
  SplitMix64 rng(seed ^ Fnv1a64(cluster_id));
  const size_t draws = static_cast<size_t>(m + copy_count);
  for (size_t k = 0; k < draws; ++k) {
    const size_t j = k + rng.Below(order.size() - k);
    std::swap(order[k], order[j]);
  }

  SelectionResult result;
  result.strategy = Strategy::kRandom;
  result.masked = IdsOf(sentences, {order.begin(), order.begin() + m});
  result.copied = IdsOf(sentences, {order.begin() + m,
                                    order.begin() + m + copy_count});
  return result;
}

SelectionResult SelectSentences(std::span<const Sentence> sentences,
                                const EntityPyramid& pyramid,
                                const SelectionConfig& config,
                                std::string_view cluster_id) {
  if (sentences.empty()) throw ExampleError("cluster has no sentences");
  const int total = static_cast<int>(sentences.size());
  const int m = ComputeM(total, config.mask_ratio);
  const int copies = ComputeCopyCount(total, m, config.copy_ratio);
  switch (config.strategy) {
    case Strategy::kEntityPyramid:
      return SelectEntityPyramid(sentences, pyramid, m, copies, config.variant);
    case Strategy::kPrinciple:
      return SelectPrinciple(sentences, m, copies, config.variant);
    case Strategy::kLead:
      return SelectLead(sentences, m, copies);
    case Strategy::kRandom:
      return SelectRandom(sentences, m, copies, config.seed, cluster_id);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace pyramid_masker
