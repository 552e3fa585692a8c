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

#include "pyramid_masker/mask.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "pyramid_masker/text_util.h"

namespace pyramid_masker {
namespace {

void AppendWords(std::vector<std::string>& out, std::string_view text) {
  for (std::string_view w : SplitWhitespace(text)) out.emplace_back(w);
}

// The separator layout shared by assembly and the round-trip check.
std::vector<std::string> LayoutInput(
    std::span<const Sentence> sentences, int num_docs, const MaskConfig& config,
    const std::set<SentenceId>& masked) {
  std::vector<std::string> out;
  size_t next = 0;
  for (int d = 0; d < num_docs; ++d) {
    if (config.lead_separator || d > 0) out.push_back(config.doc_sep_token);
    while (next < sentences.size() && sentences[next].doc_index == d) {
      const Sentence& s = sentences[next++];
      if (masked.contains(s.id())) {
        out.push_back(config.sent_mask_token);
      } else {
        AppendWords(out, s.text);
      }
    }
  }
  return out;
}

std::string Describe(SentenceId id) {
  return "(" + std::to_string(id.doc) + "," + std::to_string(id.sent) + ")";
}

}  // namespace

void MaskConfig::Validate() const {
  if (input_token_limit <= 0 || output_token_limit <= 0) {
    throw std::invalid_argument("token limits must be positive");
  }
  if (doc_sep_token.empty() || sent_mask_token.empty()) {
    throw std::invalid_argument("special tokens must be non-empty");
  }
  if (doc_sep_token == sent_mask_token) {
    throw std::invalid_argument("special tokens must be distinct");
  }
  if (CountWhitespaceTokens(doc_sep_token) != 1 ||
      CountWhitespaceTokens(sent_mask_token) != 1 ||
      doc_sep_token.size() != Trim(doc_sep_token).size() ||
      sent_mask_token.size() != Trim(sent_mask_token).size()) {
    throw std::invalid_argument("special tokens must be single words");
  }
  if (attention_window <= 0) {
    throw std::invalid_argument("attention_window must be positive");
  }
}

int SeparatorBudget(int num_docs, bool lead_separator) {
  return lead_separator ? num_docs : std::max(0, num_docs - 1);
}

std::vector<Sentence> TruncatePerDocument(std::span<const Sentence> sentences,
                                          int input_token_limit, int num_docs,
                                          bool lead_separator) {
  if (num_docs < 1) throw std::invalid_argument("num_docs must be >= 1");
  const long long available = static_cast<long long>(input_token_limit) -
                              SeparatorBudget(num_docs, lead_separator);
  // Floor division; a negative budget admits nothing.
  const long long per_doc = available < 0 ? -1 : available / num_docs;

  std::vector<Sentence> kept;
  std::vector<long long> used(num_docs, 0);
  std::vector<bool> closed(num_docs, false);
  for (const Sentence& s : sentences) {
    if (s.doc_index < 0 || s.doc_index >= num_docs) {
      throw std::invalid_argument("sentence references document " +
                                  std::to_string(s.doc_index));
    }
    if (closed[s.doc_index]) continue;
    const long long size = static_cast<long long>(CountWhitespaceTokens(s.text));
    if (used[s.doc_index] + size > per_doc) {
      closed[s.doc_index] = true;
      continue;
    }
    used[s.doc_index] += size;
    kept.push_back(s);
  }
  if (kept.empty()) throw ExampleError("cluster untruncatable");
  return kept;
}

MaskedExample BuildMaskedExample(const DocumentCluster& cluster,
                                 std::span<const Sentence> surviving,
                                 const SelectionResult& selection,
                                 const MaskConfig& config) {
  const int num_docs = static_cast<int>(cluster.documents.size());
  std::map<SentenceId, const Sentence*> by_id;
  for (const Sentence& s : surviving) {
    for (std::string_view w : SplitWhitespace(s.text)) {
      if (w == config.doc_sep_token || w == config.sent_mask_token) {
        throw ExampleError("document text contains reserved token '" +
                           std::string(w) + "'");
      }
    }
    by_id.emplace(s.id(), &s);
  }

  MaskedExample example;
  example.cluster_id = cluster.cluster_id;
  example.provenance.strategy = selection.strategy;
  example.provenance.fallback_used = selection.fallback_used;

  size_t target_size = 0;
  const auto admit = [&](const std::vector<SentenceId>& wanted,
                         std::vector<SentenceId>& admitted, int& dropped) {
    for (SentenceId id : wanted) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        ++dropped;
        continue;
      }
      const size_t size = CountWhitespaceTokens(it->second->text);
      if (target_size + size > static_cast<size_t>(config.output_token_limit)) {
        ++dropped;
        continue;
      }
      target_size += size;
      admitted.push_back(id);
      AppendWords(example.target_tokens, it->second->text);
    }
  };
  admit(selection.masked, example.provenance.masked, example.dropped_masked);
  if (example.provenance.masked.empty()) throw ExampleError("empty target");
  admit(selection.copied, example.provenance.copied, example.dropped_copied);

  for (const auto& [id, score] : selection.scores) {
    if (by_id.contains(id)) example.provenance.scores.emplace(id, score);
  }

  const std::set<SentenceId> masked(example.provenance.masked.begin(),
                                    example.provenance.masked.end());
  example.input_tokens = LayoutInput(surviving, num_docs, config, masked);
  for (size_t i = 0; i < example.input_tokens.size(); ++i) {
    if (example.input_tokens[i] == config.doc_sep_token) {
      example.global_attention_indices.push_back(static_cast<int>(i));
    }
  }
  if (example.input_tokens.size() >
      static_cast<size_t>(config.input_token_limit)) {
    // Unreachable when `surviving` came from TruncatePerDocument.
    throw ExampleError("input exceeds input_token_limit");
  }
  return example;
}

RoundtripResult RoundtripCheck(const MaskedExample& example,
                               std::span<const Sentence> original_sentences,
                               const MaskConfig& config) {
  const auto fail = [](std::string why) { return RoundtripResult{false, why}; };
  if (original_sentences.empty()) return fail("no original sentences");

  int num_docs = 0;
  std::map<SentenceId, const Sentence*> by_id;
  for (const Sentence& s : original_sentences) {
    num_docs = std::max(num_docs, s.doc_index + 1);
    by_id.emplace(s.id(), &s);
  }
  std::vector<Sentence> truncated;
  try {
    truncated = TruncatePerDocument(original_sentences, config.input_token_limit,
                                    num_docs, config.lead_separator);
  } catch (const ExampleError& e) {
    return fail(e.what());
  }
  const std::vector<std::string> expected =
      LayoutInput(truncated, num_docs, config, {});

  std::vector<std::string> rebuilt;
  size_t target_pos = 0;
  size_t slot = 0;
  const std::vector<std::string>& target = example.target_tokens;
  for (const std::string& token : example.input_tokens) {
    if (token != config.sent_mask_token) {
      rebuilt.push_back(token);
      continue;
    }
    if (slot >= example.provenance.masked.size()) {
      return fail("more mask slots than masked sentences");
    }
    const SentenceId id = example.provenance.masked[slot++];
    auto it = by_id.find(id);
    if (it == by_id.end()) return fail("masked sentence " + Describe(id) + " unknown");
    const size_t length = CountWhitespaceTokens(it->second->text);
    if (target_pos + length > target.size()) {
      return fail("target too short for masked sentence " + Describe(id));
    }
    rebuilt.insert(rebuilt.end(), target.begin() + target_pos,
                   target.begin() + target_pos + length);
    target_pos += length;
  }
  if (slot != example.provenance.masked.size()) {
    return fail("fewer mask slots than masked sentences");
  }

  std::vector<std::string> copied;
  for (SentenceId id : example.provenance.copied) {
    auto it = by_id.find(id);
    if (it == by_id.end()) return fail("copied sentence " + Describe(id) + " unknown");
    AppendWords(copied, it->second->text);
  }
  if (!std::equal(target.begin() + target_pos, target.end(), copied.begin(),
                  copied.end())) {
    return fail("target tail does not match the copied sentences");
  }

  const size_t common = std::min(rebuilt.size(), expected.size());
  for (size_t i = 0; i < common; ++i) {
    if (rebuilt[i] != expected[i]) {
      return fail("input diverges at position " + std::to_string(i) + ": '" +
                  rebuilt[i] + "' vs expected '" + expected[i] + "'");
    }
  }
  if (rebuilt.size() != expected.size()) {
    return fail("rebuilt input has " + std::to_string(rebuilt.size()) +
                " tokens, expected " + std::to_string(expected.size()));
  }
  for (int index : example.global_attention_indices) {
    if (index < 0 || static_cast<size_t>(index) >= example.input_tokens.size() ||
        example.input_tokens[index] != config.doc_sep_token) {
      return fail("global attention index " + std::to_string(index) +
                  " is not a separator");
    }
  }
  return {true, {}};
}

}  // namespace pyramid_masker
