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

#ifndef PYRAMID_MASKER_MASK_H_
#define PYRAMID_MASKER_MASK_H_

#include <span>
#include <string>
#include <vector>

#include "pyramid_masker/cluster.h"
#include "pyramid_masker/segment.h"
#include "pyramid_masker/select.h"

namespace pyramid_masker {

// Limits are in whitespace tokens, not model subwords; a trainer that
// re-tokenizes must re-truncate.
struct MaskConfig {
  int input_token_limit = 4096;
  int output_token_limit = 1024;
  std::string doc_sep_token = "<doc-sep>";
  std::string sent_mask_token = "[sent-mask]";
  int attention_window = 512;  // carried as metadata only
  // One separator before every document. When false, separators only sit
  // between documents.
  bool lead_separator = true;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct MaskedExample {
  std::string cluster_id;
  std::vector<std::string> input_tokens;
  std::vector<int> global_attention_indices;  // every doc_sep_token position
  std::vector<std::string> target_tokens;
  // Selection restricted to the sentences that made it into the example.
  SelectionResult provenance;
  int dropped_masked = 0;
  int dropped_copied = 0;
};

// Separator tokens reserved out of the input budget.
int SeparatorBudget(int num_docs, bool lead_separator);

// Keeps, for every document, the longest prefix of whole sentences whose
// whitespace-token total fits in floor((limit - separators) / num_docs).
// Throws ExampleError("cluster untruncatable") if nothing survives.
std::vector<Sentence> TruncatePerDocument(std::span<const Sentence> sentences,
                                          int input_token_limit, int num_docs,
                                          bool lead_separator = true);

// Assembles the example from the truncated sentences. Masked sentences are
// replaced by a single sent_mask_token in the input and their text forms the
// target in (doc_index, sent_index) order, followed by the copied sentences,
// which stay visible in the input. A masked or copied sentence lost to
// truncation, or whose text would overflow output_token_limit, is dropped
// from the selection and counted; a dropped masked sentence stays unmasked
// in the input. Throws ExampleError when no masked sentence remains or when
// the text contains one of the special tokens.
MaskedExample BuildMaskedExample(const DocumentCluster& cluster,
                                 std::span<const Sentence> surviving,
                                 const SelectionResult& selection,
                                 const MaskConfig& config);

struct RoundtripResult {
  bool ok = false;
  std::string diagnostic;  // first divergence when !ok

  explicit operator bool() const { return ok; }
};

// Re-derives the truncated cluster from `original_sentences`, fills each
// mask slot with the next target segment and checks the result token for
// token. The target tail after the masked segments must be exactly the
// copied sentences.
RoundtripResult RoundtripCheck(const MaskedExample& example,
                               std::span<const Sentence> original_sentences,
                               const MaskConfig& config);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_MASK_H_
