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

// Deliberately naive re-implementations used as test oracles. None of this
// calls into the library's scoring or selection code.

#ifndef PYRAMID_MASKER_TESTS_ORACLES_H_
#define PYRAMID_MASKER_TESTS_ORACLES_H_

#include <string>
#include <vector>

#include "pyramid_masker/cluster.h"
#include "pyramid_masker/entities.h"
#include "pyramid_masker/segment.h"

namespace pyramid_masker::testing {

struct OracleScore {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
};

OracleScore OracleRougeN(const std::vector<std::string>& candidate,
                         const std::vector<std::string>& reference, int n);
OracleScore OracleRougeL(const std::vector<std::string>& candidate,
                         const std::vector<std::string>& reference);

enum class OracleVariant { kR1, kR2, kMean };

double OracleSalience(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference,
                      OracleVariant variant);

// Against every other sentence of the cluster, concatenated in order.
double OraclePrinciple(const std::vector<Sentence>& sentences, size_t index,
                       OracleVariant variant);
// Sum over the other documents, ascending, of ROUGE against the document.
double OracleClusterRouge(const std::vector<Sentence>& sentences, size_t index,
                          OracleVariant variant);

struct OracleSelection {
  std::vector<SentenceId> masked;
  std::vector<SentenceId> copied;
  bool fallback_used = false;
};

// Greedy pyramid selection recomputed from raw mentions: document
// frequencies by set size, exhaustive candidate scans, Principle ranking
// once the entities are exhausted.
OracleSelection OracleEntityPyramidSelect(
    const std::vector<Sentence>& sentences,
    const std::vector<EntityMention>& mentions, int num_docs, int m,
    int copy_count, OracleVariant variant);

}  // namespace pyramid_masker::testing

#endif  // PYRAMID_MASKER_TESTS_ORACLES_H_
