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

#include "pyramid_masker/cluster.h"

#include "pyramid_masker/text_util.h"

namespace pyramid_masker {

void ValidateCluster(const DocumentCluster& cluster) {
  if (cluster.cluster_id.empty()) {
    throw std::invalid_argument("empty cluster_id");
  }
  if (cluster.documents.empty()) {
    throw std::invalid_argument("empty cluster");
  }
  for (size_t i = 0; i < cluster.documents.size(); ++i) {
    if (Trim(cluster.documents[i]).empty()) {
      throw std::invalid_argument("empty document at index " +
                                  std::to_string(i));
    }
  }
  if (cluster.entity_annotations) {
    const int num_docs = static_cast<int>(cluster.documents.size());
    for (const EntityAnnotation& a : *cluster.entity_annotations) {
      if (a.doc < 0 || a.doc >= num_docs) {
        throw std::invalid_argument("entity annotation '" + a.surface +
                                    "' references document " +
                                    std::to_string(a.doc) + " of " +
                                    std::to_string(num_docs));
      }
      if (Trim(a.surface).empty()) {
        throw std::invalid_argument("entity annotation with empty surface");
      }
    }
  }
}

}  // namespace pyramid_masker
