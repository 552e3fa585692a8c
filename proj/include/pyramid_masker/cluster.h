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

#ifndef PYRAMID_MASKER_CLUSTER_H_
#define PYRAMID_MASKER_CLUSTER_H_

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pyramid_masker {

struct EntityAnnotation {
  std::string surface;
  int doc = 0;

  bool operator==(const EntityAnnotation&) const = default;
};

// A set of related documents; the unit of all processing.
struct DocumentCluster {
  std::string cluster_id;
  std::vector<std::string> documents;
  std::optional<std::string> gold_summary;
  std::optional<std::vector<EntityAnnotation>> entity_annotations;

  bool operator==(const DocumentCluster&) const = default;
};

// Position of a sentence inside its cluster. Ordering is document order,
// then sentence order, which is also the order of the concatenated input.
struct SentenceId {
  int doc = 0;
  int sent = 0;

  auto operator<=>(const SentenceId&) const = default;
};

// Unrecoverable input/output failure. The message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A problem confined to one cluster: the cluster is skipped, the run goes on.
class ExampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument naming the violated invariant. Uniqueness of
// cluster_id is a stream property and is checked by ClusterReader instead.
void ValidateCluster(const DocumentCluster& cluster);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_CLUSTER_H_
