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

#ifndef PYRAMID_MASKER_PYR_EVAL_H_
#define PYRAMID_MASKER_PYR_EVAL_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace pyramid_masker {

// One summary content unit as judged for one candidate summary.
struct ScuAnnotation {
  std::string scu_id;
  int weight = 1;  // number of references containing the SCU, >= 1
  bool covered = false;
};

struct PyramidScore {
  double raw = 0.0;  // sum of the weights of covered SCUs
  double recall = 0.0;     // raw / gold length
  double precision = 0.0;  // raw / system length
  double f1 = 0.0;
};

// Throws std::invalid_argument for a non-positive length or a weight < 1.
PyramidScore ComputePyramidScore(std::span<const ScuAnnotation> scus,
                                 long long gold_len, long long sys_len);

// Several annotators judging the same SCU list.
struct MultiScuAnnotation {
  std::string scu_id;
  int weight = 1;
  std::vector<bool> votes;  // one per annotator
};

enum class CoverageAggregation {
  kMean,      // weight counts in proportion to the covering annotators
  kMajority,  // covered iff more than half of the annotators say so
};

PyramidScore ComputePyramidScore(std::span<const MultiScuAnnotation> scus,
                                 long long gold_len, long long sys_len,
                                 CoverageAggregation aggregation);

enum class LengthUnit { kWords, kChars };

// Whitespace words, or Unicode code points excluding whitespace.
long long SummaryLength(std::string_view text, LengthUnit unit);

struct PyramidEvalOptions {
  LengthUnit length_unit = LengthUnit::kWords;
  CoverageAggregation aggregation = CoverageAggregation::kMean;
};

// Scores one `eval-pyramid` record:
//   {summary_id, gold_len, sys_len, scus: [{id, weight, covered}]}
// where `covered` is a boolean or an array of per-annotator booleans, and
// either length may be replaced by the text itself (`gold` / `sys`).
// Throws std::invalid_argument on schema violations.
struct EvaluatedSummary {
  std::string summary_id;
  long long gold_len = 0;
  long long sys_len = 0;
  PyramidScore score;
};
EvaluatedSummary EvaluatePyramidRecord(const nlohmann::json& record,
                                       const PyramidEvalOptions& options);

nlohmann::json PyramidScoreToJson(const PyramidScore& score);

// Arithmetic mean of each field; all zero for an empty list.
PyramidScore MeanPyramidScore(std::span<const PyramidScore> scores);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_PYR_EVAL_H_
