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

#include "pyramid_masker/pyr_eval.h"

#include <stdexcept>

#include "pyramid_masker/text_util.h"

namespace pyramid_masker {

using nlohmann::json;

namespace {

PyramidScore FromRaw(double raw, long long gold_len, long long sys_len) {
  if (gold_len <= 0 || sys_len <= 0) {
    throw std::invalid_argument("summary lengths must be positive");
  }
  PyramidScore score;
  score.raw = raw;
  score.recall = raw / static_cast<double>(gold_len);
  score.precision = raw / static_cast<double>(sys_len);
  const double sum = score.recall + score.precision;
  score.f1 = sum > 0 ? 2.0 * score.recall * score.precision / sum : 0.0;
  return score;
}

void CheckWeight(int weight, const std::string& id) {
  if (weight < 1) {
    throw std::invalid_argument("SCU '" + id + "' has weight < 1");
  }
}

long long ReadLength(const json& record, const char* length_key,
                     const char* text_key, LengthUnit unit) {
  if (auto it = record.find(length_key); it != record.end()) {
    if (!it->is_number_integer()) {
      throw std::invalid_argument(std::string("'") + length_key +
                                  "' must be an integer");
    }
    return it->get<long long>();
  }
  if (auto it = record.find(text_key); it != record.end() && it->is_string()) {
    return SummaryLength(it->get<std::string>(), unit);
  }
  throw std::invalid_argument(std::string("missing '") + length_key +
                              "' (or '" + text_key + "')");
}

}  // namespace

PyramidScore ComputePyramidScore(std::span<const ScuAnnotation> scus,
                                 long long gold_len, long long sys_len) {
  double raw = 0.0;
  for (const ScuAnnotation& scu : scus) {
    CheckWeight(scu.weight, scu.scu_id);
    if (scu.covered) raw += scu.weight;
  }
  return FromRaw(raw, gold_len, sys_len);
}

PyramidScore ComputePyramidScore(std::span<const MultiScuAnnotation> scus,
                                 long long gold_len, long long sys_len,
                                 CoverageAggregation aggregation) {
  double raw = 0.0;
  for (const MultiScuAnnotation& scu : scus) {
    CheckWeight(scu.weight, scu.scu_id);
    if (scu.votes.empty()) continue;
    size_t yes = 0;
    for (bool v : scu.votes) yes += v ? 1 : 0;
    if (aggregation == CoverageAggregation::kMajority) {
      if (2 * yes > scu.votes.size()) raw += scu.weight;
    } else {
      raw += scu.weight * static_cast<double>(yes) /
             static_cast<double>(scu.votes.size());
    }
  }
  return FromRaw(raw, gold_len, sys_len);
}

long long SummaryLength(std::string_view text, LengthUnit unit) {
  if (unit == LengthUnit::kWords) {
    return static_cast<long long>(CountWhitespaceTokens(text));
  }
  long long count = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    if (IsAsciiSpace(text[pos])) {
      ++pos;
      continue;
    }
    DecodeUtf8(text, pos);
    ++count;
  }
  return count;
}

EvaluatedSummary EvaluatePyramidRecord(const json& record,
                                       const PyramidEvalOptions& options) {
  if (!record.is_object()) {
    throw std::invalid_argument("record is not a JSON object");
  }
  EvaluatedSummary out;
  if (auto it = record.find("summary_id"); it != record.end()) {
    out.summary_id = it->is_string() ? it->get<std::string>() : it->dump();
  }
  out.gold_len = ReadLength(record, "gold_len", "gold", options.length_unit);
  out.sys_len = ReadLength(record, "sys_len", "sys", options.length_unit);

  auto scus_it = record.find("scus");
  if (scus_it == record.end() || !scus_it->is_array()) {
    throw std::invalid_argument("'scus' must be an array");
  }
  std::vector<MultiScuAnnotation> scus;
  for (const json& s : *scus_it) {
    if (!s.is_object()) throw std::invalid_argument("SCU is not an object");
    MultiScuAnnotation scu;
    if (auto it = s.find("id"); it != s.end()) {
      scu.scu_id = it->is_string() ? it->get<std::string>() : it->dump();
    }
    auto weight = s.find("weight");
    if (weight == s.end() || !weight->is_number_integer()) {
      throw std::invalid_argument("SCU '" + scu.scu_id +
                                  "' needs an integer weight");
    }
    scu.weight = weight->get<int>();
    auto covered = s.find("covered");
    if (covered == s.end()) {
      throw std::invalid_argument("SCU '" + scu.scu_id + "' lacks 'covered'");
    }
    if (covered->is_boolean()) {
      scu.votes.push_back(covered->get<bool>());
    } else if (covered->is_array()) {
      for (const json& v : *covered) {
        if (!v.is_boolean()) {
          throw std::invalid_argument("'covered' votes must be booleans");
        }
        scu.votes.push_back(v.get<bool>());
      }
    } else {
      throw std::invalid_argument("'covered' must be a boolean or an array");
    }
    scus.push_back(std::move(scu));
  }
  out.score = ComputePyramidScore(scus, out.gold_len, out.sys_len,
                                  options.aggregation);
  return out;
}

json PyramidScoreToJson(const PyramidScore& score) {
  return {{"raw", score.raw},
          {"recall", score.recall},
          {"precision", score.precision},
          {"f1", score.f1}};
}

PyramidScore MeanPyramidScore(std::span<const PyramidScore> scores) {
  PyramidScore mean;
  if (scores.empty()) return mean;
  for (const PyramidScore& s : scores) {
    mean.raw += s.raw;
    mean.recall += s.recall;
    mean.precision += s.precision;
    mean.f1 += s.f1;
  }
  const double n = static_cast<double>(scores.size());
  mean.raw /= n;
  mean.recall /= n;
  mean.precision /= n;
  mean.f1 /= n;
  return mean;
}

}  // namespace pyramid_masker
