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

#include "pyramid_masker/porter_stemmer.h"

#include <gtest/gtest.h>

#include <utility>

namespace pyramid_masker {
namespace {

// Word/stem pairs from the published Porter vocabulary and its output.
const std::pair<const char*, const char*> kVectors[] = {
    {"caresses", "caress"},   {"ponies", "poni"},
    {"ties", "ti"},           {"caress", "caress"},
    {"cats", "cat"},          {"feed", "feed"},
    {"agreed", "agre"},       {"plastered", "plaster"},
    {"bled", "bled"},         {"motoring", "motor"},
    {"sing", "sing"},         {"conflated", "conflat"},
    {"troubled", "troubl"},   {"sized", "size"},
    {"hopping", "hop"},       {"tanned", "tan"},
    {"falling", "fall"},      {"hissing", "hiss"},
    {"fizzed", "fizz"},       {"failing", "fail"},
    {"filing", "file"},       {"happy", "happi"},
    {"sky", "sky"},           {"relational", "relat"},
    {"conditional", "condit"}, {"rational", "ration"},
    {"valenci", "valenc"},    {"hesitanci", "hesit"},
    {"digitizer", "digit"},   {"conformabli", "conform"},
    {"radicalli", "radic"},   {"differentli", "differ"},
    {"vileli", "vile"},       {"analogousli", "analog"},
    {"vietnamization", "vietnam"}, {"predication", "predic"},
    {"operator", "oper"},     {"feudalism", "feudal"},
    {"decisiveness", "decis"}, {"hopefulness", "hope"},
    {"callousness", "callous"}, {"formaliti", "formal"},
    {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"},
    {"triplicate", "triplic"}, {"formative", "form"},
    {"formalize", "formal"},  {"electriciti", "electr"},
    {"electrical", "electr"}, {"hopeful", "hope"},
    {"goodness", "good"},     {"revival", "reviv"},
    {"allowance", "allow"},   {"inference", "infer"},
    {"airliner", "airlin"},   {"gyroscopic", "gyroscop"},
    {"adjustable", "adjust"}, {"defensible", "defens"},
    {"irritant", "irrit"},    {"replacement", "replac"},
    {"adjustment", "adjust"}, {"dependent", "depend"},
    {"adoption", "adopt"},    {"homologou", "homolog"},
    {"communism", "commun"},  {"activate", "activ"},
    {"angulariti", "angular"}, {"homologous", "homolog"},
    {"effective", "effect"},  {"bowdlerize", "bowdler"},
    {"probate", "probat"},    {"rate", "rate"},
    {"cease", "ceas"},        {"controll", "control"},
    {"roll", "roll"},         {"generalizations", "gener"},
    {"oscillators", "oscil"}, {"running", "run"},
    {"dogs", "dog"},
};

TEST(PorterStemmerTest, ReferenceVectors) {
  for (const auto& [word, stem] : kVectors) {
    EXPECT_EQ(PorterStem(word), stem) << word;
  }
}

TEST(PorterStemmerTest, ReferenceImplementationDepartures) {
  // "bli" -> "ble" and "logi" -> "log" in step 2.
  EXPECT_EQ(PorterStem("possibli"), "possibl");
  EXPECT_EQ(PorterStem("archaeologi"), "archaeolog");
}

TEST(PorterStemmerTest, ShortAndNonLowerAsciiUnchanged) {
  EXPECT_EQ(PorterStem("as"), "as");
  EXPECT_EQ(PorterStem(""), "");
  EXPECT_EQ(PorterStem("Running"), "Running");
  EXPECT_EQ(PorterStem("caf\xC3\xA9s"), "caf\xC3\xA9s");
  EXPECT_EQ(PorterStem("covid19"), "covid19");
}

TEST(PorterStemmerTest, NotIdempotentByItself) {
  // The reason normalization iterates the stemmer to a fixed point.
  EXPECT_EQ(PorterStem("agreed"), "agre");
  EXPECT_EQ(PorterStem("agre"), "agr");
}

}  // namespace
}  // namespace pyramid_masker
