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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.h"
#include "synthetic.h"

namespace pyramid_masker {
namespace {

using Tokens = std::vector<std::string>;

Sentence Make(int doc, int sent, Tokens tokens) {
  Sentence s;
  s.cluster_id = "c";
  s.doc_index = doc;
  s.sent_index = sent;
  s.tokens = std::move(tokens);
  for (const std::string& t : s.tokens) s.text += t + " ";
  return s;
}

testing::OracleVariant ToOracle(SalienceVariant v) {
  switch (v) {
    case SalienceVariant::kR1F1:
      return testing::OracleVariant::kR1;
    case SalienceVariant::kR2F1:
      return testing::OracleVariant::kR2;
    case SalienceVariant::kMeanR1R2F1:
      return testing::OracleVariant::kMean;
  }
  return testing::OracleVariant::kMean;
}

constexpr SalienceVariant kVariants[] = {SalienceVariant::kR1F1,
                                         SalienceVariant::kR2F1,
                                         SalienceVariant::kMeanR1R2F1};

TEST(RougeNTest, IdenticalIsOne) {
  const Tokens x = {"a", "b", "c"};
  for (int n = 1; n <= 3; ++n) {
    const RougeScore s = RougeN(x, x, n);
    EXPECT_DOUBLE_EQ(s.precision, 1.0);
    EXPECT_DOUBLE_EQ(s.recall, 1.0);
    EXPECT_DOUBLE_EQ(s.f1, 1.0);
  }
}

TEST(RougeNTest, HalfOverlap) {
  const RougeScore s = RougeN(Tokens{"a", "b"}, Tokens{"b", "c"}, 1);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
}

TEST(RougeNTest, ClippedCounts) {
  const RougeScore s = RougeN(Tokens{"a", "a"}, Tokens{"a"}, 1);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
}

TEST(RougeNTest, EmptyAndShortInputsAreZero) {
  EXPECT_DOUBLE_EQ(RougeN(Tokens{}, Tokens{"a"}, 1).f1, 0.0);
  EXPECT_DOUBLE_EQ(RougeN(Tokens{"a"}, Tokens{}, 1).f1, 0.0);
  EXPECT_DOUBLE_EQ(RougeN(Tokens{"a"}, Tokens{"a"}, 2).f1, 0.0);
  EXPECT_THROW(RougeN(Tokens{"a"}, Tokens{"a"}, 0), std::invalid_argument);
}

TEST(RougeNTest, SeparatorInsideTokensDoesNotCollide) {
  // Bigram keys must not confuse ("a b", "c") with ("a", "b c").
  EXPECT_DOUBLE_EQ(RougeN(Tokens{"a b", "c"}, Tokens{"a", "b c"}, 2).f1, 0.0);
}

TEST(RougeLTest, Examples) {
  EXPECT_DOUBLE_EQ(RougeL(Tokens{"a", "b"}, Tokens{"a", "b"}).f1, 1.0);
  const RougeScore s =
      RougeL(Tokens{"a", "b", "c", "d"}, Tokens{"a", "c", "d", "b"});
  EXPECT_DOUBLE_EQ(s.recall, 0.75);
  EXPECT_DOUBLE_EQ(s.precision, 0.75);
  EXPECT_DOUBLE_EQ(RougeL(Tokens{"a", "b"}, Tokens{"c", "d"}).f1, 0.0);
}

TEST(RougeLTest, TokenCapTruncatesBothSides) {
  const Tokens a = {"x", "y", "z"};
  const Tokens b = {"x", "q", "z"};
  EXPECT_DOUBLE_EQ(RougeL(a, b, 1).f1, 1.0);
  EXPECT_DOUBLE_EQ(RougeL(a, b, 3).f1, 2.0 / 3.0);
}

TEST(RougePropertyTest, SymmetricInputsScoreOne) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    Tokens x;
    const int len = 3 + static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) x.push_back(std::string(1, 'a' + rng() % 4));
    for (int n = 1; n <= 3; ++n) EXPECT_DOUBLE_EQ(RougeN(x, x, n).f1, 1.0);
  }
}

TEST(RougePropertyTest, AddingAMatchingTokenNeverLowersRecall) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens cand;
    Tokens ref;
    for (int i = 0; i < 6; ++i) cand.push_back(std::string(1, 'a' + rng() % 5));
    for (int i = 0; i < 8; ++i) ref.push_back(std::string(1, 'a' + rng() % 5));
    const double before = RougeN(cand, ref, 1).recall;
    Tokens grown = cand;
    grown.push_back(ref[rng() % ref.size()]);
    EXPECT_GE(RougeN(grown, ref, 1).recall, before);
  }
}

TEST(RougePropertyTest, AgreesWithOracle) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens cand;
    Tokens ref;
    const int a = static_cast<int>(rng() % 9);
    const int b = static_cast<int>(rng() % 9);
    for (int i = 0; i < a; ++i) cand.push_back(std::string(1, 'a' + rng() % 4));
    for (int i = 0; i < b; ++i) ref.push_back(std::string(1, 'a' + rng() % 4));
    for (int n = 1; n <= 3; ++n) {
      const auto expected = testing::OracleRougeN(cand, ref, n);
      const RougeScore got = RougeN(cand, ref, n);
      EXPECT_NEAR(got.precision, expected.p, 1e-12);
      EXPECT_NEAR(got.recall, expected.r, 1e-12);
      EXPECT_NEAR(got.f1, expected.f, 1e-12);
    }
    const auto expected = testing::OracleRougeL(cand, ref);
    EXPECT_NEAR(RougeL(cand, ref).f1, expected.f, 1e-12);
  }
}

TEST(PrincipleScoreTest, FullContainmentHasRecallTermOne) {
  const Sentence s = Make(0, 0, {"a", "b"});
  const std::vector<Sentence> context = {Make(0, 1, {"a", "b", "c", "d"})};
  // r1_f1 recall term: every sentence unigram is in the context.
  const RougeScore r1 = RougeN(s.tokens, context[0].tokens, 1);
  EXPECT_DOUBLE_EQ(r1.precision, 1.0);
  EXPECT_DOUBLE_EQ(PrincipleScore(s, context, SalienceVariant::kR1F1), r1.f1);
}

TEST(PrincipleScoreTest, DisjointIsZero) {
  const Sentence s = Make(0, 0, {"a", "b"});
  const std::vector<Sentence> context = {Make(1, 0, {"c", "d"})};
  EXPECT_DOUBLE_EQ(PrincipleScore(s, context, SalienceVariant::kMeanR1R2F1),
                   0.0);
  EXPECT_DOUBLE_EQ(PrincipleScore(s, {}, SalienceVariant::kMeanR1R2F1), 0.0);
}

TEST(PrincipleScoreTest, RejectsSelfInContext) {
  const Sentence s = Make(0, 0, {"a"});
  const std::vector<Sentence> context = {Make(0, 0, {"a"})};
  EXPECT_THROW(PrincipleScore(s, context, SalienceVariant::kR1F1),
               std::invalid_argument);
}

TEST(PrincipleScoreTest, ToyDocumentMatchesBruteForce) {
  const std::vector<Sentence> doc = {Make(0, 0, {"the", "fire", "spread"}),
                                     Make(0, 1, {"crews", "fought", "the", "fire"}),
                                     Make(0, 2, {"rain", "came"})};
  for (size_t i = 0; i < doc.size(); ++i) {
    std::vector<Sentence> context;
    for (size_t j = 0; j < doc.size(); ++j) {
      if (j != i) context.push_back(doc[j]);
    }
    for (SalienceVariant v : kVariants) {
      EXPECT_NEAR(PrincipleScore(doc[i], context, v),
                  testing::OraclePrinciple(doc, i, ToOracle(v)), 1e-12);
    }
  }
}

TEST(ClusterRougeTest, SingleDocumentIsZero) {
  const std::vector<Sentence> doc = {Make(0, 0, {"a"}), Make(0, 1, {"a"})};
  EXPECT_DOUBLE_EQ(ClusterRouge(doc[0], doc, SalienceVariant::kMeanR1R2F1),
                   0.0);
}

TEST(ClusterRougeTest, VerbatimDuplicateContributesOne) {
  const std::vector<Sentence> cluster = {Make(0, 0, {"we", "are", "doing"}),
                                         Make(1, 0, {"we", "are", "doing"})};
  for (SalienceVariant v : kVariants) {
    EXPECT_DOUBLE_EQ(ClusterRouge(cluster[0], cluster, v), 1.0);
  }
}

TEST(ClusterRougeTest, PermutingOtherDocumentsIsInvariant) {
  const std::vector<Sentence> cluster = {
      Make(0, 0, {"a", "b", "c"}), Make(1, 0, {"a", "b"}),
      Make(2, 0, {"b", "c", "d"}), Make(3, 0, {"c", "a"})};
  const double base =
      ClusterRouge(cluster[0], cluster, SalienceVariant::kMeanR1R2F1);
  // Same documents under different indices.
  const std::vector<Sentence> permuted = {
      Make(0, 0, {"a", "b", "c"}), Make(1, 0, {"c", "a"}),
      Make(2, 0, {"a", "b"}), Make(3, 0, {"b", "c", "d"})};
  EXPECT_NEAR(ClusterRouge(permuted[0], permuted,
                           SalienceVariant::kMeanR1R2F1),
              base, 1e-12);
}

TEST(ClusterScorerTest, MatchesOracleOnRandomClusters) {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    testing::SyntheticSpec spec;
    spec.duplicate_rate = 0.3;
    const auto sentences =
        SegmentCluster(testing::MakeSyntheticCluster(seed, spec, "c"));
    const ClusterScorer scorer(sentences);
    for (size_t i = 0; i < sentences.size(); ++i) {
      for (SalienceVariant v : kVariants) {
        const double principle = scorer.Principle(i, v);
        const double cluster = scorer.Cluster(i, v);
        EXPECT_NEAR(principle,
                    testing::OraclePrinciple(sentences, i, ToOracle(v)), 1e-9);
        EXPECT_NEAR(cluster,
                    testing::OracleClusterRouge(sentences, i, ToOracle(v)),
                    1e-9);
        // Bit-identical to the direct library functions.
        std::vector<Sentence> context;
        for (size_t j = 0; j < sentences.size(); ++j) {
          if (j != i) context.push_back(sentences[j]);
        }
        EXPECT_EQ(principle, PrincipleScore(sentences[i], context, v));
        EXPECT_EQ(cluster, ClusterRouge(sentences[i], sentences, v));
      }
    }
  }
}

TEST(ClusterScorerTest, EdgeCases) {
  const std::vector<Sentence> one = {Make(0, 0, {"a", "b"})};
  const ClusterScorer single(one);
  EXPECT_DOUBLE_EQ(single.Principle(0, SalienceVariant::kMeanR1R2F1), 0.0);
  EXPECT_DOUBLE_EQ(single.Cluster(0, SalienceVariant::kMeanR1R2F1), 0.0);

  // Empty and one-token sentences next to the splice point.
  const std::vector<Sentence> tricky = {
      Make(0, 0, {"x"}), Make(0, 1, {}), Make(0, 2, {"x", "y"}),
      Make(1, 0, {"y"}), Make(1, 1, {"x", "y", "x"})};
  const ClusterScorer scorer(tricky);
  for (size_t i = 0; i < tricky.size(); ++i) {
    for (SalienceVariant v : kVariants) {
      EXPECT_NEAR(scorer.Principle(i, v),
                  testing::OraclePrinciple(tricky, i, ToOracle(v)), 1e-12)
          << i;
      EXPECT_NEAR(scorer.Cluster(i, v),
                  testing::OracleClusterRouge(tricky, i, ToOracle(v)), 1e-12)
          << i;
    }
  }

  const std::vector<Sentence> unordered = {Make(1, 0, {"a"}), Make(0, 0, {"b"})};
  EXPECT_THROW(ClusterScorer{unordered}, std::invalid_argument);
}

}  // namespace
}  // namespace pyramid_masker
