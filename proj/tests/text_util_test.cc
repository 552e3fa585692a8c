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

#include "pyramid_masker/text_util.h"

#include <gtest/gtest.h>

namespace pyramid_masker {
namespace {

TEST(TextUtilTest, SplitWhitespaceDropsRuns) {
  const auto parts = SplitWhitespace("  a\tb \n c  ");
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], "a");
  EXPECT_EQ(parts[1], "b");
  EXPECT_EQ(parts[2], "c");
  EXPECT_TRUE(SplitWhitespace(" \t ").empty());
}

TEST(TextUtilTest, CountMatchesSplit) {
  for (const char* text : {"", " ", "a", "a b", " a  b c ", "x\ny\tz"}) {
    EXPECT_EQ(CountWhitespaceTokens(text), SplitWhitespace(text).size())
        << text;
  }
}

TEST(TextUtilTest, CollapseAndTrim) {
  EXPECT_EQ(Trim("  x y  "), "x y");
  EXPECT_EQ(CollapseWhitespace("  San \t Juan  "), "San Juan");
}

TEST(TextUtilTest, Utf8RoundTrip) {
  const std::string text = "caf\xC3\xA9 \xE2\x80\x9C" "x\xE2\x80\x9D";
  std::string rebuilt;
  for (size_t pos = 0; pos < text.size();) AppendUtf8(rebuilt, DecodeUtf8(text, pos));
  EXPECT_EQ(rebuilt, text);
}

TEST(TextUtilTest, InvalidUtf8DecodesAsRawByte) {
  const std::string text = "\xC3";
  size_t pos = 0;
  EXPECT_EQ(DecodeUtf8(text, pos), 0xC3u);
  EXPECT_EQ(pos, 1u);
}

TEST(TextUtilTest, FoldCaseHandlesLatin) {
  EXPECT_EQ(FoldCase("ABC \xC3\x89T\xC3\x89"), "abc \xC3\xA9t\xC3\xA9");
  EXPECT_EQ(FoldCase("\xC5\x81\xC3\x93\xC5\x81"), "\xC5\x82\xC3\xB3\xC5\x82");
}

TEST(TextUtilTest, Punctuation) {
  EXPECT_TRUE(IsPunctuation(U'.'));
  EXPECT_TRUE(IsPunctuation(U'“'));
  EXPECT_TRUE(IsPunctuation(U'。'));
  EXPECT_FALSE(IsPunctuation(U'a'));
  EXPECT_FALSE(IsPunctuation(U'é'));
}

}  // namespace
}  // namespace pyramid_masker
