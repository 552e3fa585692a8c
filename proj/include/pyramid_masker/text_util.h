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

#ifndef PYRAMID_MASKER_TEXT_UTIL_H_
#define PYRAMID_MASKER_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace pyramid_masker {

// Whitespace is ASCII whitespace only; every length limit in the pipeline is
// measured in tokens produced by SplitWhitespace.
inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

std::string_view Trim(std::string_view text);

std::vector<std::string_view> SplitWhitespace(std::string_view text);

// Number of whitespace-separated tokens, without materializing them.
size_t CountWhitespaceTokens(std::string_view text);

// Trims and replaces every internal whitespace run with a single space.
std::string CollapseWhitespace(std::string_view text);

// Decodes one code point starting at `pos` and advances `pos`. Invalid
// sequences decode as the single raw byte so that nothing is ever lost.
char32_t DecodeUtf8(std::string_view text, size_t& pos);
void AppendUtf8(std::string& out, char32_t cp);

// Lower-cases ASCII, Latin-1 and the Latin Extended-A pairs.
char32_t ToLowerCodePoint(char32_t cp);
std::string FoldCase(std::string_view text);

// ASCII punctuation plus the common Unicode quote, dash and CJK marks.
bool IsPunctuation(char32_t cp);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_TEXT_UTIL_H_
