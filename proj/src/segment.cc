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

#include "pyramid_masker/segment.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <utility>

#include "pyramid_masker/porter_stemmer.h"
#include "pyramid_masker/text_util.h"

namespace pyramid_masker {
namespace {

// Keep in sync with resources/abbreviations.txt (checked by a test).
constexpr const char* kDefaultAbbreviations[] = {
    "a.m",  "adm",  "apr",  "approx", "aug", "ave",  "blvd", "capt", "cmdr",
    "co",   "col",  "corp", "dec",    "dept", "dr",  "e.g",  "est",  "feb",
    "fig",  "gen",  "gov",  "hon",    "i.e", "inc",  "jan",  "jr",   "jul",
    "jun",  "lt",   "ltd",  "mar",    "mr",  "mrs",  "ms",   "mt",   "nov",
    "oct",  "p.m",  "pres", "prof",   "rep", "rev",  "sen",  "sep",  "sept",
    "sgt",  "sr",   "st",   "u.k",    "u.n", "u.s",  "vs",
};

bool IsTerminator(char c) { return c == '.' || c == '?' || c == '!'; }

// Length in bytes of a closing quote or bracket at `pos`, or 0.
size_t CloserLength(std::string_view text, size_t pos) {
  const char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') return 1;
  std::string_view rest = text.substr(pos);
  if (rest.starts_with("\xE2\x80\x9D") || rest.starts_with("\xE2\x80\x99")) {
    return 3;  // right double / single quotation mark
  }
  if (rest.starts_with("\xC2\xBB")) return 2;  // right guillemet
  return 0;
}

std::string_view StripOpeners(std::string_view word) {
  while (!word.empty()) {
    const char c = word.front();
    if (c == '"' || c == '\'' || c == '(' || c == '[' || c == '{') {
      word.remove_prefix(1);
    } else if (word.starts_with("\xE2\x80\x9C") ||
               word.starts_with("\xE2\x80\x98")) {
      word.remove_prefix(3);
    } else if (word.starts_with("\xC2\xAB")) {
      word.remove_prefix(2);
    } else {
      break;
    }
  }
  return word;
}

bool SuppressesBoundary(std::string_view word,
                        const AbbreviationList& abbreviations) {
  word = StripOpeners(word);
  if (word.empty()) return false;
  if (word.size() == 1 && word[0] >= 'A' && word[0] <= 'Z') return true;
  return abbreviations.Contains(word);
}

std::string StemToFixedPoint(const std::string& token) {
  thread_local std::unordered_map<std::string, std::string> cache;
  if (auto it = cache.find(token); it != cache.end()) return it->second;
  std::string current = token;
  for (int round = 0; round < 8; ++round) {
    std::string next = PorterStem(current);
    if (next == current) break;
    current = std::move(next);
  }
  if (cache.size() >= (1u << 16)) cache.clear();
  cache.emplace(token, current);
  return current;
}

}  // namespace

AbbreviationList::AbbreviationList(std::vector<std::string> entries) {
  for (std::string& e : entries) entries_.insert(FoldCase(e));
}

const AbbreviationList& AbbreviationList::Default() {
  static const AbbreviationList list(std::vector<std::string>(
      std::begin(kDefaultAbbreviations), std::end(kDefaultAbbreviations)));
  return list;
}

AbbreviationList AbbreviationList::Parse(std::istream& in) {
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view entry = Trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    if (entry.back() == '.') entry.remove_suffix(1);
    if (!entry.empty()) entries.emplace_back(entry);
  }
  return AbbreviationList(std::move(entries));
}

AbbreviationList AbbreviationList::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw IoError("cannot open abbreviation list: " + path);
  return Parse(in);
}

bool AbbreviationList::Contains(std::string_view word) const {
  if (entries_.contains(word)) return true;
  return entries_.contains(FoldCase(word));
}

std::vector<std::string> SplitSentenceTexts(
    std::string_view document, const AbbreviationList& abbreviations) {
  std::vector<std::string> sentences;
  const size_t n = document.size();
  size_t start = 0;
  size_t i = 0;
  while (i < n) {
    if (!IsTerminator(document[i])) {
      ++i;
      continue;
    }
    size_t end = i;
    while (end < n && IsTerminator(document[end])) ++end;
    const bool single_period = end - i == 1 && document[i] == '.';
    while (end < n) {
      const size_t len = CloserLength(document, end);
      if (len == 0) break;
      end += len;
    }
    if (end < n && !IsAsciiSpace(document[end])) {
      i = end;
      continue;
    }
    if (single_period) {
      size_t word_start = i;
      while (word_start > start && !IsAsciiSpace(document[word_start - 1])) {
        --word_start;
      }
      if (SuppressesBoundary(document.substr(word_start, i - word_start),
                             abbreviations)) {
        i = end;
        continue;
      }
    }
    std::string_view sentence = Trim(document.substr(start, end - start));
    if (!sentence.empty()) sentences.emplace_back(sentence);
    start = end;
    i = end;
  }
  std::string_view rest = Trim(document.substr(start));
  if (!rest.empty()) sentences.emplace_back(rest);
  return sentences;
}

std::vector<std::string> NormalizeTokens(std::string_view text,
                                         const NormalizationConfig& config) {
  std::string buffer;
  if (!config.lowercase && !config.strip_punctuation) {
    buffer.assign(text);
  } else {
    buffer.reserve(text.size());
    size_t pos = 0;
    while (pos < text.size()) {
      const size_t begin = pos;
      const char32_t cp = DecodeUtf8(text, pos);
      if (config.strip_punctuation && IsPunctuation(cp)) {
        buffer.push_back(' ');
        continue;
      }
      const char32_t out = config.lowercase ? ToLowerCodePoint(cp) : cp;
      if (out == cp) {
        buffer.append(text.substr(begin, pos - begin));
      } else {
        AppendUtf8(buffer, out);
      }
    }
  }

  std::vector<std::string> tokens;
  for (std::string_view token : SplitWhitespace(buffer)) {
    tokens.emplace_back(token);
  }
  if (config.stemming == Stemming::kPorter) {
    for (std::string& token : tokens) token = StemToFixedPoint(token);
  }
  return tokens;
}

std::vector<Sentence> SplitSentences(std::string_view document, int doc_index,
                                     const NormalizationConfig& config,
                                     const AbbreviationList& abbreviations) {
  std::vector<Sentence> sentences;
  int sent_index = 0;
  for (std::string& text : SplitSentenceTexts(document, abbreviations)) {
    Sentence s;
    s.doc_index = doc_index;
    s.sent_index = sent_index++;
    s.tokens = NormalizeTokens(text, config);
    s.text = std::move(text);
    sentences.push_back(std::move(s));
  }
  return sentences;
}

std::vector<Sentence> SegmentCluster(const DocumentCluster& cluster,
                                     const NormalizationConfig& config,
                                     const AbbreviationList& abbreviations) {
  std::vector<Sentence> all;
  for (size_t d = 0; d < cluster.documents.size(); ++d) {
    for (Sentence& s : SplitSentences(cluster.documents[d],
                                      static_cast<int>(d), config,
                                      abbreviations)) {
      s.cluster_id = cluster.cluster_id;
      all.push_back(std::move(s));
    }
  }
  return all;
}

}  // namespace pyramid_masker
