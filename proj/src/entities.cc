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

#include "pyramid_masker/entities.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "pyramid_masker/text_util.h"

namespace pyramid_masker {
namespace {

constexpr std::string_view kFunctionWords[] = {
    "a",        "about",   "according", "after",   "all",     "also",
    "although", "an",      "and",       "another", "any",     "are",
    "as",       "at",      "because",   "before",  "both",    "but",
    "by",       "during",  "each",      "every",   "few",     "for",
    "from",     "he",      "her",       "here",    "his",     "how",
    "however",  "i",       "if",        "in",      "into",    "is",
    "it",       "its",     "many",      "meanwhile", "more",  "most",
    "my",       "nearly",  "no",        "not",     "of",      "on",
    "once",     "one",     "or",        "our",     "over",    "several",
    "she",      "since",   "so",        "some",    "such",    "that",
    "the",      "their",   "them",      "then",    "there",   "these",
    "they",     "this",    "those",     "though",  "to",      "under",
    "until",    "was",     "we",        "were",    "what",    "when",
    "where",    "which",   "while",     "who",     "why",     "with",
    "without",  "yet",     "you",       "your",
};

constexpr std::string_view kUnitWords[] = {
    "acre",     "acres",      "billion",  "percent",   "%",
    "degree",   "degrees",    "dollars",  "euros",     "feet",
    "foot",     "ft",         "hectare",  "hectares",  "kg",
    "kilogram", "kilograms",  "kilometer", "kilometers", "kilometre",
    "kilometres", "km",       "lb",       "lbs",       "meter",
    "meters",   "metre",      "metres",   "mile",      "miles",
    "million",  "mph",        "pound",    "pounds",    "ton",
    "tonnes",   "tons",       "trillion", "yards",
};

bool IsFunctionWord(std::string_view lower) {
  return std::find(std::begin(kFunctionWords), std::end(kFunctionWords),
                   lower) != std::end(kFunctionWords);
}

bool IsUnitWord(std::string_view lower) {
  return std::find(std::begin(kUnitWords), std::end(kUnitWords), lower) !=
         std::end(kUnitWords);
}

// A word with its surrounding punctuation peeled off.
struct Word {
  std::string_view core;
  bool breaks_after = false;  // trailing punctuation ends a capitalized run
};

size_t TrailingCloserLength(std::string_view w) {
  if (w.empty()) return 0;
  const char c = w.back();
  if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' ||
      c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') {
    return 1;
  }
  if (w.ends_with("\xE2\x80\x9D") || w.ends_with("\xE2\x80\x99")) return 3;
  if (w.ends_with("\xC2\xBB")) return 2;
  return 0;
}

Word PeelWord(std::string_view raw) {
  while (!raw.empty()) {
    const char c = raw.front();
    if (c == '"' || c == '\'' || c == '(' || c == '[' || c == '{') {
      raw.remove_prefix(1);
    } else if (raw.starts_with("\xE2\x80\x9C") ||
               raw.starts_with("\xE2\x80\x98")) {
      raw.remove_prefix(3);
    } else if (raw.starts_with("\xC2\xAB")) {
      raw.remove_prefix(2);
    } else {
      break;
    }
  }
  Word word;
  // "Dr." and initials keep their period and do not end a name.
  if (raw.size() >= 2 && raw.back() == '.' &&
      TrailingCloserLength(raw.substr(0, raw.size() - 1)) == 0) {
    std::string_view body = raw.substr(0, raw.size() - 1);
    if ((body.size() == 1 && body[0] >= 'A' && body[0] <= 'Z') ||
        AbbreviationList::Default().Contains(body)) {
      word.core = raw;
      return word;
    }
  }
  while (size_t len = TrailingCloserLength(raw)) {
    raw.remove_suffix(len);
    word.breaks_after = true;
  }
  if (raw.ends_with("'s") || raw.ends_with("\xE2\x80\x99s")) {
    raw.remove_suffix(raw.ends_with("'s") ? 2 : 4);
  }
  word.core = raw;
  return word;
}

bool IsCapitalized(std::string_view core) {
  return !core.empty() && core.front() >= 'A' && core.front() <= 'Z';
}

bool IsAllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

bool IsYear(std::string_view core) {
  if (core.size() != 4 || !IsAllDigits(core)) return false;
  const int year = std::stoi(std::string(core));
  return year >= 1000 && year <= 2099;
}

// Digits with optional thousands separators or a decimal part.
bool IsNumber(std::string_view core) {
  if (core.empty() || core.front() < '0' || core.front() > '9') return false;
  if (core.back() < '0' || core.back() > '9') return false;
  return std::all_of(core.begin(), core.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == ',' || c == '.';
  });
}

bool IsPercentage(std::string_view core) {
  return core.size() >= 2 && core.back() == '%' &&
         IsNumber(core.substr(0, core.size() - 1));
}

// Capitalized function words ("The", "In") never join a run; acronyms such as
// "US" are not function words.
bool IsCapitalizedFunctionWord(std::string_view core) {
  const std::string lower = FoldCase(core);
  if (!IsFunctionWord(lower)) return false;
  return core.size() == 1 || core.substr(1) == std::string_view(lower).substr(1);
}

bool IsWordCodePoint(char32_t cp) {
  if (cp < 0x80) return IsAsciiAlnum(static_cast<char>(cp));
  return !IsPunctuation(cp);
}

// Code point ending just before byte offset `end`.
char32_t CodePointBefore(std::string_view text, size_t end) {
  size_t start = end - 1;
  while (start > 0 && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80 &&
         end - start < 4) {
    --start;
  }
  size_t pos = start;
  return DecodeUtf8(text.substr(0, end), pos);
}

void AddMention(std::vector<EntityMention>& out, std::string surface,
                const Sentence& sentence) {
  std::string normalized = NormalizeEntity(surface);
  if (normalized.empty()) return;
  out.push_back({std::move(surface), std::move(normalized), sentence.doc_index,
                 sentence.sent_index});
}

std::string JoinCores(const std::vector<Word>& words, size_t begin,
                      size_t end) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out.append(words[i].core);
  }
  return out;
}

}  // namespace

std::string NormalizeEntity(std::string_view surface) {
  return CollapseWhitespace(FoldCase(surface));
}

bool ContainsEntity(std::string_view normalized_text, std::string_view entity) {
  if (entity.empty()) return false;
  size_t first_pos = 0;
  const char32_t first = DecodeUtf8(entity, first_pos);
  const char32_t last = CodePointBefore(entity, entity.size());
  const bool check_left = IsWordCodePoint(first);
  const bool check_right = IsWordCodePoint(last);

  size_t pos = normalized_text.find(entity);
  while (pos != std::string_view::npos) {
    const size_t end = pos + entity.size();
    bool ok = true;
    if (check_left && pos > 0 &&
        IsWordCodePoint(CodePointBefore(normalized_text, pos))) {
      ok = false;
    }
    if (ok && check_right && end < normalized_text.size()) {
      size_t next = end;
      if (IsWordCodePoint(DecodeUtf8(normalized_text, next))) ok = false;
    }
    if (ok) return true;
    pos = normalized_text.find(entity, pos + 1);
  }
  return false;
}

std::vector<EntityMention> RuleBasedExtractor::Extract(
    const DocumentCluster& cluster, std::span<const Sentence> sentences,
    std::vector<std::string>* warnings) const {
  (void)cluster;
  (void)warnings;

  std::vector<std::vector<Word>> words(sentences.size());
  std::unordered_set<std::string_view> lowercase_vocabulary;
  for (size_t s = 0; s < sentences.size(); ++s) {
    for (std::string_view raw : SplitWhitespace(sentences[s].text)) {
      Word w = PeelWord(raw);
      if (w.core.empty()) continue;
      if (w.core.front() >= 'a' && w.core.front() <= 'z') {
        lowercase_vocabulary.insert(w.core);
      }
      words[s].push_back(w);
    }
  }

  std::vector<EntityMention> mentions;
  for (size_t s = 0; s < sentences.size(); ++s) {
    const Sentence& sentence = sentences[s];
    const std::vector<Word>& ws = words[s];
    size_t run_begin = 0;
    size_t run_end = 0;  // empty run when run_begin == run_end

    const auto flush = [&]() {
      if (run_end == run_begin) return;
      const bool opens_sentence = run_begin == 0;
      if (run_end - run_begin == 1 && opens_sentence) {
        const std::string lower = FoldCase(ws[run_begin].core);
        if (lowercase_vocabulary.contains(lower)) {
          run_begin = run_end;
          return;
        }
      }
      AddMention(mentions, JoinCores(ws, run_begin, run_end), sentence);
      run_begin = run_end;
    };

    for (size_t i = 0; i < ws.size(); ++i) {
      const Word& w = ws[i];
      if (IsCapitalized(w.core) && !IsCapitalizedFunctionWord(w.core)) {
        if (run_begin == run_end) run_begin = i;
        run_end = i + 1;
        if (w.breaks_after) flush();
        continue;
      }
      flush();
      run_begin = run_end = i + 1;
      if (IsYear(w.core) || IsPercentage(w.core)) {
        AddMention(mentions, std::string(w.core), sentence);
      } else if (IsNumber(w.core) && !w.breaks_after && i + 1 < ws.size() &&
                 IsUnitWord(FoldCase(ws[i + 1].core))) {
        AddMention(mentions, JoinCores(ws, i, i + 2), sentence);
      }
    }
    flush();
  }
  return mentions;
}

std::vector<EntityMention> ProvidedAnnotationExtractor::Extract(
    const DocumentCluster& cluster, std::span<const Sentence> sentences,
    std::vector<std::string>* warnings) const {
  if (!cluster.entity_annotations) {
    return fallback_.Extract(cluster, sentences, warnings);
  }
  std::vector<EntityMention> mentions;
  for (const EntityAnnotation& a : *cluster.entity_annotations) {
    std::string normalized = NormalizeEntity(a.surface);
    if (normalized.empty()) continue;
    const std::string folded = FoldCase(a.surface);
    bool found = false;
    for (int pass = 0; pass < 2 && !found; ++pass) {
      for (const Sentence& s : sentences) {
        if (s.doc_index != a.doc) continue;
        const bool hit = pass == 0
                             ? s.text.find(a.surface) != std::string::npos
                             : FoldCase(s.text).find(folded) != std::string::npos;
        if (hit) {
          mentions.push_back({a.surface, normalized, s.doc_index, s.sent_index});
          found = true;
        }
      }
    }
    if (!found && warnings != nullptr) {
      warnings->push_back("entity annotation '" + a.surface +
                          "' not found in document " + std::to_string(a.doc));
    }
  }
  return mentions;
}

std::unique_ptr<EntityExtractor> MakeExtractor(EntitySource source) {
  if (source == EntitySource::kProvided) {
    return std::make_unique<ProvidedAnnotationExtractor>();
  }
  return std::make_unique<RuleBasedExtractor>();
}

std::vector<EntityMention> ExtractEntities(const DocumentCluster& cluster,
                                           std::span<const Sentence> sentences,
                                           const EntityExtractor& extractor,
                                           std::vector<std::string>* warnings) {
  return extractor.Extract(cluster, sentences, warnings);
}

EntityPyramid BuildPyramid(std::span<const EntityMention> mentions,
                           int num_docs) {
  struct Accumulated {
    std::set<int> docs;
    std::set<SentenceId> locations;
  };
  std::map<std::string, Accumulated, std::less<>> by_entity;
  for (const EntityMention& m : mentions) {
    if (m.doc_index < 0 || m.doc_index >= num_docs) {
      throw std::invalid_argument("mention of '" + m.normalized +
                                  "' references document " +
                                  std::to_string(m.doc_index));
    }
    Accumulated& acc = by_entity[m.normalized];
    acc.docs.insert(m.doc_index);
    acc.locations.insert(m.location());
  }

  EntityPyramid pyramid;
  for (auto& [entity, acc] : by_entity) {
    if (acc.docs.size() < 2) continue;
    pyramid.entries.push_back(
        {entity, static_cast<int>(acc.docs.size()),
         std::vector<SentenceId>(acc.locations.begin(), acc.locations.end())});
  }
  std::sort(pyramid.entries.begin(), pyramid.entries.end(),
            [](const PyramidEntry& a, const PyramidEntry& b) {
              if (a.doc_frequency != b.doc_frequency) {
                return a.doc_frequency > b.doc_frequency;
              }
              if (a.locations.front() != b.locations.front()) {
                return a.locations.front() < b.locations.front();
              }
              return a.entity < b.entity;
            });
  return pyramid;
}

}  // namespace pyramid_masker
