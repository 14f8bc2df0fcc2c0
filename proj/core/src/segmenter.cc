// Copyright 2026 The CorpusForge Authors
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

#include "corpusforge/segmenter.h"

#include <algorithm>

#include "corpusforge/resources.h"
#include "corpusforge/unicode.h"

namespace corpusforge {

namespace {

bool is_terminator(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;  // …
}

// Closing quotes/parens that attach to the sentence they terminate.
bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case 0x201D:  // ”
    case 0x2019:  // ’
    case 0x00BB:  // »
      return true;
    default:
      return false;
  }
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_letter(char32_t cp) {
  char32_t lo = uni::to_lower(cp);
  if (lo >= U'a' && lo <= U'z') return true;
  // Lowercase Latin-1 and Extended-A letters map to themselves.
  return (lo >= 0xDF && lo <= 0xFF && lo != 0xF7) || (lo >= 0x100 && lo <= 0x17F);
}

bool is_upper(char32_t cp) { return is_letter(cp) && uni::to_lower(cp) != cp; }

}  // namespace

std::pair<std::size_t, std::size_t> count_words(std::string_view text) {
  std::size_t words = 0;
  std::size_t max_len = 0;
  std::size_t cur_len = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = uni::decode_next(text, i);
    if (uni::is_space(cp)) {
      if (cur_len > 0) {
        ++words;
        max_len = std::max(max_len, cur_len);
        cur_len = 0;
      }
    } else {
      ++cur_len;
    }
  }
  if (cur_len > 0) {
    ++words;
    max_len = std::max(max_len, cur_len);
  }
  return {words, max_len};
}

SentenceRecord make_sentence_record(std::string text) {
  SentenceRecord rec;
  rec.text = std::move(text);
  auto [words, max_len] = count_words(rec.text);
  rec.word_count = words;
  rec.max_word_len = max_len;
  std::size_t i = 0;
  char32_t last = 0;
  bool any = false;
  while (i < rec.text.size()) {
    char32_t cp = uni::decode_next(rec.text, i);
    if (!uni::is_space(cp)) {
      last = cp;
      any = true;
    }
  }
  if (any) rec.terminal_char = last;
  return rec;
}

Segmenter::Segmenter(const std::vector<std::string>& abbreviations) {
  for (const auto& a : abbreviations) {
    abbreviations_.insert(uni::to_lower_copy(a));
  }
}

Segmenter Segmenter::from_resources(const std::filesystem::path& dir) {
  return Segmenter(load_line_list(dir / "abbreviations_it.txt"));
}

std::vector<SentenceRecord> Segmenter::split_sentences(
    std::string_view doc_text) const {
  // Decode once; byte offsets let each sentence be sliced from the original
  // bytes untouched.
  std::vector<char32_t> cps;
  std::vector<std::uint32_t> offs;
  cps.reserve(doc_text.size());
  offs.reserve(doc_text.size() + 1);
  {
    std::size_t i = 0;
    while (i < doc_text.size()) {
      offs.push_back(static_cast<std::uint32_t>(i));
      cps.push_back(uni::decode_next(doc_text, i));
    }
    offs.push_back(static_cast<std::uint32_t>(doc_text.size()));
  }
  const std::size_t n = cps.size();

  std::vector<SentenceRecord> out;
  auto flush = [&](std::size_t begin, std::size_t end) {
    while (begin < end && uni::is_space(cps[begin])) ++begin;
    while (end > begin && uni::is_space(cps[end - 1])) --end;
    if (begin >= end) return;
    out.push_back(make_sentence_record(
        std::string(doc_text.substr(offs[begin], offs[end] - offs[begin]))));
  };

  // Token ending at the dot position `dot` (inclusive), lowercased, with
  // leading non-alphanumeric characters stripped.
  auto token_ending_at = [&](std::size_t dot) {
    std::size_t k = dot;
    while (k > 0 && !uni::is_space(cps[k - 1])) --k;
    while (k < dot && !is_letter(cps[k]) && !is_digit(cps[k])) ++k;
    std::string tok;
    for (std::size_t t = k; t <= dot; ++t) uni::append_utf8(uni::to_lower(cps[t]), tok);
    return tok;
  };

  // True for tokens of the shape "G." / "U.S." / "U.S.A.".
  auto is_initials = [&](std::size_t dot) {
    std::size_t k = dot;
    while (k > 0 && !uni::is_space(cps[k - 1])) --k;
    while (k < dot && !is_letter(cps[k]) && !is_digit(cps[k])) ++k;
    if (k > dot) return false;
    bool expect_letter = true;
    for (std::size_t t = k; t <= dot; ++t) {
      if (expect_letter) {
        if (!is_upper(cps[t])) return false;
      } else {
        if (cps[t] != U'.') return false;
      }
      expect_letter = !expect_letter;
    }
    return expect_letter;  // token ends on a dot
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    char32_t cp = cps[i];
    if (cp == U'\n') {
      flush(start, i);
      start = i + 1;
      ++i;
      continue;
    }
    if (!is_terminator(cp)) {
      ++i;
      continue;
    }
    // Consume the full terminator run ("...", "?!") plus attached closers.
    std::size_t run_end = i;
    while (run_end + 1 < n && is_terminator(cps[run_end + 1])) ++run_end;
    std::size_t j = run_end;
    while (j + 1 < n && is_closer(cps[j + 1])) ++j;

    bool at_eos = (j + 1 >= n);
    bool before_space = !at_eos && uni::is_space(cps[j + 1]);
    bool split = at_eos || before_space;

    if (split && cp == U'.' && run_end == i) {
      // Single-dot guards. Number guard only matters mid-token ("3.14"), so
      // it cannot fire here (the next char is whitespace), but abbreviations
      // and initials end exactly at this dot.
      std::string tok = token_ending_at(i);
      if (abbreviations_.count(tok) > 0 || is_initials(i)) split = false;
    }

    if (split) {
      flush(start, j + 1);
      start = j + 1;
    }
    i = j + 1;
  }
  flush(start, n);
  return out;
}

}  // namespace corpusforge
