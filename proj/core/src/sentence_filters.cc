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

#include "corpusforge/sentence_filters.h"

#include "corpusforge/resources.h"
#include "corpusforge/unicode.h"

namespace corpusforge {

namespace {

bool is_standard_terminator(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;
}

bool is_whitelisted_closer(char32_t cp) {
  return cp == U'"' || cp == 0x201D || cp == 0x00BB || cp == U')';
}

// Accepts sentences ending in a standard terminator, optionally followed by
// closing quotes/parens («Così.» stays valid Italian prose).
bool has_valid_terminal(const SentenceRecord& s) {
  if (!s.terminal_char.has_value()) return false;
  if (is_standard_terminator(*s.terminal_char)) return true;
  if (!is_whitelisted_closer(*s.terminal_char)) return false;
  // Walk the codepoints and check that the trailing closer run is preceded
  // by a standard terminator.
  std::vector<char32_t> cps;
  std::size_t i = 0;
  while (i < s.text.size()) cps.push_back(uni::decode_next(s.text, i));
  std::size_t k = cps.size();
  while (k > 0 && is_whitelisted_closer(cps[k - 1])) --k;
  return k > 0 && is_standard_terminator(cps[k - 1]);
}

bool any_badword_token(std::string_view lowercase_text, const BadWordsIndex& bw) {
  std::size_t tok_begin = 0;
  bool in_token = false;
  std::size_t byte_pos = 0;
  while (byte_pos < lowercase_text.size()) {
    std::size_t next = byte_pos;
    char32_t cp = uni::decode_next(lowercase_text, next);
    if (uni::is_space(cp)) {
      if (in_token &&
          bw.contains(lowercase_text.substr(tok_begin, byte_pos - tok_begin))) {
        return true;
      }
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      tok_begin = byte_pos;
    }
    byte_pos = next;
  }
  return in_token && bw.contains(lowercase_text.substr(tok_begin));
}

}  // namespace

std::string_view to_string(SentenceReason reason) {
  switch (reason) {
    case SentenceReason::kBoilerplate: return "Boilerplate";
    case SentenceReason::kBadWord: return "BadWord";
    case SentenceReason::kTooFewWords: return "TooFewWords";
    case SentenceReason::kWordTooLong: return "WordTooLong";
    case SentenceReason::kBadTerminal: return "BadTerminal";
  }
  return "?";
}

BadWordsIndex::BadWordsIndex(const std::vector<std::string>& words) {
  for (const auto& w : words) add(w);
}

void BadWordsIndex::add(std::string_view word) {
  entries_.insert(uni::to_lower_copy(word));
}

BadWordsIndex BadWordsIndex::from_file(const std::filesystem::path& file) {
  return BadWordsIndex(load_line_list(file));
}

BoilerplatePatterns::BoilerplatePatterns(std::vector<std::string> needles) {
  needles_.reserve(needles.size());
  for (auto& n : needles) needles_.push_back(uni::to_lower_copy(n));
}

BoilerplatePatterns BoilerplatePatterns::from_file(
    const std::filesystem::path& file) {
  return BoilerplatePatterns(load_line_list(file));
}

bool BoilerplatePatterns::matches(std::string_view lowercase_text) const {
  for (const auto& needle : needles_) {
    if (lowercase_text.find(needle) != std::string_view::npos) return true;
  }
  return false;
}

SentenceVerdict judge_sentence(const SentenceRecord& s, const BadWordsIndex& bw,
                               const BoilerplatePatterns& bp,
                               const SentenceRuleLimits& limits) {
  std::string lower = uni::to_lower_copy(s.text);
  auto drop = [](SentenceReason r) { return SentenceVerdict{false, r}; };
  if (bp.matches(lower)) return drop(SentenceReason::kBoilerplate);
  if (any_badword_token(lower, bw)) return drop(SentenceReason::kBadWord);
  if (s.word_count < limits.min_words) return drop(SentenceReason::kTooFewWords);
  if (s.max_word_len > limits.max_word_len) return drop(SentenceReason::kWordTooLong);
  if (!has_valid_terminal(s)) return drop(SentenceReason::kBadTerminal);
  return SentenceVerdict{true, std::nullopt};
}

std::pair<std::vector<SentenceRecord>, std::vector<SentenceVerdict>>
filter_sentences(const std::vector<SentenceRecord>& sentences,
                 const BadWordsIndex& bw, const BoilerplatePatterns& bp,
                 const SentenceRuleLimits& limits) {
  std::vector<SentenceRecord> kept;
  std::vector<SentenceVerdict> verdicts;
  verdicts.reserve(sentences.size());
  for (const auto& s : sentences) {
    verdicts.push_back(judge_sentence(s, bw, bp, limits));
    if (verdicts.back().keep) kept.push_back(s);
  }
  return {std::move(kept), std::move(verdicts)};
}

}  // namespace corpusforge
