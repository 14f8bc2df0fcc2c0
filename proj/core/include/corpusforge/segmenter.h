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
//
// Rule-based sentence segmentation. A deterministic splitter with an Italian
// abbreviation list, a number guard ("3.14") and an initials guard
// ("G. Verdi"), so the pipeline is reproducible without a statistical
// dependency.

#ifndef CORPUSFORGE_SEGMENTER_H_
#define CORPUSFORGE_SEGMENTER_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace corpusforge {

// A segmented sentence with the per-sentence quantities the filters consume.
// Lengths are in Unicode scalar values; a word is a maximal whitespace-
// delimited token, punctuation included.
struct SentenceRecord {
  std::string text;  // trimmed, never empty
  std::size_t word_count = 0;
  std::size_t max_word_len = 0;
  std::optional<char32_t> terminal_char;
};

// (word_count, max_word_len) for a sentence.
std::pair<std::size_t, std::size_t> count_words(std::string_view text);

SentenceRecord make_sentence_record(std::string text);

class Segmenter {
 public:
  // Abbreviations are lowercase tokens with their trailing dot ("dott.").
  explicit Segmenter(const std::vector<std::string>& abbreviations);

  // Loads the abbreviation list resource from `resource_dir`.
  static Segmenter from_resources(const std::filesystem::path& dir);

  // Splits into sentences. Boundaries occur only after `.`, `!`, `?`, `…`
  // (with closing quotes/parens attached) or a newline; a `.` does not split
  // after a listed abbreviation, between digits, or after initials.
  // Concatenating the results with single spaces loses no non-whitespace
  // character of the input.
  std::vector<SentenceRecord> split_sentences(std::string_view doc_text) const;

  bool is_abbreviation(std::string_view lowercase_token) const {
    return abbreviations_.count(std::string(lowercase_token)) > 0;
  }

 private:
  std::unordered_set<std::string> abbreviations_;
};

}  // namespace corpusforge

#endif  // CORPUSFORGE_SEGMENTER_H_
