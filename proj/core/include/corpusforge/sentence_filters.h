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
// Sentence-level rejection rules: badword tokens, too few words, overlong
// words, non-standard terminal punctuation, and boilerplate needles.

#ifndef CORPUSFORGE_SENTENCE_FILTERS_H_
#define CORPUSFORGE_SENTENCE_FILTERS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "corpusforge/segmenter.h"

namespace corpusforge {

// First matching rule wins; the order is fixed so rejection histograms are
// stable across runs.
enum class SentenceReason {
  kBoilerplate = 0,
  kBadWord,
  kTooFewWords,
  kWordTooLong,
  kBadTerminal,
};
inline constexpr int kNumSentenceReasons = 5;
std::string_view to_string(SentenceReason reason);

struct SentenceVerdict {
  bool keep = true;
  std::optional<SentenceReason> reason;  // present iff keep == false
};

// Whole-token membership, case-insensitive after Unicode lowercasing.
// Tokens are whitespace-delimited, punctuation included, so entries match
// exactly the word shapes the segmenter counts.
class BadWordsIndex {
 public:
  explicit BadWordsIndex(const std::vector<std::string>& words);
  static BadWordsIndex from_file(const std::filesystem::path& file);

  bool contains(std::string_view lowercase_token) const {
    return entries_.count(std::string(lowercase_token)) > 0;
  }
  std::size_t size() const { return entries_.size(); }

  void add(std::string_view word);

 private:
  std::unordered_set<std::string> entries_;
};

// Case-insensitive substring containment against a needle list (script
// markers, lorem ipsum, cookie/privacy phrases).
class BoilerplatePatterns {
 public:
  explicit BoilerplatePatterns(std::vector<std::string> needles);
  static BoilerplatePatterns from_file(const std::filesystem::path& file);

  // `lowercase_text` must already be lowercased.
  bool matches(std::string_view lowercase_text) const;
  std::size_t size() const { return needles_.size(); }

 private:
  std::vector<std::string> needles_;  // stored lowercase
};

struct SentenceRuleLimits {
  std::size_t min_words = 3;       // drop when word_count < min_words
  std::size_t max_word_len = 1000; // drop when a word is longer than this
};

SentenceVerdict judge_sentence(const SentenceRecord& s, const BadWordsIndex& bw,
                               const BoilerplatePatterns& bp,
                               const SentenceRuleLimits& limits = {});

// Order-preserving filter; verdicts align 1:1 with the inputs.
std::pair<std::vector<SentenceRecord>, std::vector<SentenceVerdict>>
filter_sentences(const std::vector<SentenceRecord>& sentences,
                 const BadWordsIndex& bw, const BoilerplatePatterns& bp,
                 const SentenceRuleLimits& limits = {});

}  // namespace corpusforge

#endif  // CORPUSFORGE_SENTENCE_FILTERS_H_
