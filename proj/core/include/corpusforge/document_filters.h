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
// Document recomposition, document-level gates, and exact deduplication over
// normalized three-sentence windows.

#ifndef CORPUSFORGE_DOCUMENT_FILTERS_H_
#define CORPUSFORGE_DOCUMENT_FILTERS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "corpusforge/corpus_io.h"
#include "corpusforge/hash128.h"
#include "corpusforge/langid.h"
#include "corpusforge/segmenter.h"
#include "corpusforge/sentence_filters.h"

namespace corpusforge {

// A recomposed document. Serialized shards carry text/url/timestamp; the
// remaining fields are pipeline state. `sentences` keeps the surviving
// sentence texts for span hashing and is never written out.
struct CleanDocument {
  std::string text;  // kept sentences joined with single spaces
  std::string url;
  std::string timestamp;
  std::size_t sentence_count = 0;
  std::size_t char_count = 0;  // Unicode scalar values
  std::string lang;
  double lang_prob = 0.0;
  std::vector<std::string> sentences;
};

enum class DocReason {
  kTooFewSentences = 0,
  kTooShort,
  kTooLong,
  kWrongLanguage,
  kDuplicate,
};
inline constexpr int kNumDocReasons = 5;
std::string_view to_string(DocReason reason);

// Corpus-level rejection histogram. Kept counts plus these sum back to the
// inputs at both levels.
struct RejectionReport {
  std::array<std::uint64_t, kNumSentenceReasons> sentence_reasons{};
  std::array<std::uint64_t, kNumDocReasons> doc_reasons{};

  void count(SentenceReason r) { ++sentence_reasons[static_cast<int>(r)]; }
  void count(DocReason r) { ++doc_reasons[static_cast<int>(r)]; }
  void merge(const RejectionReport& other);
  std::uint64_t total_sentence_rejections() const;
  std::uint64_t total_doc_rejections() const;
};

// Joins the kept sentences with single spaces (original inter-sentence
// whitespace is not restored) and carries provenance from the raw record.
// Language fields stay unset; judge_document fills them.
CleanDocument recompose(const std::vector<SentenceRecord>& kept,
                        const RawDocument& raw);

struct DocumentRuleLimits {
  std::size_t min_sentences = 5;
  std::size_t min_chars = 500;
  std::size_t max_chars = 50000;
  std::string required_lang = "it";
  double lang_threshold = 0.70;
};

// Applies the document gates in fixed order: sentence floor, char bounds,
// then language. Returns the rejection reason, or nullopt when the document
// passes (in which case lang/lang_prob are filled in). A detector failure on
// degenerate input (too short to classify) counts as WrongLanguage.
std::optional<DocReason> judge_document(CleanDocument& cand,
                                        const LangDetector& detector,
                                        const DocumentRuleLimits& limits = {});

// SpanKeys for every consecutive 3-sentence window: windows are joined with
// single spaces, lowercased, internal whitespace collapsed, then hashed
// (128-bit). Documents with fewer than 3 sentences have no keys.
std::vector<Hash128> span_keys(const std::vector<std::string>& sentences);

// First-claim resolution in global (shard, record) order. Every document
// claims all its windows when presented, kept or not; a document is a
// duplicate iff one of its windows was claimed by an earlier document. This
// keeps claim resolution independent of verdicts, so the post-claim filter
// can run in parallel.
class SpanDeduper {
 public:
  // Presents a document's keys in global order. Returns true when the
  // document is a duplicate.
  bool check_and_claim(const std::vector<Hash128>& keys);

  std::size_t claimed_count() const { return claimed_.size(); }
  // Rough footprint of the claimed-set, reported separately from pipeline
  // memory.
  std::size_t approx_bytes() const;

 private:
  std::unordered_set<Hash128, Hash128Hasher> claimed_;
};

// Sequential in-memory dedup over documents already in global order; marks
// duplicates in the returned mask (true = duplicate).
std::vector<bool> dedup_pass(const std::vector<CleanDocument>& docs);

}  // namespace corpusforge

#endif  // CORPUSFORGE_DOCUMENT_FILTERS_H_
