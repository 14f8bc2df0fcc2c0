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

#include "corpusforge/document_filters.h"

#include "corpusforge/error.h"
#include "corpusforge/unicode.h"

namespace corpusforge {

std::string_view to_string(DocReason reason) {
  switch (reason) {
    case DocReason::kTooFewSentences: return "TooFewSentences";
    case DocReason::kTooShort: return "TooShort";
    case DocReason::kTooLong: return "TooLong";
    case DocReason::kWrongLanguage: return "WrongLanguage";
    case DocReason::kDuplicate: return "Duplicate";
  }
  return "?";
}

void RejectionReport::merge(const RejectionReport& other) {
  for (int i = 0; i < kNumSentenceReasons; ++i) {
    sentence_reasons[i] += other.sentence_reasons[i];
  }
  for (int i = 0; i < kNumDocReasons; ++i) {
    doc_reasons[i] += other.doc_reasons[i];
  }
}

std::uint64_t RejectionReport::total_sentence_rejections() const {
  std::uint64_t t = 0;
  for (auto c : sentence_reasons) t += c;
  return t;
}

std::uint64_t RejectionReport::total_doc_rejections() const {
  std::uint64_t t = 0;
  for (auto c : doc_reasons) t += c;
  return t;
}

CleanDocument recompose(const std::vector<SentenceRecord>& kept,
                        const RawDocument& raw) {
  CleanDocument doc;
  doc.url = raw.url;
  doc.timestamp = raw.timestamp;
  doc.sentence_count = kept.size();
  doc.sentences.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i > 0) doc.text += ' ';
    doc.text += kept[i].text;
    doc.sentences.push_back(kept[i].text);
  }
  doc.char_count = uni::char_count(doc.text);
  return doc;
}

std::optional<DocReason> judge_document(CleanDocument& cand,
                                        const LangDetector& detector,
                                        const DocumentRuleLimits& limits) {
  if (cand.sentence_count < limits.min_sentences) {
    return DocReason::kTooFewSentences;
  }
  if (cand.char_count < limits.min_chars) return DocReason::kTooShort;
  if (cand.char_count > limits.max_chars) return DocReason::kTooLong;
  try {
    DetectResult r = detector.detect(cand.text);
    if (r.lang != limits.required_lang || r.prob < limits.lang_threshold) {
      return DocReason::kWrongLanguage;
    }
    cand.lang = r.lang;
    cand.lang_prob = r.prob;
  } catch (const Error&) {
    // Unclassifiable input cannot be confirmed as the required language.
    return DocReason::kWrongLanguage;
  }
  return std::nullopt;
}

std::vector<Hash128> span_keys(const std::vector<std::string>& sentences) {
  std::vector<Hash128> keys;
  if (sentences.size() < 3) return keys;
  keys.reserve(sentences.size() - 2);
  for (std::size_t i = 0; i + 3 <= sentences.size(); ++i) {
    std::string window = sentences[i];
    window += ' ';
    window += sentences[i + 1];
    window += ' ';
    window += sentences[i + 2];
    std::string normalized = uni::collapse_whitespace(uni::to_lower_copy(window));
    keys.push_back(murmur3_x64_128(normalized));
  }
  return keys;
}

bool SpanDeduper::check_and_claim(const std::vector<Hash128>& keys) {
  // Check before inserting: a window repeated inside one document must not
  // collide with itself, only with earlier documents.
  bool duplicate = false;
  for (const Hash128& k : keys) {
    if (claimed_.count(k) > 0) {
      duplicate = true;
      break;
    }
  }
  for (const Hash128& k : keys) claimed_.insert(k);
  return duplicate;
}

std::size_t SpanDeduper::approx_bytes() const {
  // Bucket pointers plus one node per key.
  return claimed_.bucket_count() * sizeof(void*) +
         claimed_.size() * (sizeof(Hash128) + 2 * sizeof(void*));
}

std::vector<bool> dedup_pass(const std::vector<CleanDocument>& docs) {
  SpanDeduper deduper;
  std::vector<bool> duplicate(docs.size(), false);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    duplicate[i] = deduper.check_and_claim(span_keys(docs[i].sentences));
  }
  return duplicate;
}

}  // namespace corpusforge
