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
// Deterministic synthetic corpora with hand-planted rule violations. Every
// planted count is known by construction, so rejection histograms can be
// asserted exactly.

#ifndef CORPUSFORGE_TESTS_SUPPORT_FIXTURES_H_
#define CORPUSFORGE_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace testsup {

struct PlantedCounts {
  std::uint64_t documents = 0;        // well-formed records
  std::uint64_t malformed_lines = 0;
  std::uint64_t keep = 0;             // survivors with dedup on
  // Document-reason plants.
  std::uint64_t too_few_sentences = 0;
  std::uint64_t too_short = 0;
  std::uint64_t too_long = 0;
  std::uint64_t wrong_language = 0;
  std::uint64_t duplicate = 0;
  // Sentence-reason plants (each inside an otherwise-kept document).
  std::uint64_t boilerplate = 0;
  std::uint64_t badword = 0;
  std::uint64_t too_few_words = 0;
  std::uint64_t word_too_long = 0;
  std::uint64_t bad_terminal = 0;
};

struct MixedCorpusOptions {
  std::size_t keepers = 700;
  std::size_t too_few_sentences = 50;
  std::size_t too_short = 60;
  std::size_t too_long = 5;
  std::size_t wrong_language = 60;
  std::size_t duplicates = 125;
  // Sentence plants carved out of the first keepers, in this order.
  std::size_t plant_boilerplate = 100;
  std::size_t plant_badword = 80;
  std::size_t plant_too_few_words = 60;
  std::size_t plant_word_too_long = 50;
  std::size_t plant_bad_terminal = 40;
  std::size_t shards = 4;
  bool gzip_odd_shards = true;
  std::size_t malformed_lines = 3;
  std::uint64_t seed = 20260810;
};

// Writes the shards plus `manifest.txt` into `dir` and returns the planted
// counts. Duplicates are byte-copies of earlier plain keepers and always
// appear later in global order.
PlantedCounts write_mixed_corpus(const std::filesystem::path& dir,
                                 const MixedCorpusOptions& options = {});

// A valid Italian document of `sentences` unique sentences (each >= 3 words,
// terminal '.'), tagged so no 3-sentence window collides across (doc_tag,
// other docs').
std::string italian_document(std::uint64_t doc_tag, std::size_t sentences);

// One Italian sentence of roughly `approx_chars` characters ending in '.'.
std::string italian_sentence(std::uint64_t tag, std::size_t approx_chars);

// Web-text-shaped corpus of roughly `target_bytes` where about half the text
// bytes (by construction) belong to documents that violate some rule.
// Returns the manifest path.
std::filesystem::path write_half_dirty_corpus(const std::filesystem::path& dir,
                                              std::uint64_t target_bytes,
                                              std::uint64_t seed = 7);

// Single large shard of valid Italian documents, roughly `target_bytes`.
// Returns the manifest path.
std::filesystem::path write_big_clean_shard(const std::filesystem::path& dir,
                                            std::uint64_t target_bytes,
                                            std::uint64_t seed = 11);

// Tokenizer training text: `target_bytes` of synthetic Italian-like lines.
std::vector<std::string> tokenizer_training_lines(std::uint64_t target_bytes,
                                                  std::uint64_t seed = 3);

}  // namespace testsup

#endif  // CORPUSFORGE_TESTS_SUPPORT_FIXTURES_H_
