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
// Full-run orchestration: manifest in, cleaned shards and reports out.
// Shard-level parallelism; outputs are byte-identical for any worker count.

#ifndef CORPUSFORGE_PIPELINE_H_
#define CORPUSFORGE_PIPELINE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "corpusforge/document_filters.h"

namespace corpusforge {

struct PipelineConfig {
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
  int workers = 1;
  double lang_threshold = 0.70;
  std::string required_lang = "it";
  enum class DedupMode { kOff, kDoc };
  DedupMode dedup = DedupMode::kDoc;

  // Resource resolution: explicit file overrides win, otherwise files are
  // looked up under `resources` (or CORPUSFORGE_RESOURCES / the install dir).
  std::string resources;
  std::filesystem::path badwords_file;
  std::filesystem::path boilerplate_file;
  std::filesystem::path abbreviations_file;
  std::filesystem::path profiles_dir;

  bool skip_malformed = true;  // skip-with-report vs abort
  std::size_t max_record_bytes = 1 << 20;
  bool gzip_output = false;
  std::uint64_t validation_subset_size = 15000;
  std::uint64_t seed = 0;
};

struct ShardStats {
  std::string path;
  bool gzip = false;
  std::uint64_t documents_in = 0;
  std::uint64_t documents_out = 0;
  std::uint64_t sentences_in = 0;
  std::uint64_t sentences_kept = 0;
  std::uint64_t sentences_out = 0;
  std::uint64_t bytes_in = 0;   // text bytes of parsed records
  std::uint64_t bytes_out = 0;  // text bytes of emitted records
  std::uint64_t words_out = 0;
  std::uint64_t malformed_lines = 0;
  RejectionReport rejections;
};

struct CorpusStats {
  std::uint64_t documents_in = 0;
  std::uint64_t documents_out = 0;
  std::uint64_t sentences_in = 0;
  std::uint64_t sentences_kept = 0;
  std::uint64_t sentences_out = 0;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  std::uint64_t words_out = 0;
  std::uint64_t malformed_lines = 0;
  RejectionReport rejections;
  std::vector<ShardStats> shards;
  std::uint64_t dedup_claimed_keys = 0;
  std::uint64_t dedup_claimed_bytes = 0;
  // Volatile run info, excluded from determinism comparisons.
  double wall_time_ms = 0.0;
  std::uint64_t peak_rss_bytes = 0;
  int workers = 1;
  bool resumed = false;

  // Deterministic part only ("corpus" object).
  std::string corpus_json() const;
  // Full document: {"run": {...}, "corpus": {...}}.
  std::string to_json() const;
};

// Runs the pipeline: for every manifest shard, open -> segment -> filter ->
// recompose -> judge -> (global dedup) -> write. Emits per-shard cleaned
// files (shard_00000.jsonl...), stats.json and rejection_report.json in
// out_dir. A partial-state marker (.corpusforge_partial) exists while a run
// is incomplete; rerunning with the same configuration resumes and produces
// output identical to an uninterrupted run.
CorpusStats run_pipeline(const PipelineConfig& config);

// Phase 1 only, for the given shard subset — produces the per-shard
// intermediate state a resumed run picks up. Exposed so crash-restart is
// testable without killing a process.
void run_pipeline_phase1_only(const PipelineConfig& config,
                              const std::vector<std::size_t>& shard_indices);

// Whitespace-token count over every document of a cleaned manifest.
std::uint64_t count_corpus_words(const std::filesystem::path& manifest);

struct ValidationSubset {
  // Selected (shard index, record index) pairs in global order.
  std::vector<std::pair<std::size_t, std::size_t>> ids;
  std::uint64_t corpus_size = 0;
};

// Seeded reservoir sample of `size` documents over global (shard, record)
// order; writes them (in global order) as JSON lines to `out_file` and
// returns the selected ids. Throws CorpusTooSmall when the corpus has fewer
// than `size` documents.
ValidationSubset select_validation_subset(const std::filesystem::path& manifest,
                                          std::uint64_t size,
                                          std::uint64_t seed,
                                          const std::filesystem::path& out_file);

// Current process peak RSS in bytes (Linux VmHWM).
std::uint64_t peak_rss_bytes();

}  // namespace corpusforge

#endif  // CORPUSFORGE_PIPELINE_H_
