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
// Streaming reader/writer for mC4-style JSON-lines shards, plain or gzip
// (detected by magic bytes). Peak memory is one record plus fixed buffers
// regardless of shard size.

#ifndef CORPUSFORGE_CORPUS_IO_H_
#define CORPUSFORGE_CORPUS_IO_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "corpusforge/error.h"

namespace corpusforge {

// One raw mC4 record. `text` is guaranteed valid UTF-8 by the reader;
// invalid byte sequences are rejected at parse time, never repaired.
struct RawDocument {
  std::string text;
  std::string url;
  std::string timestamp;

  friend bool operator==(const RawDocument&, const RawDocument&) = default;
};

// A shard in the input manifest. `index` is the shard's position in the
// manifest and is unique within a run; global record order is
// (shard index, record index).
struct ShardRef {
  std::filesystem::path path;
  std::size_t index = 0;
};

struct ReaderOptions {
  // Lines longer than this are rejected with ParseError instead of buffered.
  std::size_t max_record_bytes = 1 << 20;
  // Skip malformed lines (recording an issue) instead of throwing.
  bool skip_malformed = true;
};

struct ParseIssue {
  std::size_t line_number = 0;  // 1-based
  std::string message;
};

class ShardReader {
 public:
  explicit ShardReader(const ShardRef& shard, ReaderOptions options = {});
  ~ShardReader();

  ShardReader(const ShardReader&) = delete;
  ShardReader& operator=(const ShardReader&) = delete;

  // Yields the next well-formed record in file order. `record_index` counts
  // emitted records from 0. Returns false at end of stream. In abort mode a
  // malformed line throws ParseError with its 1-based line number.
  bool next(RawDocument& doc, std::size_t& record_index);

  // Malformed lines skipped so far (skip mode only).
  const std::vector<ParseIssue>& issues() const { return issues_; }

  // Whether the underlying file was gzip-compressed.
  bool was_gzip() const { return was_gzip_; }

 private:
  bool next_line(std::string& line);

  struct Impl;
  std::unique_ptr<Impl> impl_;
  ReaderOptions options_;
  std::vector<ParseIssue> issues_;
  std::size_t line_number_ = 0;
  std::size_t records_emitted_ = 0;
  bool was_gzip_ = false;
};

struct WriteSummary {
  std::uint64_t records = 0;
  // Uncompressed logical size: equals file size for plain output.
  std::uint64_t bytes = 0;
};

class ShardWriter {
 public:
  explicit ShardWriter(const std::filesystem::path& path, bool gzip = false);
  ~ShardWriter();

  ShardWriter(const ShardWriter&) = delete;
  ShardWriter& operator=(const ShardWriter&) = delete;

  // Emits one JSON line with exactly the fields text/url/timestamp.
  void write(std::string_view text, std::string_view url,
             std::string_view timestamp);
  void write(const RawDocument& doc);

  // Flushes and closes. Must be called; the destructor only releases.
  WriteSummary close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  WriteSummary summary_;
  bool closed_ = false;
};

// Serializes one record to its JSON-line form (no trailing newline).
std::string to_json_line(std::string_view text, std::string_view url,
                         std::string_view timestamp);

// Parses one JSON line. Throws ParseError (with `line_number`) on malformed
// JSON, invalid UTF-8, or a missing/non-string `text` field. Unknown fields
// are ignored.
RawDocument parse_json_line(std::string_view line, std::size_t line_number);

// Reads a manifest: one shard path per line, `#` comments allowed. Relative
// paths resolve against the manifest's directory.
std::vector<ShardRef> read_manifest(const std::filesystem::path& manifest);

}  // namespace corpusforge

#endif  // CORPUSFORGE_CORPUS_IO_H_
