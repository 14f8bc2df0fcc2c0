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

#include "corpusforge/corpus_io.h"

#include <zlib.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace corpusforge {

namespace {

constexpr std::size_t kIoChunk = 256 * 1024;

bool file_starts_with_gzip_magic(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  return probe.gcount() == 2 && magic[0] == 0x1F && magic[1] == 0x8B;
}

}  // namespace

// gzFile reads plain files transparently, so one code path serves both; the
// magic probe is only for reporting which format was seen.
struct ShardReader::Impl {
  gzFile file = nullptr;
  std::vector<char> chunk = std::vector<char>(kIoChunk);
  std::size_t chunk_len = 0;
  std::size_t chunk_pos = 0;
  std::string carry;       // partial line across chunk boundaries
  bool carry_overflow = false;
  bool eof = false;

  ~Impl() {
    if (file != nullptr) gzclose(file);
  }
};

ShardReader::ShardReader(const ShardRef& shard, ReaderOptions options)
    : impl_(std::make_unique<Impl>()), options_(options) {
  if (!std::filesystem::exists(shard.path)) {
    throw IoError("shard not found: " + shard.path.string());
  }
  was_gzip_ = file_starts_with_gzip_magic(shard.path);
  impl_->file = gzopen(shard.path.string().c_str(), "rb");
  if (impl_->file == nullptr) {
    throw IoError("cannot open shard: " + shard.path.string());
  }
  gzbuffer(impl_->file, kIoChunk);
}

ShardReader::~ShardReader() = default;

// Returns the next '\n'-terminated line (terminator stripped; a final
// unterminated line is also returned). Lines beyond max_record_bytes are
// consumed without buffering and flagged via carry_overflow.
bool ShardReader::next_line(std::string& line) {
  Impl& s = *impl_;
  line.clear();
  bool overflow = false;
  std::swap(line, s.carry);
  std::swap(overflow, s.carry_overflow);
  while (true) {
    if (s.chunk_pos >= s.chunk_len) {
      if (s.eof) break;
      int n = gzread(s.file, s.chunk.data(), static_cast<unsigned>(s.chunk.size()));
      if (n < 0) {
        int errnum = 0;
        const char* msg = gzerror(s.file, &errnum);
        throw IoError(std::string("read error: ") + (msg ? msg : "gzread failed"));
      }
      s.chunk_len = static_cast<std::size_t>(n);
      s.chunk_pos = 0;
      if (n == 0) {
        s.eof = true;
        break;
      }
    }
    const char* base = s.chunk.data() + s.chunk_pos;
    std::size_t avail = s.chunk_len - s.chunk_pos;
    const char* nl = static_cast<const char*>(memchr(base, '\n', avail));
    std::size_t take = (nl != nullptr) ? static_cast<std::size_t>(nl - base) : avail;
    if (!overflow) {
      if (line.size() + take > options_.max_record_bytes) {
        overflow = true;
        line.clear();
      } else {
        line.append(base, take);
      }
    }
    s.chunk_pos += take + (nl != nullptr ? 1 : 0);
    if (nl != nullptr) {
      ++line_number_;
      if (overflow) {
        line.clear();
        throw ParseError(line_number_, "record exceeds max_record_bytes");
      }
      return true;
    }
  }
  // EOF: emit a trailing unterminated line if any.
  if (overflow) {
    ++line_number_;
    throw ParseError(line_number_, "record exceeds max_record_bytes");
  }
  if (!line.empty()) {
    ++line_number_;
    return true;
  }
  return false;
}

bool ShardReader::next(RawDocument& doc, std::size_t& record_index) {
  std::string line;
  while (true) {
    try {
      if (!next_line(line)) return false;
      if (line.empty()) continue;  // blank lines are not records
      doc = parse_json_line(line, line_number_);
    } catch (const ParseError& e) {
      if (!options_.skip_malformed) throw;
      issues_.push_back({e.line_number(), e.what()});
      continue;
    }
    record_index = records_emitted_++;
    return true;
  }
}

RawDocument parse_json_line(std::string_view line, std::size_t line_number) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError(line_number, "malformed JSON line");
  }
  auto text_it = j.find("text");
  if (text_it == j.end() || !text_it->is_string()) {
    throw ParseError(line_number, "missing or non-string \"text\" field");
  }
  RawDocument doc;
  doc.text = text_it->get<std::string>();
  if (auto it = j.find("url"); it != j.end() && it->is_string()) {
    doc.url = it->get<std::string>();
  }
  if (auto it = j.find("timestamp"); it != j.end() && it->is_string()) {
    doc.timestamp = it->get<std::string>();
  }
  return doc;
}

std::string to_json_line(std::string_view text, std::string_view url,
                         std::string_view timestamp) {
  // Field order is fixed to text/url/timestamp; unknown input fields are
  // never propagated.
  std::string line = "{\"text\":";
  line += nlohmann::json(text).dump();
  line += ",\"url\":";
  line += nlohmann::json(url).dump();
  line += ",\"timestamp\":";
  line += nlohmann::json(timestamp).dump();
  line += "}";
  return line;
}

struct ShardWriter::Impl {
  gzFile gz = nullptr;
  std::FILE* plain = nullptr;
  std::filesystem::path path;

  ~Impl() {
    if (gz != nullptr) gzclose(gz);
    if (plain != nullptr) std::fclose(plain);
  }
};

ShardWriter::ShardWriter(const std::filesystem::path& path, bool gzip)
    : impl_(std::make_unique<Impl>()) {
  impl_->path = path;
  if (gzip) {
    impl_->gz = gzopen(path.string().c_str(), "wb");
    if (impl_->gz == nullptr) throw IoError("cannot open for write: " + path.string());
  } else {
    impl_->plain = std::fopen(path.string().c_str(), "wb");
    if (impl_->plain == nullptr) throw IoError("cannot open for write: " + path.string());
  }
}

ShardWriter::~ShardWriter() = default;

void ShardWriter::write(std::string_view text, std::string_view url,
                        std::string_view timestamp) {
  std::string line = to_json_line(text, url, timestamp);
  line += '\n';
  if (impl_->gz != nullptr) {
    if (gzwrite(impl_->gz, line.data(), static_cast<unsigned>(line.size())) !=
        static_cast<int>(line.size())) {
      throw IoError("write failed: " + impl_->path.string());
    }
  } else {
    if (std::fwrite(line.data(), 1, line.size(), impl_->plain) != line.size()) {
      throw IoError("write failed: " + impl_->path.string());
    }
  }
  ++summary_.records;
  summary_.bytes += line.size();
}

void ShardWriter::write(const RawDocument& doc) {
  write(doc.text, doc.url, doc.timestamp);
}

WriteSummary ShardWriter::close() {
  if (closed_) return summary_;
  closed_ = true;
  if (impl_->gz != nullptr) {
    int rc = gzclose(impl_->gz);
    impl_->gz = nullptr;
    if (rc != Z_OK) throw IoError("close failed: " + impl_->path.string());
  } else {
    int rc = std::fclose(impl_->plain);
    impl_->plain = nullptr;
    if (rc != 0) throw IoError("close failed: " + impl_->path.string());
  }
  return summary_;
}

std::vector<ShardRef> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + manifest.string());
  std::vector<ShardRef> shards;
  std::string line;
  auto base = manifest.parent_path();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    std::filesystem::path p = line.substr(b, e - b + 1);
    if (p.is_relative()) p = base / p;
    shards.push_back({p, shards.size()});
  }
  return shards;
}

}  // namespace corpusforge
