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

#include "corpusforge/pipeline.h"

#include <sys/resource.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "corpusforge/resources.h"
#include "corpusforge/rng.h"
#include "corpusforge/sentence_filters.h"
#include "corpusforge/unicode.h"

namespace corpusforge {

namespace {

constexpr const char* kPartialMarker = ".corpusforge_partial";
constexpr const char* kTmpDirName = ".tmp";

struct LoadedResources {
  Segmenter segmenter;
  BadWordsIndex badwords;
  BoilerplatePatterns boilerplate;
  LangDetector detector;
};

std::filesystem::path pick(const std::filesystem::path& explicit_file,
                           const std::filesystem::path& fallback) {
  return explicit_file.empty() ? fallback : explicit_file;
}

void require_exists(const std::filesystem::path& p, const char* what) {
  if (!std::filesystem::exists(p)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
}

struct ResourcePaths {
  std::filesystem::path abbreviations;
  std::filesystem::path badwords;
  std::filesystem::path boilerplate;
  std::filesystem::path profiles;
};

ResourcePaths resolve_resources(const PipelineConfig& cfg) {
  auto dir = resource_dir(cfg.resources);
  ResourcePaths p;
  p.abbreviations = pick(cfg.abbreviations_file, dir / "abbreviations_it.txt");
  p.badwords = pick(cfg.badwords_file, dir / "badwords.txt");
  p.boilerplate = pick(cfg.boilerplate_file, dir / "boilerplate.txt");
  p.profiles = pick(cfg.profiles_dir, dir / "langid");
  require_exists(p.abbreviations, "abbreviation list");
  require_exists(p.badwords, "badwords list");
  require_exists(p.boilerplate, "boilerplate list");
  require_exists(p.profiles, "language profile directory");
  return p;
}

LoadedResources load_resources(const ResourcePaths& paths) {
  return LoadedResources{
      Segmenter(load_line_list(paths.abbreviations)),
      BadWordsIndex::from_file(paths.badwords),
      BoilerplatePatterns::from_file(paths.boilerplate),
      LangDetector::from_dir(paths.profiles),
  };
}

std::string file_stamp(const std::filesystem::path& p) {
  std::error_code ec;
  auto size = std::filesystem::file_size(p, ec);
  if (ec) return p.string() + "|?";
  auto mtime = std::filesystem::last_write_time(p, ec).time_since_epoch().count();
  return p.string() + "|" + std::to_string(size) + "|" + std::to_string(mtime);
}

// Identifies a run for resumption: configuration knobs plus the identity of
// every input the output depends on.
std::string run_fingerprint(const PipelineConfig& cfg,
                            const ResourcePaths& paths,
                            const std::vector<ShardRef>& shards) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", cfg.lang_threshold);
  std::string s;
  s += "lang=" + cfg.required_lang + ";thr=" + buf;
  s += ";dedup=" + std::to_string(static_cast<int>(cfg.dedup));
  s += ";skip=" + std::to_string(cfg.skip_malformed);
  s += ";maxrec=" + std::to_string(cfg.max_record_bytes);
  s += ";gz=" + std::to_string(cfg.gzip_output);
  s += ";abbr=" + file_stamp(paths.abbreviations);
  s += ";bw=" + file_stamp(paths.badwords);
  s += ";bp=" + file_stamp(paths.boilerplate);
  for (const auto& sh : shards) s += ";shard=" + file_stamp(sh.path);
  return murmur3_x64_128(s).to_hex();
}

std::string shard_out_name(std::size_t index, bool gzip) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shard_%05zu.jsonl", index);
  return gzip ? std::string(buf) + ".gz" : std::string(buf);
}

std::string cand_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "cand_%05zu.jsonl", index);
  return buf;
}

std::string sidecar_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shard_%05zu.done", index);
  return buf;
}

nlohmann::ordered_json rejections_to_json(const RejectionReport& r) {
  nlohmann::ordered_json s;
  for (int i = 0; i < kNumSentenceReasons; ++i) {
    s[std::string(to_string(static_cast<SentenceReason>(i)))] =
        r.sentence_reasons[i];
  }
  nlohmann::ordered_json d;
  for (int i = 0; i < kNumDocReasons; ++i) {
    d[std::string(to_string(static_cast<DocReason>(i)))] = r.doc_reasons[i];
  }
  nlohmann::ordered_json j;
  j["sentence_rejections"] = std::move(s);
  j["document_rejections"] = std::move(d);
  return j;
}

void rejections_from_json(const nlohmann::json& j, RejectionReport& r) {
  for (int i = 0; i < kNumSentenceReasons; ++i) {
    r.sentence_reasons[i] = j.at("sentence_rejections")
                                .at(std::string(to_string(static_cast<SentenceReason>(i))))
                                .get<std::uint64_t>();
  }
  for (int i = 0; i < kNumDocReasons; ++i) {
    r.doc_reasons[i] = j.at("document_rejections")
                           .at(std::string(to_string(static_cast<DocReason>(i))))
                           .get<std::uint64_t>();
  }
}

nlohmann::ordered_json shard_stats_to_json(const ShardStats& s) {
  nlohmann::ordered_json j;
  j["path"] = s.path;
  j["gzip"] = s.gzip;
  j["documents_in"] = s.documents_in;
  j["documents_out"] = s.documents_out;
  j["sentences_in"] = s.sentences_in;
  j["sentences_kept"] = s.sentences_kept;
  j["sentences_out"] = s.sentences_out;
  j["bytes_in"] = s.bytes_in;
  j["bytes_out"] = s.bytes_out;
  j["words_out"] = s.words_out;
  j["malformed_lines"] = s.malformed_lines;
  j.update(rejections_to_json(s.rejections));
  return j;
}

ShardStats shard_stats_from_json(const nlohmann::json& j) {
  ShardStats s;
  s.path = j.at("path").get<std::string>();
  s.gzip = j.at("gzip").get<bool>();
  s.documents_in = j.at("documents_in").get<std::uint64_t>();
  s.documents_out = j.at("documents_out").get<std::uint64_t>();
  s.sentences_in = j.at("sentences_in").get<std::uint64_t>();
  s.sentences_kept = j.at("sentences_kept").get<std::uint64_t>();
  s.sentences_out = j.at("sentences_out").get<std::uint64_t>();
  s.bytes_in = j.at("bytes_in").get<std::uint64_t>();
  s.bytes_out = j.at("bytes_out").get<std::uint64_t>();
  s.words_out = j.at("words_out").get<std::uint64_t>();
  s.malformed_lines = j.at("malformed_lines").get<std::uint64_t>();
  rejections_from_json(j, s.rejections);
  return s;
}

struct PipelineState {
  PipelineConfig cfg;
  ResourcePaths paths;
  std::vector<ShardRef> shards;
  std::string fingerprint;
  std::filesystem::path tmp_dir;
};

// Phase 1 for one shard: read, segment, filter, recompose, judge. With
// dedup on the survivors land in a candidate temp file carrying their span
// keys; without dedup they go straight to the final shard. A sidecar records
// stats and the run fingerprint for resumption.
ShardStats phase1_shard(const PipelineState& st, const LoadedResources& res,
                        std::size_t index) {
  const PipelineConfig& cfg = st.cfg;
  const ShardRef& shard = st.shards[index];
  const bool dedup = cfg.dedup == PipelineConfig::DedupMode::kDoc;

  ShardStats stats;
  stats.path = shard.path.string();

  ReaderOptions ropts;
  ropts.max_record_bytes = cfg.max_record_bytes;
  ropts.skip_malformed = cfg.skip_malformed;
  ShardReader reader(shard, ropts);
  stats.gzip = reader.was_gzip();

  DocumentRuleLimits limits;
  limits.required_lang = cfg.required_lang;
  limits.lang_threshold = cfg.lang_threshold;

  std::filesystem::path cand_path = st.tmp_dir / cand_name(index);
  std::filesystem::path final_path =
      cfg.out_dir / shard_out_name(index, cfg.gzip_output);

  std::ofstream cand_out;
  std::unique_ptr<ShardWriter> writer;
  if (dedup) {
    cand_out.open(cand_path, std::ios::binary | std::ios::trunc);
    if (!cand_out) throw IoError("cannot write " + cand_path.string());
  } else {
    writer = std::make_unique<ShardWriter>(final_path, cfg.gzip_output);
  }

  RawDocument doc;
  std::size_t record_index = 0;
  while (reader.next(doc, record_index)) {
    ++stats.documents_in;
    stats.bytes_in += doc.text.size();

    auto sentences = res.segmenter.split_sentences(doc.text);
    stats.sentences_in += sentences.size();
    auto [kept, verdicts] =
        filter_sentences(sentences, res.badwords, res.boilerplate);
    stats.sentences_kept += kept.size();
    for (const auto& v : verdicts) {
      if (!v.keep) stats.rejections.count(*v.reason);
    }

    CleanDocument cand = recompose(kept, doc);
    if (auto reason = judge_document(cand, res.detector, limits)) {
      stats.rejections.count(*reason);
      continue;
    }

    auto [wc, unused] = count_words(cand.text);
    (void)unused;
    if (dedup) {
      nlohmann::ordered_json j;
      j["text"] = cand.text;
      j["url"] = cand.url;
      j["timestamp"] = cand.timestamp;
      j["sc"] = cand.sentence_count;
      j["wc"] = wc;
      nlohmann::ordered_json keys = nlohmann::ordered_json::array();
      for (const Hash128& k : span_keys(cand.sentences)) {
        keys.push_back(k.to_hex());
      }
      j["keys"] = std::move(keys);
      cand_out << j.dump() << '\n';
      if (!cand_out) throw IoError("write failed: " + cand_path.string());
    } else {
      writer->write(cand.text, cand.url, cand.timestamp);
      ++stats.documents_out;
      stats.bytes_out += cand.text.size();
      stats.sentences_out += cand.sentence_count;
      stats.words_out += wc;
    }
  }
  stats.malformed_lines = reader.issues().size();

  if (dedup) {
    cand_out.flush();
    if (!cand_out) throw IoError("flush failed: " + cand_path.string());
  } else {
    writer->close();
  }

  nlohmann::ordered_json side;
  side["fingerprint"] = st.fingerprint;
  side["stats"] = shard_stats_to_json(stats);
  std::ofstream sout(st.tmp_dir / sidecar_name(index),
                     std::ios::binary | std::ios::trunc);
  sout << side.dump() << '\n';
  if (!sout) throw IoError("cannot write sidecar for shard " + std::to_string(index));
  return stats;
}

bool try_load_sidecar(const PipelineState& st, std::size_t index,
                      ShardStats& stats) {
  std::filesystem::path side_path = st.tmp_dir / sidecar_name(index);
  if (!std::filesystem::exists(side_path)) return false;
  const bool dedup = st.cfg.dedup == PipelineConfig::DedupMode::kDoc;
  std::filesystem::path data_path =
      dedup ? st.tmp_dir / cand_name(index)
            : st.cfg.out_dir / shard_out_name(index, st.cfg.gzip_output);
  if (!std::filesystem::exists(data_path)) return false;
  std::ifstream in(side_path, std::ios::binary);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) return false;
  if (j.value("fingerprint", "") != st.fingerprint) return false;
  try {
    stats = shard_stats_from_json(j.at("stats"));
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  return true;
}

void parallel_over_shards(std::size_t count, int workers,
                          const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

PipelineState validate_and_prepare(const PipelineConfig& cfg) {
  if (cfg.workers < 1) throw ConfigError("worker count must be >= 1");
  if (cfg.lang_threshold < 0.0 || cfg.lang_threshold > 1.0) {
    throw ConfigError("language threshold must be in [0, 1]");
  }
  require_exists(cfg.manifest, "manifest");

  PipelineState st;
  st.cfg = cfg;
  st.paths = resolve_resources(cfg);
  st.shards = read_manifest(cfg.manifest);
  for (const auto& sh : st.shards) require_exists(sh.path, "input shard");
  std::filesystem::create_directories(cfg.out_dir);
  st.tmp_dir = cfg.out_dir / kTmpDirName;
  st.fingerprint = run_fingerprint(cfg, st.paths, st.shards);
  return st;
}

// Creates or validates the partial marker; returns whether phase-1 state can
// be reused.
bool arm_partial_marker(const PipelineState& st) {
  std::filesystem::path marker = st.cfg.out_dir / kPartialMarker;
  bool resumable = false;
  if (std::filesystem::exists(marker)) {
    std::ifstream in(marker, std::ios::binary);
    std::string prev;
    std::getline(in, prev);
    resumable = (prev == st.fingerprint) && std::filesystem::exists(st.tmp_dir);
  }
  if (!resumable) {
    std::filesystem::remove_all(st.tmp_dir);
    std::ofstream out(marker, std::ios::binary | std::ios::trunc);
    out << st.fingerprint << '\n';
    if (!out) throw IoError("cannot write partial marker: " + marker.string());
  }
  std::filesystem::create_directories(st.tmp_dir);
  return resumable;
}

}  // namespace

std::string CorpusStats::corpus_json() const {
  nlohmann::ordered_json j;
  j["documents_in"] = documents_in;
  j["documents_out"] = documents_out;
  j["sentences_in"] = sentences_in;
  j["sentences_kept"] = sentences_kept;
  j["sentences_out"] = sentences_out;
  j["bytes_in"] = bytes_in;
  j["bytes_out"] = bytes_out;
  j["words_out"] = words_out;
  j["malformed_lines"] = malformed_lines;
  j.update(rejections_to_json(rejections));
  j["dedup"] = {{"claimed_keys", dedup_claimed_keys},
                {"claimed_bytes", dedup_claimed_bytes}};
  nlohmann::ordered_json sh = nlohmann::ordered_json::array();
  for (const auto& s : shards) sh.push_back(shard_stats_to_json(s));
  j["shards"] = std::move(sh);
  return j.dump(1, '\t');
}

std::string CorpusStats::to_json() const {
  nlohmann::ordered_json j;
  j["run"] = {{"wall_time_ms", wall_time_ms},
              {"peak_rss_bytes", peak_rss_bytes},
              {"workers", workers},
              {"resumed", resumed}};
  j["corpus"] = nlohmann::ordered_json::parse(corpus_json());
  return j.dump(1, '\t');
}

std::uint64_t peak_rss_bytes() {
  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;  // Linux: KiB
}

CorpusStats run_pipeline(const PipelineConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  PipelineState st = validate_and_prepare(config);
  LoadedResources res = load_resources(st.paths);
  bool resumable = arm_partial_marker(st);
  const bool dedup = config.dedup == PipelineConfig::DedupMode::kDoc;
  const std::size_t n = st.shards.size();

  CorpusStats stats;
  stats.workers = config.workers;
  stats.shards.resize(n);

  // Phase 1: per-shard cleaning, parallel, no shared state.
  std::atomic<bool> any_resumed{false};
  parallel_over_shards(n, config.workers, [&](std::size_t i) {
    if (resumable && try_load_sidecar(st, i, stats.shards[i])) {
      any_resumed.store(true);
      return;
    }
    stats.shards[i] = phase1_shard(st, res, i);
  });
  stats.resumed = any_resumed.load();

  if (dedup) {
    // Phase 2: first-claim resolution in global (shard, record) order,
    // single-threaded against one claimed-set.
    SpanDeduper deduper;
    std::vector<std::vector<bool>> duplicate(n);
    std::vector<Hash128> keys;
    for (std::size_t i = 0; i < n; ++i) {
      std::ifstream in(st.tmp_dir / cand_name(i), std::ios::binary);
      if (!in) throw IoError("missing candidate file for shard " + std::to_string(i));
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        keys.clear();
        for (const auto& k : j.at("keys")) {
          keys.push_back(Hash128::from_hex(k.get<std::string>()));
        }
        duplicate[i].push_back(deduper.check_and_claim(keys));
      }
    }
    stats.dedup_claimed_keys = deduper.claimed_count();
    stats.dedup_claimed_bytes = deduper.approx_bytes();

    // Phase 3: filter each shard against the immutable verdicts, parallel.
    parallel_over_shards(n, config.workers, [&](std::size_t i) {
      ShardStats& s = stats.shards[i];
      s.documents_out = 0;
      s.bytes_out = 0;
      s.sentences_out = 0;
      s.words_out = 0;
      s.rejections.doc_reasons[static_cast<int>(DocReason::kDuplicate)] = 0;
      std::ifstream in(st.tmp_dir / cand_name(i), std::ios::binary);
      if (!in) throw IoError("missing candidate file for shard " + std::to_string(i));
      ShardWriter writer(config.out_dir / shard_out_name(i, config.gzip_output),
                         config.gzip_output);
      std::string line;
      std::size_t row = 0;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        bool dup = duplicate[i][row++];
        if (dup) {
          s.rejections.count(DocReason::kDuplicate);
          continue;
        }
        nlohmann::json j = nlohmann::json::parse(line);
        std::string text = j.at("text").get<std::string>();
        writer.write(text, j.at("url").get<std::string>(),
                     j.at("timestamp").get<std::string>());
        ++s.documents_out;
        s.bytes_out += text.size();
        s.sentences_out += j.at("sc").get<std::uint64_t>();
        s.words_out += j.at("wc").get<std::uint64_t>();
      }
      writer.close();
    });
  }

  for (const auto& s : stats.shards) {
    stats.documents_in += s.documents_in;
    stats.documents_out += s.documents_out;
    stats.sentences_in += s.sentences_in;
    stats.sentences_kept += s.sentences_kept;
    stats.sentences_out += s.sentences_out;
    stats.bytes_in += s.bytes_in;
    stats.bytes_out += s.bytes_out;
    stats.words_out += s.words_out;
    stats.malformed_lines += s.malformed_lines;
    stats.rejections.merge(s.rejections);
  }

  stats.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  stats.peak_rss_bytes = corpusforge::peak_rss_bytes();

  {
    std::ofstream out(config.out_dir / "stats.json",
                      std::ios::binary | std::ios::trunc);
    out << stats.to_json() << '\n';
    if (!out) throw IoError("cannot write stats.json");
  }
  {
    nlohmann::ordered_json rep;
    rep["totals"] = rejections_to_json(stats.rejections);
    nlohmann::ordered_json per_shard = nlohmann::ordered_json::array();
    for (const auto& s : stats.shards) {
      nlohmann::ordered_json e;
      e["path"] = s.path;
      e.update(rejections_to_json(s.rejections));
      per_shard.push_back(std::move(e));
    }
    rep["per_shard"] = std::move(per_shard);
    std::ofstream out(config.out_dir / "rejection_report.json",
                      std::ios::binary | std::ios::trunc);
    out << rep.dump(1, '\t') << '\n';
    if (!out) throw IoError("cannot write rejection_report.json");
  }

  std::filesystem::remove_all(st.tmp_dir);
  std::filesystem::remove(config.out_dir / kPartialMarker);
  return stats;
}

void run_pipeline_phase1_only(const PipelineConfig& config,
                              const std::vector<std::size_t>& shard_indices) {
  PipelineState st = validate_and_prepare(config);
  LoadedResources res = load_resources(st.paths);
  bool resumable = arm_partial_marker(st);
  for (std::size_t i : shard_indices) {
    ShardStats ignored;
    if (resumable && try_load_sidecar(st, i, ignored)) continue;
    phase1_shard(st, res, i);
  }
}

std::uint64_t count_corpus_words(const std::filesystem::path& manifest) {
  std::uint64_t total = 0;
  for (const auto& shard : read_manifest(manifest)) {
    ShardReader reader(shard);
    RawDocument doc;
    std::size_t idx = 0;
    while (reader.next(doc, idx)) {
      total += count_words(doc.text).first;
    }
  }
  return total;
}

ValidationSubset select_validation_subset(
    const std::filesystem::path& manifest, std::uint64_t size,
    std::uint64_t seed, const std::filesystem::path& out_file) {
  auto shards = read_manifest(manifest);

  // Algorithm R over the global record stream; only ids are kept so memory
  // stays proportional to the subset.
  std::vector<std::pair<std::size_t, std::size_t>> reservoir;
  reservoir.reserve(size);
  SplitMix64 rng(seed);
  std::uint64_t global = 0;
  for (const auto& shard : shards) {
    ShardReader reader(shard);
    RawDocument doc;
    std::size_t rec = 0;
    while (reader.next(doc, rec)) {
      if (global < size) {
        reservoir.emplace_back(shard.index, rec);
      } else {
        std::uint64_t j = rng.next_below(global + 1);
        if (j < size) reservoir[j] = {shard.index, rec};
      }
      ++global;
    }
  }
  if (global < size) {
    throw Error(ErrorCode::kCorpusTooSmall,
                "corpus has " + std::to_string(global) +
                    " documents, need " + std::to_string(size));
  }
  std::sort(reservoir.begin(), reservoir.end());

  // Second pass: copy the selected records in global order.
  ShardWriter writer(out_file, /*gzip=*/false);
  std::size_t cursor = 0;
  for (const auto& shard : shards) {
    if (cursor >= reservoir.size()) break;
    if (reservoir[cursor].first != shard.index) continue;
    ShardReader reader(shard);
    RawDocument doc;
    std::size_t rec = 0;
    while (cursor < reservoir.size() && reservoir[cursor].first == shard.index &&
           reader.next(doc, rec)) {
      if (rec == reservoir[cursor].second) {
        writer.write(doc);
        ++cursor;
      }
    }
  }
  writer.close();

  ValidationSubset result;
  result.ids = std::move(reservoir);
  result.corpus_size = global;
  return result;
}

}  // namespace corpusforge
