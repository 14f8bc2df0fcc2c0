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
// corpusforge command line: clean / stats / select-valid / tok / langid /
// corrupt. Exit codes: 0 success, 1 configuration error, 2 data error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corpusforge/corpus_io.h"
#include "corpusforge/error.h"
#include "corpusforge/langid.h"
#include "corpusforge/pipeline.h"
#include "corpusforge/span_corruption.h"
#include "corpusforge/unigram.h"

namespace {

using corpusforge::ConfigError;
using corpusforge::Error;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

std::istream& open_input(std::ifstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cin;
  file.open(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open input: " + path);
  return file;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot open output: " + path);
  return file;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void print_human_summary(const corpusforge::CorpusStats& stats) {
  auto pct = [](std::uint64_t part, std::uint64_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) /
                                   static_cast<double>(whole);
  };
  std::cerr << "documents: " << stats.documents_in << " in, "
            << stats.documents_out << " out ("
            << pct(stats.documents_out, stats.documents_in) << "%)\n"
            << "sentences: " << stats.sentences_in << " in, "
            << stats.sentences_kept << " kept\n"
            << "text bytes: " << stats.bytes_in << " in, " << stats.bytes_out
            << " out (" << pct(stats.bytes_out, stats.bytes_in) << "%)\n"
            << "words out: " << stats.words_out << "\n"
            << "malformed lines: " << stats.malformed_lines << "\n"
            << "wall time: " << stats.wall_time_ms / 1000.0 << " s\n";
}

int cmd_clean(const corpusforge::PipelineConfig& cfg) {
  auto stats = corpusforge::run_pipeline(cfg);
  print_human_summary(stats);
  return kExitOk;
}

int cmd_stats(const std::string& manifest, const std::string& out_path) {
  std::uint64_t docs = 0;
  std::uint64_t words = 0;
  std::uint64_t bytes = 0;
  for (const auto& shard : corpusforge::read_manifest(manifest)) {
    corpusforge::ShardReader reader(shard);
    corpusforge::RawDocument doc;
    std::size_t rec = 0;
    while (reader.next(doc, rec)) {
      ++docs;
      words += corpusforge::count_words(doc.text).first;
      bytes += doc.text.size();
    }
  }
  nlohmann::ordered_json j;
  j["documents"] = docs;
  j["words"] = words;
  j["text_bytes"] = bytes;
  std::ofstream file;
  open_output(file, out_path) << j.dump(1, '\t') << '\n';
  return kExitOk;
}

int cmd_select_valid(const std::string& manifest, const std::string& out,
                     std::uint64_t size, std::uint64_t seed) {
  auto subset = corpusforge::select_validation_subset(manifest, size, seed, out);
  std::cerr << "selected " << subset.ids.size() << " of "
            << subset.corpus_size << " documents\n";
  return kExitOk;
}

int cmd_tok_train(const std::string& input, const std::string& model,
                  const corpusforge::TrainerConfig& trainer) {
  std::ifstream file;
  auto lines = read_lines(open_input(file, input));
  auto vocab = corpusforge::train_unigram(lines, trainer);
  vocab.save(model);
  std::cerr << "trained " << vocab.size() << " pieces -> " << model << "\n";
  return kExitOk;
}

int cmd_tok_encode(const std::string& model, const std::string& input,
                   const std::string& output) {
  auto vocab = corpusforge::UnigramVocab::load(model);
  std::ifstream in_file;
  std::ofstream out_file;
  std::istream& in = open_input(in_file, input);
  std::ostream& out = open_output(out_file, output);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto seg = vocab.encode(line);
    nlohmann::ordered_json j;
    j["ids"] = seg.piece_ids;
    out << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_tok_decode(const std::string& model, const std::string& input,
                   const std::string& output) {
  auto vocab = corpusforge::UnigramVocab::load(model);
  std::ifstream in_file;
  std::ofstream out_file;
  std::istream& in = open_input(in_file, input);
  std::ostream& out = open_output(out_file, output);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("ids")) {
      throw corpusforge::ParseError(line_no, "expected JSONL with an \"ids\" field");
    }
    auto ids = j.at("ids").get<std::vector<int>>();
    out << vocab.decode(ids) << '\n';
  }
  return kExitOk;
}

int cmd_langid_train(const std::string& lang, const std::string& input,
                     const std::string& out) {
  std::ifstream file;
  std::istream& in = open_input(file, input);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto profile = corpusforge::train_profile(lang, buffer.str());
  profile.save(out);
  std::cerr << "trained profile for '" << lang << "' -> " << out << "\n";
  return kExitOk;
}

int cmd_langid_detect(const std::string& profiles_dir, const std::string& text,
                      const std::string& input) {
  auto detector = corpusforge::LangDetector::from_dir(profiles_dir);
  auto emit = [&](const std::string& t) {
    auto r = detector.detect(t);
    nlohmann::ordered_json j;
    j["lang"] = r.lang;
    j["prob"] = r.prob;
    std::cout << j.dump() << '\n';
  };
  if (!text.empty()) {
    emit(text);
    return kExitOk;
  }
  std::ifstream file;
  std::istream& in = open_input(file, input);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    emit(line);
  }
  return kExitOk;
}

int cmd_corrupt(const std::string& input, const std::string& output,
                const corpusforge::CorruptionConfig& cfg) {
  std::ifstream in_file;
  std::ofstream out_file;
  std::istream& in = open_input(in_file, input);
  std::ostream& out = open_output(out_file, output);
  std::string line;
  std::size_t example_index = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("ids")) {
      throw corpusforge::ParseError(line_no, "expected JSONL with an \"ids\" field");
    }
    auto ids = j.at("ids").get<std::vector<int>>();
    corpusforge::CorruptionConfig per = cfg;
    per.seed = cfg.seed ^ static_cast<std::uint64_t>(example_index);
    auto ex = corpusforge::corrupt(ids, per);
    nlohmann::ordered_json o;
    o["input_ids"] = ex.input_ids;
    o["target_ids"] = ex.target_ids;
    out << o.dump() << '\n';
    ++example_index;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpusforge: streaming corpus cleaning and tokenization toolchain"};
  app.require_subcommand(1);

  // --- clean ---
  corpusforge::PipelineConfig clean_cfg;
  std::string clean_manifest;
  std::string clean_out;
  std::string dedup_mode = "doc";
  std::string malformed_policy = "skip";
  auto* clean = app.add_subcommand("clean", "Clean an mC4 manifest into pre-training shards");
  clean->add_option("--manifest", clean_manifest, "Manifest file, one shard path per line")->required();
  clean->add_option("--out", clean_out, "Output directory")->required();
  clean->add_option("--workers", clean_cfg.workers, "Worker threads (shard-level)");
  clean->add_option("--lang-threshold", clean_cfg.lang_threshold, "Language probability threshold");
  clean->add_option("--lang", clean_cfg.required_lang, "Required language code");
  clean->add_option("--dedup", dedup_mode, "doc|off")->check(CLI::IsMember({"doc", "off"}));
  clean->add_option("--resources", clean_cfg.resources, "Resource directory override");
  clean->add_option("--badwords", clean_cfg.badwords_file, "Badwords list override");
  clean->add_option("--boilerplate", clean_cfg.boilerplate_file, "Boilerplate list override");
  clean->add_option("--abbreviations", clean_cfg.abbreviations_file, "Abbreviation list override");
  clean->add_option("--profiles", clean_cfg.profiles_dir, "Language profile directory override");
  clean->add_option("--malformed", malformed_policy, "skip|abort")->check(CLI::IsMember({"skip", "abort"}));
  clean->add_option("--max-record-bytes", clean_cfg.max_record_bytes, "Reject longer records");
  clean->add_flag("--gzip-output", clean_cfg.gzip_output, "gzip the cleaned shards");
  clean->add_option("--seed", clean_cfg.seed, "Global seed");
  clean->add_option("--validation-subset-size", clean_cfg.validation_subset_size,
                    "Default size for select-valid");

  // --- stats ---
  std::string stats_manifest;
  std::string stats_out;
  auto* stats = app.add_subcommand("stats", "Corpus statistics over a manifest");
  stats->add_option("--manifest", stats_manifest, "Manifest file")->required();
  stats->add_option("--out", stats_out, "Output file (default stdout)");

  // --- select-valid ---
  std::string sv_manifest;
  std::string sv_out;
  std::uint64_t sv_size = 15000;
  std::uint64_t sv_seed = 0;
  auto* sv = app.add_subcommand("select-valid", "Fixed validation subset by seeded reservoir sampling");
  sv->add_option("--manifest", sv_manifest, "Cleaned-corpus manifest")->required();
  sv->add_option("--out", sv_out, "Subset output file")->required();
  sv->add_option("--size", sv_size, "Subset size");
  sv->add_option("--seed", sv_seed, "Sampling seed");

  // --- tok ---
  auto* tok = app.add_subcommand("tok", "Unigram subword tokenizer");
  tok->require_subcommand(1);
  std::string tok_input;
  std::string tok_model;
  std::string tok_output;
  corpusforge::TrainerConfig trainer;
  bool no_byte_fallback = false;
  auto* tok_train = tok->add_subcommand("train", "Train a unigram vocabulary");
  tok_train->add_option("--input", tok_input, "Training text, one line per document (default stdin)");
  tok_train->add_option("--model", tok_model, "Output vocab file (JSONL)")->required();
  tok_train->add_option("--vocab-size", trainer.target_size, "Total vocabulary size");
  tok_train->add_option("--seed-multiplier", trainer.seed_multiplier, "Seed candidates per target piece");
  tok_train->add_option("--max-piece-len", trainer.max_piece_len, "Max piece length in characters");
  tok_train->add_option("--max-docs", trainer.max_docs, "Cap on training lines");
  tok_train->add_option("--threads", trainer.threads, "E-step threads");
  tok_train->add_flag("--no-byte-fallback", no_byte_fallback, "Disable byte fallback pieces");

  auto* tok_encode = tok->add_subcommand("encode", "Encode text lines to ids");
  tok_encode->add_option("--model", tok_model, "Vocab file")->required();
  tok_encode->add_option("--input", tok_input, "Input text (default stdin)");
  tok_encode->add_option("--output", tok_output, "Output JSONL (default stdout)");

  auto* tok_decode = tok->add_subcommand("decode", "Decode id JSONL back to text");
  tok_decode->add_option("--model", tok_model, "Vocab file")->required();
  tok_decode->add_option("--input", tok_input, "Input JSONL (default stdin)");
  tok_decode->add_option("--output", tok_output, "Output text (default stdout)");

  // --- langid ---
  auto* langid = app.add_subcommand("langid", "Language identification");
  langid->require_subcommand(1);
  std::string li_lang;
  std::string li_input;
  std::string li_out;
  std::string li_profiles;
  std::string li_text;
  auto* li_train = langid->add_subcommand("train", "Train a language profile");
  li_train->add_option("--lang", li_lang, "ISO 639-1 code")->required();
  li_train->add_option("--input", li_input, "Training corpus (default stdin)");
  li_train->add_option("--out", li_out, "Profile output file")->required();
  auto* li_detect = langid->add_subcommand("detect", "Detect language of text");
  li_detect->add_option("--profiles", li_profiles, "Profile directory")->required();
  li_detect->add_option("--text", li_text, "Text to classify (otherwise reads lines from --input)");
  li_detect->add_option("--input", li_input, "Input text lines (default stdin)");

  // --- corrupt ---
  corpusforge::CorruptionConfig corrupt_cfg;
  std::string co_input;
  std::string co_output;
  auto* co = app.add_subcommand("corrupt", "Span-corruption examples from tokenized JSONL");
  co->add_option("--input", co_input, "Tokenized JSONL with an \"ids\" field (default stdin)");
  co->add_option("--output", co_output, "Output JSONL (default stdout)");
  co->add_option("--rate", corrupt_cfg.corruption_rate, "Corruption rate");
  co->add_option("--mean-span", corrupt_cfg.mean_span_len, "Mean span length");
  co->add_option("--max-len", corrupt_cfg.max_seq_len, "Maximum sequence length");
  co->add_option("--seed", corrupt_cfg.seed, "Base seed (XORed with the example index)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (clean->parsed()) {
      clean_cfg.manifest = clean_manifest;
      clean_cfg.out_dir = clean_out;
      clean_cfg.dedup = dedup_mode == "off" ? corpusforge::PipelineConfig::DedupMode::kOff
                                            : corpusforge::PipelineConfig::DedupMode::kDoc;
      clean_cfg.skip_malformed = malformed_policy == "skip";
      return cmd_clean(clean_cfg);
    }
    if (stats->parsed()) return cmd_stats(stats_manifest, stats_out);
    if (sv->parsed()) return cmd_select_valid(sv_manifest, sv_out, sv_size, sv_seed);
    if (tok->parsed()) {
      if (tok_train->parsed()) {
        trainer.byte_fallback = !no_byte_fallback;
        return cmd_tok_train(tok_input, tok_model, trainer);
      }
      if (tok_encode->parsed()) return cmd_tok_encode(tok_model, tok_input, tok_output);
      if (tok_decode->parsed()) return cmd_tok_decode(tok_model, tok_input, tok_output);
    }
    if (langid->parsed()) {
      if (li_train->parsed()) return cmd_langid_train(li_lang, li_input, li_out);
      if (li_detect->parsed()) return cmd_langid_detect(li_profiles, li_text, li_input);
    }
    if (co->parsed()) return cmd_corrupt(co_input, co_output, corrupt_cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitConfig;
}
