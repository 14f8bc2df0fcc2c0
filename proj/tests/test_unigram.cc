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

#include "corpusforge/unigram.h"

#include <doctest.h>

#include <cmath>
#include <set>

#include "corpusforge/error.h"
#include "corpusforge/rng.h"
#include "fixtures.h"
#include "paths.h"

using namespace corpusforge;

namespace {

std::set<std::string> piece_set(const std::vector<VocabPiece>& v) {
  std::set<std::string> out;
  for (const auto& p : v) out.insert(p.piece);
  return out;
}

double logprob_of(const std::vector<VocabPiece>& v, const std::string& piece) {
  for (const auto& p : v) {
    if (p.piece == piece) return p.logprob;
  }
  FAIL("piece not found: ", piece);
  return 0.0;
}

// Exhaustive best segmentation score by recursive enumeration; independent
// of the lattice implementation.
double brute_force_best(const UnigramVocab& vocab, const std::string& text) {
  if (text.empty()) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t len = 1; len <= text.size(); ++len) {
    int id = vocab.find(text.substr(0, len));
    if (id < 0 || vocab.is_reserved(id) || vocab.is_byte(id)) continue;
    double rest = brute_force_best(vocab, text.substr(len));
    best = std::max(best, vocab.piece(id).logprob + rest);
  }
  return best;
}

}  // namespace

TEST_CASE("tok_normalize marks word starts and collapses whitespace") {
  CHECK(tok_normalize("") == "");
  CHECK(tok_normalize("ab") == "▁ab");
  CHECK(tok_normalize("ab cd") == "▁ab▁cd");
  CHECK(tok_normalize("  ab \t cd\n") == "▁ab▁cd");
  CHECK(tok_denormalize("▁ab▁cd") == "ab cd");
  CHECK(tok_denormalize(tok_normalize("ciao  mondo ")) == "ciao mondo");
}

TEST_CASE("seed_vocab enumerates substrings") {
  SUBCASE("abab includes every substring up to full length") {
    auto seeds = seed_vocab({"abab"}, 1000);
    auto set = piece_set(seeds);
    for (const char* expected :
         {"a", "b", "ab", "ba", "aba", "bab", "abab"}) {
      CAPTURE(expected);
      CHECK(set.count(expected) == 1);
    }
    // Initial logprobs are normalized frequencies: probabilities sum to 1.
    double sum = 0.0;
    for (const auto& p : seeds) sum += std::exp(p.logprob);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("single-char corpus") {
    auto seeds = seed_vocab({"aaaa"}, 1000);
    CHECK(piece_set(seeds) == std::set<std::string>{"a", "aa", "aaa", "aaaa"});
  }

  SUBCASE("empty sample raises EmptyCorpus") {
    CHECK_THROWS_AS(seed_vocab({}, 10), Error);
    CHECK_THROWS_AS(seed_vocab({""}, 10), Error);
  }

  SUBCASE("seed_size truncates multi-char candidates, chars always survive") {
    auto seeds = seed_vocab({"abcabcabc"}, 2);
    auto set = piece_set(seeds);
    CHECK(set.count("a") == 1);
    CHECK(set.count("b") == 1);
    CHECK(set.count("c") == 1);
    std::size_t multi = 0;
    for (const auto& p : seeds) {
      if (p.piece.size() > 1) ++multi;
    }
    CHECK(multi == 2);
  }

  SUBCASE("whitespace mark allowed only word-initially") {
    auto seeds = seed_vocab({tok_normalize("ab ab")}, 1000);
    for (const auto& p : seeds) {
      auto pos = p.piece.find("▁");
      if (pos != std::string::npos && p.piece.size() > 3) {
        CHECK(pos == 0);
        CHECK(p.piece.find("▁", 3) == std::string::npos);
      }
    }
  }
}

TEST_CASE("em_step: hand-computable single-path lattice") {
  std::vector<VocabPiece> vocab = {{"a", std::log(0.5)}, {"b", std::log(0.5)}};
  double loglik = em_step(vocab, {"ab"});
  CHECK(loglik == doctest::Approx(2 * std::log(0.5)).epsilon(1e-12));
  CHECK(logprob_of(vocab, "a") == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(logprob_of(vocab, "b") == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("em_step errors") {
  std::vector<VocabPiece> vocab = {{"a", std::log(1.0)}};
  CHECK_THROWS_AS(em_step(vocab, {}), Error);
  CHECK_THROWS_AS(em_step(vocab, {""}), Error);
  try {
    em_step(vocab, {"ax"});
    FAIL("expected CoverageError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCoverageError);
  }
}

TEST_CASE("EM log-likelihood is non-decreasing over 20 iterations") {
  std::vector<std::string> corpus = {"abab", "aab", "abba", "baba", "aabb",
                                     "ab",   "ba",  "abab", "bbaa"};
  auto vocab = seed_vocab(corpus, 50);
  double prev = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < 20; ++it) {
    double loglik = em_step(vocab, corpus);
    CHECK(loglik >= prev - 1e-9);
    prev = loglik;
  }
}

TEST_CASE("em_step with threads matches the sequential reduction") {
  std::vector<std::string> corpus;
  for (int i = 0; i < 64; ++i) corpus.push_back(i % 2 ? "abab" : "bbaa");
  auto v1 = seed_vocab(corpus, 50);
  auto v2 = v1;
  double l1 = em_step(v1, corpus, 1);
  double l2 = em_step(v2, corpus, 4);
  CHECK(l1 == doctest::Approx(l2).epsilon(1e-12));
  for (std::size_t i = 0; i < v1.size(); ++i) {
    CHECK(v1[i].logprob == doctest::Approx(v2[i].logprob).epsilon(1e-9));
  }
}

TEST_CASE("prune_vocab") {
  SUBCASE("at or below target: unchanged") {
    std::vector<VocabPiece> vocab = {{"a", -1.0}, {"b", -1.0}, {"ab", -2.0}};
    auto pruned = prune_vocab(vocab, {"abab"}, 0.75, 3);
    CHECK(pruned.size() == 3);
  }

  SUBCASE("piece outside every Viterbi path is pruned first") {
    // log(0.01) = -4.6 loses to x+y = -3.2, so no best path uses "xy";
    // log(0.15) = -1.9 beats a+b, so "ab" is used and has positive loss.
    std::vector<VocabPiece> vocab = {
        {"a", std::log(0.2)},   {"b", std::log(0.2)}, {"x", std::log(0.2)},
        {"y", std::log(0.2)},   {"ab", std::log(0.15)},
        {"xy", std::log(0.01)},
    };
    std::vector<std::string> corpus = {"abxy", "abab", "xyxy"};
    auto pruned = prune_vocab(vocab, corpus, 0.5, 5);
    auto set = piece_set(pruned);
    CHECK(set.count("xy") == 0);
    CHECK(set.count("ab") == 1);
    CHECK(set.count("x") == 1);  // single chars protected
  }

  SUBCASE("all-single-char vocab unchanged regardless of target") {
    std::vector<VocabPiece> vocab = {{"a", -0.7}, {"b", -0.7}};
    auto pruned = prune_vocab(vocab, {"ab"}, 0.5, 1);
    CHECK(pruned.size() == 2);
  }
}

TEST_CASE("encode picks the maximum-score segmentation") {
  // Toy vocab from the lattice example: two paths for "ab".
  std::vector<VocabPiece> learned = {
      {"▁a", -1.0}, {"b", -1.0}, {"▁ab", -0.5}};
  auto vocab = UnigramVocab::assemble(learned, /*byte_fallback=*/false);
  auto seg = vocab.encode("ab");
  REQUIRE(seg.piece_ids.size() == 1);
  CHECK(vocab.piece(seg.piece_ids[0]).piece == "▁ab");
  CHECK(seg.score == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("encode of empty string is empty") {
  auto vocab = UnigramVocab::assemble({{"▁a", -1.0}}, true);
  auto seg = vocab.encode("");
  CHECK(seg.piece_ids.empty());
  CHECK(seg.score == 0.0);
  CHECK(vocab.decode(seg.piece_ids) == "");
}

TEST_CASE("reserved ids come first and byte fallback covers unknowns") {
  std::vector<VocabPiece> learned = {{"▁a", -0.5}, {"a", -1.5}};
  auto vocab = UnigramVocab::assemble(learned, true);
  CHECK(vocab.piece(kPadId).piece == "<pad>");
  CHECK(vocab.piece(kEosId).piece == "</s>");
  CHECK(vocab.piece(kUnkId).piece == "<unk>");
  CHECK(vocab.piece(kFirstSentinelId).piece == "<extra_id_0>");
  CHECK(vocab.piece(kFirstSentinelId + 99).piece == "<extra_id_99>");
  CHECK(vocab.piece(kNumReservedIds).piece == "<0x00>");
  CHECK(vocab.size() == kNumReservedIds + 256 + 2);

  // 'z' is unknown: encoded through byte pieces, decoded back exactly.
  auto seg = vocab.encode("az");
  CHECK(vocab.decode(seg.piece_ids) == "az");
  bool used_byte = false;
  for (int id : seg.piece_ids) used_byte |= vocab.is_byte(id);
  CHECK(used_byte);

  // Multibyte unknown character round-trips through its UTF-8 bytes.
  auto seg2 = vocab.encode("aè");
  CHECK(vocab.decode(seg2.piece_ids) == "aè");
}

TEST_CASE("CoverageError without byte fallback") {
  auto vocab = UnigramVocab::assemble({{"▁a", -0.5}}, false);
  try {
    vocab.encode("az");
    FAIL("expected CoverageError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCoverageError);
  }
}

TEST_CASE("viterbi equals brute force on small strings") {
  std::vector<VocabPiece> learned = {
      {"a", std::log(0.20)},   {"b", std::log(0.10)},
      {"aa", std::log(0.08)},  {"ab", std::log(0.12)},
      {"ba", std::log(0.05)},  {"bb", std::log(0.06)},
      {"aab", std::log(0.07)}, {"aba", std::log(0.04)},
      {"abb", std::log(0.03)}, {"bab", std::log(0.05)},
      {"baa", std::log(0.02)}, {"bba", std::log(0.05)},
      {"abab", std::log(0.06)}, {"bbbb", std::log(0.02)},
      {"aabb", std::log(0.05)},
  };
  auto vocab = UnigramVocab::assemble(learned, false);

  // All strings over {a, b} of length 1..9.
  for (int len = 1; len <= 9; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::string s;
      for (int k = 0; k < len; ++k) s += (bits >> k) & 1 ? 'b' : 'a';
      auto seg = vocab.viterbi(s);
      double brute = brute_force_best(vocab, s);
      CHECK(seg.score == doctest::Approx(brute).epsilon(1e-9));
      std::string joined;
      for (int id : seg.piece_ids) joined += vocab.piece(id).piece;
      CHECK(joined == s);
    }
  }
}

TEST_CASE("decode(encode(t)) equals normalized t") {
  auto lines = testsup::tokenizer_training_lines(40'000);
  TrainerConfig cfg;
  cfg.target_size = kNumReservedIds + 256 + 80;
  cfg.threads = 2;
  auto vocab = train_unigram(lines, cfg);

  for (std::size_t i = 0; i < lines.size(); i += 7) {
    auto seg = vocab.encode(lines[i]);
    CHECK(vocab.decode(seg.piece_ids) == tok_denormalize(tok_normalize(lines[i])));
  }
  // Characters never seen in training still round-trip via bytes.
  CHECK(vocab.decode(vocab.encode("qualcosa di 中文 και ελληνικά").piece_ids) ==
        "qualcosa di 中文 και ελληνικά");
}

TEST_CASE("trained vocab hits the target size exactly and normalizes") {
  auto lines = testsup::tokenizer_training_lines(60'000);
  TrainerConfig cfg;
  cfg.target_size = kNumReservedIds + 256 + 100;
  cfg.threads = 2;
  auto vocab = train_unigram(lines, cfg);
  CHECK(vocab.size() == static_cast<std::size_t>(cfg.target_size));

  double sum = 0.0;
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    sum += std::exp(vocab.piece(id).logprob);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("vocab save/load round trip") {
  auto dir = testsup::fresh_dir("unigram_io");
  auto lines = testsup::tokenizer_training_lines(20'000);
  TrainerConfig cfg;
  cfg.target_size = kNumReservedIds + 256 + 64;
  auto vocab = train_unigram(lines, cfg);
  vocab.save(dir / "vocab.jsonl");
  auto loaded = UnigramVocab::load(dir / "vocab.jsonl");
  REQUIRE(loaded.size() == vocab.size());
  CHECK(loaded.byte_fallback());
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    CHECK(loaded.piece(id).piece == vocab.piece(id).piece);
    CHECK(loaded.piece(id).logprob == vocab.piece(id).logprob);
  }
  // Same segmentation behavior after reload.
  auto a = vocab.encode("il mercato del paese offre prodotti freschi");
  auto b = loaded.encode("il mercato del paese offre prodotti freschi");
  CHECK(a.piece_ids == b.piece_ids);
}
