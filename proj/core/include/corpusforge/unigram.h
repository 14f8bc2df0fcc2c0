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
// Unigram language-model subword vocabulary: EM training with iterative
// pruning, Viterbi encode, exact decode. Word starts are marked with the
// meta symbol ▁ so detokenization is lossless.

#ifndef CORPUSFORGE_UNIGRAM_H_
#define CORPUSFORGE_UNIGRAM_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corpusforge {

// Reserved ids. Sentinels follow the T5 layout: sentinel k pairs a masked
// span in the model input with its content in the target.
inline constexpr int kPadId = 0;
inline constexpr int kEosId = 1;
inline constexpr int kUnkId = 2;
inline constexpr int kFirstSentinelId = 3;
inline constexpr int kNumSentinels = 100;
inline constexpr int kNumReservedIds = kFirstSentinelId + kNumSentinels;  // 103

inline constexpr std::string_view kWhitespaceMark = "▁";  // ▁
inline constexpr int kDefaultMaxPieceLen = 8;                  // codepoints

inline bool is_sentinel_id(int id) {
  return id >= kFirstSentinelId && id < kFirstSentinelId + kNumSentinels;
}
inline int sentinel_id(int k) { return kFirstSentinelId + k; }
inline int sentinel_index(int id) { return id - kFirstSentinelId; }

struct VocabPiece {
  std::string piece;
  double logprob = 0.0;
};

struct Segmentation {
  std::vector<int> piece_ids;
  double score = 0.0;
};

// Tokenizer-level text normalization: compatibility folding, whitespace
// collapsing, then ▁ at every word start ("ab cd" -> "▁ab▁cd").
std::string tok_normalize(std::string_view text);
// Inverse of the whitespace marking: ▁ back to spaces, leading space dropped.
std::string tok_denormalize(std::string_view marked);

class UnigramVocab {
 public:
  UnigramVocab() = default;

  // Assembles the full id space: pad/eos/unk, 100 sentinels, the 256 byte
  // pieces when byte_fallback is on, then the learned pieces in the order
  // given. Learned logprobs are expected to sum to 1 in probability.
  static UnigramVocab assemble(const std::vector<VocabPiece>& learned,
                               bool byte_fallback);

  std::size_t size() const { return pieces_.size(); }
  const VocabPiece& piece(int id) const { return pieces_[static_cast<std::size_t>(id)]; }
  int find(std::string_view piece) const;
  bool byte_fallback() const { return byte_fallback_; }
  int byte_id(std::uint8_t b) const;
  bool is_reserved(int id) const { return id < kNumReservedIds; }
  bool is_byte(int id) const {
    return byte_fallback_ && id >= kNumReservedIds && id < kNumReservedIds + 256;
  }

  // Viterbi segmentation of `text` after normalization. Unknown characters
  // fall back to byte pieces; without byte fallback they raise CoverageError.
  Segmentation encode(std::string_view text) const;

  // Viterbi over already-normalized text (no ▁ marking applied). Trainer and
  // tests drive the lattice directly through this.
  Segmentation viterbi(std::string_view normalized) const;

  // Exact inverse: concatenates pieces, folds byte pieces back to raw bytes,
  // drops reserved ids, unmarks ▁. decode(encode(t)) equals the normalized
  // text.
  std::string decode(std::span<const int> ids) const;

  // JSON-lines of (piece, logprob, id).
  void save(const std::filesystem::path& file) const;
  static UnigramVocab load(const std::filesystem::path& file);

 private:
  std::vector<VocabPiece> pieces_;
  std::unordered_map<std::string_view, int> index_;
  bool byte_fallback_ = false;

  void rebuild_index();
};

struct TrainerConfig {
  int target_size = 32000;  // includes reserved and byte ids
  double seed_multiplier = 20.0;
  int max_piece_len = kDefaultMaxPieceLen;
  bool byte_fallback = true;
  double keep_fraction = 0.75;     // survivors per prune round
  int em_iters_per_round = 2;
  std::uint64_t max_docs = 10'000'000;  // paper-scale default document cap
  // Substring count floor for seeding; 0 = auto (1 for small samples, 2 once
  // the sample exceeds 1 MiB, to bound the candidate table).
  std::size_t min_seed_count = 0;
  int threads = 1;
};

// Candidate pieces: all substrings up to max_piece_len ranked by
// count x length, truncated to seed_size, plus every observed character.
// Pieces may contain ▁ only word-initially. Logprobs are normalized
// frequencies. Throws EmptyCorpus on an empty sample.
std::vector<VocabPiece> seed_vocab(const std::vector<std::string>& sample,
                                   std::size_t seed_size,
                                   int max_piece_len = kDefaultMaxPieceLen,
                                   std::size_t min_count = 1);

// One EM iteration: expected piece counts by lattice forward-backward over
// each sentence, then logprob = log(count/total). Returns the corpus
// log-likelihood under the pre-update model. Throws CoverageError when a
// character in the sample is not representable, EmptyCorpus on an empty
// sample.
double em_step(std::vector<VocabPiece>& vocab,
               const std::vector<std::string>& sample, int threads = 1);

// Removes the multi-character pieces whose removal costs the least Viterbi
// log-likelihood, keeping `keep_fraction` of them (never fewer than the
// target allows). Single characters are never pruned. A piece's loss is its
// Viterbi-path frequency times the gap to re-segmenting the piece without
// itself.
std::vector<VocabPiece> prune_vocab(const std::vector<VocabPiece>& vocab,
                                    const std::vector<std::string>& sample,
                                    double keep_fraction,
                                    std::size_t target_size);

// Full training loop over raw text lines: normalize, seed, EM+prune to the
// target, finalize with reserved and byte ids.
UnigramVocab train_unigram(const std::vector<std::string>& lines,
                           const TrainerConfig& config);

}  // namespace corpusforge

#endif  // CORPUSFORGE_UNIGRAM_H_
