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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "corpusforge/error.h"
#include "corpusforge/unicode.h"

namespace corpusforge {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Log-probability assigned to pieces with zero expected count. exp() of it is
// exactly 0 in double, so normalization invariants are unaffected.
constexpr double kFloorLogProb = -1e9;
// Byte pieces score this far below the worst learned piece, so Viterbi takes
// them only when no piece covers a character.
constexpr double kByteLogProbGap = 30.0;

const char32_t kWsMarkCp = 0x2581;

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Codepoint start offsets of `s`, plus the end offset.
std::vector<std::uint32_t> cp_offsets(std::string_view s) {
  std::vector<std::uint32_t> offs;
  offs.reserve(s.size() + 1);
  std::size_t i = 0;
  while (i < s.size()) {
    offs.push_back(static_cast<std::uint32_t>(i));
    uni::decode_next(s, i);
  }
  offs.push_back(static_cast<std::uint32_t>(s.size()));
  return offs;
}

// Piece lookup table over a piece list. Views point into the caller's
// storage, which must stay unmodified while the index is alive.
struct PieceIndex {
  std::unordered_map<std::string_view, int> ids;
  std::vector<double> logprob;
  int max_len_cp = 1;

  explicit PieceIndex(const std::vector<VocabPiece>& pieces) {
    ids.reserve(pieces.size() * 2);
    logprob.resize(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      ids.emplace(pieces[i].piece, static_cast<int>(i));
      logprob[i] = pieces[i].logprob;
      max_len_cp = std::max(
          max_len_cp, static_cast<int>(uni::char_count(pieces[i].piece)));
    }
  }

  int find(std::string_view piece) const {
    auto it = ids.find(piece);
    return it == ids.end() ? -1 : it->second;
  }
};

struct Edge {
  int end_pos;  // codepoint position after the piece
  int pid;
  double lp;
};

// All piece matches starting at each codepoint position.
void collect_matches(std::string_view text,
                     const std::vector<std::uint32_t>& offs,
                     const PieceIndex& index, int skip_pid,
                     std::vector<std::vector<Edge>>& matches) {
  const int len = static_cast<int>(offs.size()) - 1;
  matches.assign(static_cast<std::size_t>(len), {});
  for (int pos = 0; pos < len; ++pos) {
    int max_len = std::min(index.max_len_cp, len - pos);
    for (int l = 1; l <= max_len; ++l) {
      std::string_view cand = text.substr(offs[pos], offs[pos + l] - offs[pos]);
      int pid = index.find(cand);
      if (pid >= 0 && pid != skip_pid) {
        matches[pos].push_back({pos + l, pid, index.logprob[pid]});
      }
    }
  }
}

struct ViterbiCell {
  double score = kNegInf;
  int back_pos = -1;
  int back_pid = -1;
};

// Longest-piece-wins tie-break keeps the result deterministic when two
// segmentations score identically.
bool better(double score, int len, const ViterbiCell& cur, int cur_len) {
  if (score > cur.score) return true;
  return score == cur.score && len > cur_len;
}

double viterbi_dp(const std::vector<std::vector<Edge>>& matches,
                  std::vector<ViterbiCell>& cells) {
  const int len = static_cast<int>(matches.size());
  cells.assign(static_cast<std::size_t>(len) + 1, {});
  cells[0].score = 0.0;
  std::vector<int> cell_len(static_cast<std::size_t>(len) + 1, 0);
  for (int pos = 0; pos < len; ++pos) {
    if (cells[pos].score == kNegInf) continue;
    for (const Edge& e : matches[pos]) {
      double s = cells[pos].score + e.lp;
      int l = e.end_pos - pos;
      if (better(s, l, cells[e.end_pos], cell_len[e.end_pos])) {
        cells[e.end_pos] = {s, pos, e.pid};
        cell_len[e.end_pos] = l;
      }
    }
  }
  return cells[len].score;
}

std::vector<int> viterbi_backtrace(const std::vector<ViterbiCell>& cells) {
  std::vector<int> ids;
  int pos = static_cast<int>(cells.size()) - 1;
  while (pos > 0) {
    ids.push_back(cells[pos].back_pid);
    pos = cells[pos].back_pos;
  }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

std::string byte_piece_name(std::uint8_t b) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "<0x%02X>", b);
  return buf;
}

bool looks_reserved(std::string_view piece) {
  if (piece.size() < 3 || piece.front() != '<' || piece.back() != '>') {
    return false;
  }
  return piece == "<pad>" || piece == "<unk>" ||
         piece.starts_with("<extra_id_") || piece.starts_with("<0x") ||
         piece == "</s>";
}

}  // namespace

std::string tok_normalize(std::string_view text) {
  std::string collapsed =
      uni::collapse_whitespace(uni::normalize_compat(text));
  if (collapsed.empty()) return collapsed;
  std::string out;
  out.reserve(collapsed.size() + 8);
  out += kWhitespaceMark;
  for (char c : collapsed) {
    if (c == ' ') {
      out += kWhitespaceMark;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string tok_denormalize(std::string_view marked) {
  std::string out;
  out.reserve(marked.size());
  std::size_t i = 0;
  while (i < marked.size()) {
    std::size_t prev = i;
    char32_t cp = uni::decode_next(marked, i);
    if (cp == kWsMarkCp) {
      out.push_back(' ');
    } else {
      out.append(marked.substr(prev, i - prev));
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(out.begin());
  return out;
}

UnigramVocab UnigramVocab::assemble(const std::vector<VocabPiece>& learned,
                                    bool byte_fallback) {
  UnigramVocab v;
  v.byte_fallback_ = byte_fallback;
  v.pieces_.reserve(kNumReservedIds + (byte_fallback ? 256 : 0) + learned.size());
  v.pieces_.push_back({"<pad>", kFloorLogProb});
  v.pieces_.push_back({"</s>", kFloorLogProb});
  v.pieces_.push_back({"<unk>", kFloorLogProb});
  for (int k = 0; k < kNumSentinels; ++k) {
    v.pieces_.push_back({"<extra_id_" + std::to_string(k) + ">", kFloorLogProb});
  }
  if (byte_fallback) {
    double min_lp = 0.0;
    for (const auto& p : learned) min_lp = std::min(min_lp, p.logprob);
    double byte_lp = min_lp - kByteLogProbGap;
    for (int b = 0; b < 256; ++b) {
      v.pieces_.push_back({byte_piece_name(static_cast<std::uint8_t>(b)), byte_lp});
    }
  }
  for (const auto& p : learned) v.pieces_.push_back(p);
  v.rebuild_index();
  return v;
}

void UnigramVocab::rebuild_index() {
  index_.clear();
  index_.reserve(pieces_.size() * 2);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    index_.emplace(pieces_[i].piece, static_cast<int>(i));
  }
}

int UnigramVocab::find(std::string_view piece) const {
  auto it = index_.find(piece);
  return it == index_.end() ? -1 : it->second;
}

int UnigramVocab::byte_id(std::uint8_t b) const {
  if (!byte_fallback_) return -1;
  return kNumReservedIds + static_cast<int>(b);
}

Segmentation UnigramVocab::viterbi(std::string_view normalized) const {
  Segmentation seg;
  if (normalized.empty()) return seg;

  auto offs = cp_offsets(normalized);
  const int len = static_cast<int>(offs.size()) - 1;

  // Learned pieces only; reserved and byte names must never match text.
  const std::size_t first_learned =
      kNumReservedIds + (byte_fallback_ ? 256u : 0u);
  int max_len_cp = 1;
  for (std::size_t i = first_learned; i < pieces_.size(); ++i) {
    max_len_cp = std::max(max_len_cp,
                          static_cast<int>(uni::char_count(pieces_[i].piece)));
  }

  std::vector<std::vector<Edge>> matches(static_cast<std::size_t>(len));
  std::vector<bool> has_single(static_cast<std::size_t>(len), false);
  for (int pos = 0; pos < len; ++pos) {
    int max_l = std::min(max_len_cp, len - pos);
    for (int l = 1; l <= max_l; ++l) {
      std::string_view cand =
          normalized.substr(offs[pos], offs[pos + l] - offs[pos]);
      int pid = find(cand);
      if (pid >= 0 && !is_reserved(pid) && !is_byte(pid)) {
        matches[pos].push_back({pos + l, pid, pieces_[pid].logprob});
        if (l == 1) has_single[pos] = true;
      }
    }
  }
  if (byte_fallback_) {
    // Byte-bundle edges make encoding total: an uncovered character becomes
    // its UTF-8 bytes, scored far below any learned piece.
    for (int pos = 0; pos < len; ++pos) {
      if (has_single[pos]) continue;
      std::size_t nbytes = offs[pos + 1] - offs[pos];
      double lp = static_cast<double>(nbytes) *
                  pieces_[static_cast<std::size_t>(byte_id(0))].logprob;
      matches[pos].push_back({pos + 1, -2, lp});  // -2: byte bundle marker
    }
  }

  std::vector<ViterbiCell> cells;
  double score = viterbi_dp(matches, cells);
  if (score == kNegInf) {
    throw Error(ErrorCode::kCoverageError, "no segmentation covers the input");
  }

  // Backtrace, expanding byte bundles.
  std::vector<int> rev;
  int pos = len;
  while (pos > 0) {
    const ViterbiCell& c = cells[pos];
    if (c.back_pid == -2) {
      std::string_view chunk =
          normalized.substr(offs[c.back_pos], offs[pos] - offs[c.back_pos]);
      for (std::size_t b = chunk.size(); b > 0; --b) {
        rev.push_back(byte_id(static_cast<std::uint8_t>(chunk[b - 1])));
      }
    } else {
      rev.push_back(c.back_pid);
    }
    pos = c.back_pos;
  }
  seg.piece_ids.assign(rev.rbegin(), rev.rend());
  seg.score = score;
  return seg;
}

Segmentation UnigramVocab::encode(std::string_view text) const {
  return viterbi(tok_normalize(text));
}

std::string UnigramVocab::decode(std::span<const int> ids) const {
  std::string marked;
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= pieces_.size()) {
      throw Error(ErrorCode::kParseError,
                  "piece id out of range: " + std::to_string(id));
    }
    if (is_byte(id)) {
      marked.push_back(static_cast<char>(id - kNumReservedIds));
    } else if (!is_reserved(id)) {
      marked += pieces_[static_cast<std::size_t>(id)].piece;
    }
    // Reserved ids (pad/eos/unk/sentinels) decode to nothing.
  }
  return tok_denormalize(marked);
}

void UnigramVocab::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write vocab: " + file.string());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    nlohmann::ordered_json j;
    j["piece"] = pieces_[i].piece;
    j["logprob"] = pieces_[i].logprob;
    j["id"] = i;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + file.string());
}

UnigramVocab UnigramVocab::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read vocab: " + file.string());
  UnigramVocab v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError(line_no, "malformed vocab line");
    std::size_t id = j.at("id").get<std::size_t>();
    if (id != v.pieces_.size()) {
      throw ParseError(line_no, "vocab ids must be contiguous from 0");
    }
    v.pieces_.push_back(
        {j.at("piece").get<std::string>(), j.at("logprob").get<double>()});
  }
  if (v.pieces_.size() < kNumReservedIds) {
    throw ParseError(0, "vocab file missing reserved ids");
  }
  v.byte_fallback_ = v.pieces_.size() > kNumReservedIds &&
                     v.pieces_[kNumReservedIds].piece == "<0x00>";
  v.rebuild_index();
  return v;
}

std::vector<VocabPiece> seed_vocab(const std::vector<std::string>& sample,
                                   std::size_t seed_size, int max_piece_len,
                                   std::size_t min_count) {
  bool any = false;
  for (const auto& line : sample) {
    if (!line.empty()) {
      any = true;
      break;
    }
  }
  if (!any) throw Error(ErrorCode::kEmptyCorpus, "empty seeding sample");
  if (min_count == 0) min_count = 1;

  std::vector<std::vector<std::uint32_t>> offsets(sample.size());
  for (std::size_t s = 0; s < sample.size(); ++s) {
    offsets[s] = cp_offsets(sample[s]);
  }

  // Level-by-level substring counting. A length-L candidate is only counted
  // where its (L-1)-prefix met the count floor, which keeps the tables
  // bounded on big samples without changing the result.
  std::unordered_map<std::string_view, std::uint64_t> char_counts;
  std::unordered_map<std::string_view, std::uint64_t> multi_counts;
  std::unordered_set<std::string_view> frequent_prev;

  for (std::size_t s = 0; s < sample.size(); ++s) {
    const auto& offs = offsets[s];
    for (std::size_t pos = 0; pos + 1 < offs.size(); ++pos) {
      ++char_counts[std::string_view(sample[s]).substr(
          offs[pos], offs[pos + 1] - offs[pos])];
    }
  }
  for (const auto& [piece, count] : char_counts) {
    if (count >= min_count) frequent_prev.insert(piece);
  }

  std::unordered_map<std::string_view, std::uint64_t> level_counts;
  for (int level = 2; level <= max_piece_len; ++level) {
    if (frequent_prev.empty()) break;
    level_counts.clear();
    for (std::size_t s = 0; s < sample.size(); ++s) {
      const std::string& line = sample[s];
      const auto& offs = offsets[s];
      const int len = static_cast<int>(offs.size()) - 1;
      for (int pos = 0; pos + level <= len; ++pos) {
        std::string_view prefix = std::string_view(line).substr(
            offs[pos], offs[pos + level - 1] - offs[pos]);
        if (frequent_prev.count(prefix) == 0) continue;
        // The whitespace mark may only start a piece.
        std::string_view last_char = std::string_view(line).substr(
            offs[pos + level - 1], offs[pos + level] - offs[pos + level - 1]);
        if (last_char == kWhitespaceMark) continue;
        ++level_counts[std::string_view(line).substr(
            offs[pos], offs[pos + level] - offs[pos])];
      }
    }
    frequent_prev.clear();
    for (const auto& [piece, count] : level_counts) {
      if (count >= min_count) {
        frequent_prev.insert(piece);
        multi_counts[piece] = count;
      }
    }
  }

  // Rank multi-character candidates by count x length (in codepoints).
  struct Cand {
    std::string_view piece;
    std::uint64_t score;
  };
  std::vector<Cand> cands;
  cands.reserve(multi_counts.size());
  for (const auto& [piece, count] : multi_counts) {
    if (looks_reserved(piece)) continue;
    cands.push_back({piece, count * uni::char_count(piece)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.piece < b.piece;
  });
  if (cands.size() > seed_size) cands.resize(seed_size);

  double total = 0.0;
  for (const auto& c : cands) total += static_cast<double>(c.score);
  for (const auto& [piece, count] : char_counts) {
    (void)piece;
    total += static_cast<double>(count);
  }

  std::vector<VocabPiece> seeds;
  seeds.reserve(cands.size() + char_counts.size());
  // Characters first (they are the protected backbone), sorted for
  // determinism, then ranked candidates.
  std::vector<std::pair<std::string_view, std::uint64_t>> chars(
      char_counts.begin(), char_counts.end());
  std::sort(chars.begin(), chars.end());
  for (const auto& [piece, count] : chars) {
    seeds.push_back(
        {std::string(piece), std::log(static_cast<double>(count) / total)});
  }
  for (const auto& c : cands) {
    seeds.push_back({std::string(c.piece),
                     std::log(static_cast<double>(c.score) / total)});
  }
  return seeds;
}

namespace {

struct EmAccumulator {
  std::vector<double> counts;
  double loglik = 0.0;
  int error_pos = -1;  // sentence index that failed coverage, or -1
};

void em_block(const std::vector<std::string>& sample, std::size_t begin,
              std::size_t end, const PieceIndex& index, EmAccumulator& acc) {
  std::vector<std::vector<Edge>> matches;
  std::vector<double> alpha;
  std::vector<double> beta;
  for (std::size_t s = begin; s < end; ++s) {
    const std::string& line = sample[s];
    if (line.empty()) continue;
    auto offs = cp_offsets(line);
    const int len = static_cast<int>(offs.size()) - 1;
    collect_matches(line, offs, index, /*skip_pid=*/-1, matches);

    alpha.assign(static_cast<std::size_t>(len) + 1, kNegInf);
    alpha[0] = 0.0;
    for (int pos = 0; pos < len; ++pos) {
      if (alpha[pos] == kNegInf) continue;
      for (const Edge& e : matches[pos]) {
        alpha[e.end_pos] = log_sum_exp(alpha[e.end_pos], alpha[pos] + e.lp);
      }
    }
    double z = alpha[len];
    if (z == kNegInf) {
      acc.error_pos = static_cast<int>(s);
      return;
    }
    beta.assign(static_cast<std::size_t>(len) + 1, kNegInf);
    beta[len] = 0.0;
    for (int pos = len - 1; pos >= 0; --pos) {
      for (const Edge& e : matches[pos]) {
        if (beta[e.end_pos] == kNegInf) continue;
        beta[pos] = log_sum_exp(beta[pos], e.lp + beta[e.end_pos]);
      }
    }
    for (int pos = 0; pos < len; ++pos) {
      if (alpha[pos] == kNegInf) continue;
      for (const Edge& e : matches[pos]) {
        if (beta[e.end_pos] == kNegInf) continue;
        acc.counts[static_cast<std::size_t>(e.pid)] +=
            std::exp(alpha[pos] + e.lp + beta[e.end_pos] - z);
      }
    }
    acc.loglik += z;
  }
}

}  // namespace

double em_step(std::vector<VocabPiece>& vocab,
               const std::vector<std::string>& sample, int threads) {
  bool any = false;
  for (const auto& line : sample) {
    if (!line.empty()) {
      any = true;
      break;
    }
  }
  if (!any) throw Error(ErrorCode::kEmptyCorpus, "empty EM sample");

  PieceIndex index(vocab);
  if (threads < 1) threads = 1;
  std::size_t nblocks = std::min<std::size_t>(
      static_cast<std::size_t>(threads), std::max<std::size_t>(sample.size(), 1));

  std::vector<EmAccumulator> accs(nblocks);
  for (auto& a : accs) a.counts.assign(vocab.size(), 0.0);

  if (nblocks == 1) {
    em_block(sample, 0, sample.size(), index, accs[0]);
  } else {
    std::vector<std::thread> pool;
    std::size_t per = (sample.size() + nblocks - 1) / nblocks;
    for (std::size_t b = 0; b < nblocks; ++b) {
      std::size_t begin = b * per;
      std::size_t end = std::min(sample.size(), begin + per);
      pool.emplace_back([&, b, begin, end] {
        em_block(sample, begin, end, index, accs[b]);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Merge in block order: the reduction order is fixed, so the update is
  // reproducible for a given thread count.
  std::vector<double> counts(vocab.size(), 0.0);
  double loglik = 0.0;
  for (const auto& acc : accs) {
    if (acc.error_pos >= 0) {
      throw Error(ErrorCode::kCoverageError,
                  "sample line " + std::to_string(acc.error_pos) +
                      " contains characters the vocabulary cannot cover");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += acc.counts[i];
    loglik += acc.loglik;
  }

  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) {
    throw Error(ErrorCode::kEmptyCorpus, "no piece occurrences in sample");
  }
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    vocab[i].logprob =
        counts[i] > 0.0 ? std::log(counts[i] / total) : kFloorLogProb;
  }
  return loglik;
}

std::vector<VocabPiece> prune_vocab(const std::vector<VocabPiece>& vocab,
                                    const std::vector<std::string>& sample,
                                    double keep_fraction,
                                    std::size_t target_size) {
  if (vocab.size() <= target_size) return vocab;

  std::size_t n_single = 0;
  for (const auto& p : vocab) {
    if (uni::char_count(p.piece) <= 1) ++n_single;
  }
  std::size_t n_multi = vocab.size() - n_single;
  if (n_multi == 0) return vocab;

  PieceIndex index(vocab);

  // Viterbi-path frequencies over the sample.
  std::vector<std::uint64_t> freq(vocab.size(), 0);
  {
    std::vector<std::vector<Edge>> matches;
    std::vector<ViterbiCell> cells;
    for (const auto& line : sample) {
      if (line.empty()) continue;
      auto offs = cp_offsets(line);
      collect_matches(line, offs, index, /*skip_pid=*/-1, matches);
      if (viterbi_dp(matches, cells) == kNegInf) {
        throw Error(ErrorCode::kCoverageError,
                    "sample contains characters the vocabulary cannot cover");
      }
      for (int id : viterbi_backtrace(cells)) {
        ++freq[static_cast<std::size_t>(id)];
      }
    }
  }

  // Loss of removing piece p: every Viterbi occurrence of p re-segments as
  // p's own best path without itself.
  struct Scored {
    std::size_t idx;
    double loss;
  };
  std::vector<Scored> multi;
  multi.reserve(n_multi);
  {
    std::vector<std::vector<Edge>> matches;
    std::vector<ViterbiCell> cells;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (uni::char_count(vocab[i].piece) <= 1) continue;
      if (freq[i] == 0) {
        multi.push_back({i, 0.0});
        continue;
      }
      auto offs = cp_offsets(vocab[i].piece);
      collect_matches(vocab[i].piece, offs, index,
                      /*skip_pid=*/static_cast<int>(i), matches);
      double alt = viterbi_dp(matches, cells);
      double loss =
          alt == kNegInf
              ? std::numeric_limits<double>::infinity()
              : static_cast<double>(freq[i]) * (vocab[i].logprob - alt);
      multi.push_back({i, loss});
    }
  }

  std::size_t min_needed = target_size > n_single ? target_size - n_single : 0;
  std::size_t keep_multi = std::max(
      min_needed, static_cast<std::size_t>(static_cast<double>(n_multi) *
                                           keep_fraction));
  if (keep_multi >= n_multi) keep_multi = n_multi - 1;
  if (keep_multi < min_needed) keep_multi = min_needed;

  std::sort(multi.begin(), multi.end(), [&](const Scored& a, const Scored& b) {
    if (a.loss != b.loss) return a.loss > b.loss;
    return vocab[a.idx].piece < vocab[b.idx].piece;
  });

  std::vector<bool> keep(vocab.size(), false);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (uni::char_count(vocab[i].piece) <= 1) keep[i] = true;
  }
  for (std::size_t r = 0; r < keep_multi && r < multi.size(); ++r) {
    keep[multi[r].idx] = true;
  }

  std::vector<VocabPiece> pruned;
  pruned.reserve(n_single + keep_multi);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (keep[i]) pruned.push_back(vocab[i]);
  }
  return pruned;
}

UnigramVocab train_unigram(const std::vector<std::string>& lines,
                           const TrainerConfig& config) {
  std::vector<std::string> sample;
  sample.reserve(std::min<std::size_t>(lines.size(), config.max_docs));
  std::size_t total_bytes = 0;
  for (const auto& line : lines) {
    if (sample.size() >= config.max_docs) break;
    std::string norm = tok_normalize(line);
    if (norm.empty()) continue;
    total_bytes += norm.size();
    sample.push_back(std::move(norm));
  }
  if (sample.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no usable training lines");
  }

  int reserved = kNumReservedIds + (config.byte_fallback ? 256 : 0);
  if (config.target_size <= reserved) {
    throw ConfigError("target_size must exceed the " +
                      std::to_string(reserved) + " reserved ids");
  }
  std::size_t learned_target =
      static_cast<std::size_t>(config.target_size - reserved);

  std::size_t min_count = config.min_seed_count;
  if (min_count == 0) min_count = total_bytes > (1u << 20) ? 2 : 1;

  std::size_t seed_size = static_cast<std::size_t>(
      static_cast<double>(learned_target) * config.seed_multiplier);
  std::vector<VocabPiece> vocab =
      seed_vocab(sample, seed_size, config.max_piece_len, min_count);

  std::size_t n_single = 0;
  for (const auto& p : vocab) {
    if (uni::char_count(p.piece) <= 1) ++n_single;
  }

  while (vocab.size() > learned_target && vocab.size() > n_single) {
    for (int it = 0; it < config.em_iters_per_round; ++it) {
      em_step(vocab, sample, config.threads);
    }
    vocab = prune_vocab(vocab, sample, config.keep_fraction, learned_target);
  }
  for (int it = 0; it < config.em_iters_per_round; ++it) {
    em_step(vocab, sample, config.threads);
  }

  std::sort(vocab.begin(), vocab.end(),
            [](const VocabPiece& a, const VocabPiece& b) {
              if (a.logprob != b.logprob) return a.logprob > b.logprob;
              return a.piece < b.piece;
            });
  return UnigramVocab::assemble(vocab, config.byte_fallback);
}

}  // namespace corpusforge
