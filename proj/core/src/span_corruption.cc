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

#include "corpusforge/span_corruption.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corpusforge/error.h"
#include "corpusforge/rng.h"

namespace corpusforge {

CorruptionExample corrupt(std::span<const int> token_ids,
                          const CorruptionConfig& config) {
  const std::size_t n = token_ids.size();
  if (n == 0) {
    throw Error(ErrorCode::kParseError, "cannot corrupt an empty sequence");
  }
  if (n > config.max_seq_len) {
    throw Error(ErrorCode::kTooLong,
                "sequence length " + std::to_string(n) + " exceeds " +
                    std::to_string(config.max_seq_len));
  }
  for (int id : token_ids) {
    if (id == kEosId || is_sentinel_id(id)) {
      throw Error(ErrorCode::kContainsReserved,
                  "input already contains reserved id " + std::to_string(id));
    }
  }

  // Mask budget and span count. Both rounded, both floored at one.
  std::size_t masked = static_cast<std::size_t>(
      std::llround(config.corruption_rate * static_cast<double>(n)));
  masked = std::clamp<std::size_t>(masked, 1, n);
  std::size_t num_spans = static_cast<std::size_t>(std::llround(
      static_cast<double>(masked) / std::max(config.mean_span_len, 1.0)));
  num_spans = std::clamp<std::size_t>(num_spans, 1, masked);

  const std::size_t kept = n - masked;
  const std::size_t gaps = kept + 1;
  num_spans = std::min(num_spans, gaps);

  // Span lengths: as even as possible, leftmost spans take the remainder.
  std::vector<std::size_t> lengths(num_spans, masked / num_spans);
  for (std::size_t i = 0; i < masked % num_spans; ++i) ++lengths[i];

  // One span per gap between kept tokens keeps spans non-adjacent by
  // construction. Gap g sits before kept token g (gap `kept` is the end).
  std::vector<std::size_t> gap_ids(gaps);
  std::iota(gap_ids.begin(), gap_ids.end(), 0);
  SplitMix64 rng(config.seed);
  rng.shuffle(gap_ids);
  gap_ids.resize(num_spans);
  std::sort(gap_ids.begin(), gap_ids.end());

  CorruptionExample ex;
  ex.input_ids.reserve(kept + num_spans);
  ex.target_ids.reserve(masked + num_spans + 1);
  std::size_t orig = 0;
  std::size_t span = 0;
  for (std::size_t kept_pos = 0; kept_pos <= kept; ++kept_pos) {
    if (span < num_spans && gap_ids[span] == kept_pos) {
      int sid = sentinel_id(static_cast<int>(span));
      ex.input_ids.push_back(sid);
      ex.target_ids.push_back(sid);
      for (std::size_t t = 0; t < lengths[span]; ++t) {
        ex.target_ids.push_back(token_ids[orig++]);
      }
      ++span;
    }
    if (kept_pos < kept) ex.input_ids.push_back(token_ids[orig++]);
  }
  ex.target_ids.push_back(kEosId);
  return ex;
}

std::vector<int> reconstruct(std::span<const int> input_ids,
                             std::span<const int> target_ids) {
  std::vector<int> original;
  original.reserve(input_ids.size() + target_ids.size());
  std::size_t t = 0;
  int expected_sentinel = 0;
  for (int id : input_ids) {
    if (!is_sentinel_id(id)) {
      original.push_back(id);
      continue;
    }
    if (sentinel_index(id) != expected_sentinel) {
      throw Error(ErrorCode::kMalformedPair,
                  "input sentinel out of order: expected index " +
                      std::to_string(expected_sentinel));
    }
    if (t >= target_ids.size() || target_ids[t] != id) {
      throw Error(ErrorCode::kMalformedPair,
                  "target does not open with sentinel " +
                      std::to_string(expected_sentinel));
    }
    ++t;
    while (t < target_ids.size() && !is_sentinel_id(target_ids[t]) &&
           target_ids[t] != kEosId) {
      original.push_back(target_ids[t]);
      ++t;
    }
    ++expected_sentinel;
  }
  if (t >= target_ids.size() || target_ids[t] != kEosId) {
    throw Error(ErrorCode::kMalformedPair, "target missing terminal eos");
  }
  if (t + 1 != target_ids.size()) {
    throw Error(ErrorCode::kMalformedPair, "trailing ids after target eos");
  }
  return original;
}

}  // namespace corpusforge
