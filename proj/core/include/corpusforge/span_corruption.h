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
// Masked span prediction at the data level: token spans are replaced by
// sentinel ids in the input, and emitted sentinel-prefixed in the target.

#ifndef CORPUSFORGE_SPAN_CORRUPTION_H_
#define CORPUSFORGE_SPAN_CORRUPTION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "corpusforge/unigram.h"

namespace corpusforge {

struct CorruptionConfig {
  double corruption_rate = 0.15;
  double mean_span_len = 3.0;
  std::size_t max_seq_len = 512;
  std::uint64_t seed = 0;
};

// Sentinels appear in strictly increasing index order in both sequences;
// merging input and target around matching sentinels reconstructs the
// original ids exactly.
struct CorruptionExample {
  std::vector<int> input_ids;
  std::vector<int> target_ids;
};

// Deterministic given (token_ids, config). Masks max(1, round(rate * len))
// tokens in max(1, round(masked / mean_span_len)) non-adjacent spans placed
// by the seeded generator; span k is replaced by sentinel k in the input and
// the target is sentinel k followed by the span's tokens, for every k, then
// eos. Throws TooLong past max_seq_len, ContainsReserved when the input
// holds eos or sentinel ids, and rejects empty input.
CorruptionExample corrupt(std::span<const int> token_ids,
                          const CorruptionConfig& config);

// Exact inverse of corrupt. Throws MalformedPair when sentinel order or
// structure does not match.
std::vector<int> reconstruct(std::span<const int> input_ids,
                             std::span<const int> target_ids);

}  // namespace corpusforge

#endif  // CORPUSFORGE_SPAN_CORRUPTION_H_
