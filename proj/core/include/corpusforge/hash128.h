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

#ifndef CORPUSFORGE_HASH128_H_
#define CORPUSFORGE_HASH128_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace corpusforge {

struct Hash128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const Hash128&, const Hash128&) = default;

  std::string to_hex() const;
  static Hash128 from_hex(std::string_view hex);
};

// MurmurHash3 x64 128-bit variant (Austin Appleby, public domain). Stable
// across runs and platforms, which std::hash and seeded hash frameworks are
// not; dedup claimed-sets and golden fixtures depend on that stability.
Hash128 murmur3_x64_128(std::string_view data, std::uint64_t seed = 0);

struct Hash128Hasher {
  std::size_t operator()(const Hash128& h) const {
    // Halves are already well mixed.
    return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9E3779B97F4A7C15ULL));
  }
};

}  // namespace corpusforge

#endif  // CORPUSFORGE_HASH128_H_
