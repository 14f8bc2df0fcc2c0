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
// Small UTF-8 toolkit. All counts and lengths in this project are in Unicode
// scalar values, never bytes; these helpers are the single place that decodes.

#ifndef CORPUSFORGE_UNICODE_H_
#define CORPUSFORGE_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace corpusforge::uni {

inline constexpr char32_t kReplacementChar = 0xFFFD;

bool is_valid_utf8(std::string_view s);

// Decodes the scalar value starting at `pos` and advances `pos` past it.
// Invalid sequences decode as U+FFFD and advance one byte.
char32_t decode_next(std::string_view s, std::size_t& pos);

void append_utf8(char32_t cp, std::string& out);

// Number of Unicode scalar values in a valid UTF-8 string.
std::size_t char_count(std::string_view s);

// Unicode whitespace (ASCII space/tab/newlines, NBSP, the general-punctuation
// space block, ideographic space).
bool is_space(char32_t cp);

// Lowercasing with Latin coverage: ASCII, Latin-1 Supplement, Latin
// Extended-A. Sufficient for the it/en/de/fr/es pipeline; other scripts pass
// through unchanged.
char32_t to_lower(char32_t cp);
std::string to_lower_copy(std::string_view s);

// Trims outer whitespace and collapses internal whitespace runs to one space.
std::string collapse_whitespace(std::string_view s);

// Compatibility normalization for common web-text punctuation and width
// variants: Unicode spaces to U+0020, soft hyphen removed, fullwidth ASCII
// folded, ligatures fi/fl/ff/ffi/ffl expanded, horizontal ellipsis expanded
// to three dots, superscript digits folded. A curated subset of the standard
// compatibility decompositions; everything else passes through.
std::string normalize_compat(std::string_view s);

}  // namespace corpusforge::uni

#endif  // CORPUSFORGE_UNICODE_H_
