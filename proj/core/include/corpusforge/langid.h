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
// Naive-Bayes language identification over character 1-3-grams. Deliberately
// deterministic: no random feature sampling, fixed subsampling window, so a
// document is classified identically on every run and every worker.

#ifndef CORPUSFORGE_LANGID_H_
#define CORPUSFORGE_LANGID_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corpusforge {

inline constexpr int kLangIdMaxOrder = 3;
// Additive smoothing over the observed n-gram alphabet.
inline constexpr double kLangIdSmoothing = 0.5;
// Only the first 4,000 characters of a document are scored.
inline constexpr std::size_t kLangIdSubsampleChars = 4000;
// Inputs with fewer non-space characters cannot be classified.
inline constexpr std::size_t kLangIdMinChars = 20;

struct LangProfile {
  std::string lang;    // ISO 639-1
  double prior = 0.0;  // log prior (unnormalized; detection normalizes)
  // ngram -> log probability, per order (index 0 = unigrams). Grams are
  // lowercase; per order, the probabilities sum to 1.
  std::array<std::unordered_map<std::string, double>, kLangIdMaxOrder> logprob;
  // Log probability mass assigned to one unseen gram of each order.
  std::array<double, kLangIdMaxOrder> unseen_logprob{};

  void save(const std::filesystem::path& file) const;
  static LangProfile load(const std::filesystem::path& file);
};

// Trains additive-smoothed relative frequencies of character 1-3-grams over
// the lowercased, whitespace-collapsed corpus. Throws EmptyCorpus when the
// corpus has no usable characters.
LangProfile train_profile(std::string_view lang, std::string_view corpus_text);

struct DetectResult {
  std::string lang;
  double prob = 0.0;
};

class LangDetector {
 public:
  explicit LangDetector(std::vector<LangProfile> profiles);

  // Loads every profile in `dir` (files named <lang>.json).
  static LangDetector from_dir(const std::filesystem::path& dir);

  // Posterior argmax with lexicographic tie-break on the language code.
  // Throws LowConfidence for texts under the character floor, NoProfiles when
  // empty. A single profile yields that language with probability 1.
  DetectResult detect(std::string_view text) const;

  // Full posterior, ordered by language code. Sums to 1.
  std::vector<std::pair<std::string, double>> posterior(std::string_view text) const;

  std::size_t num_profiles() const { return profiles_.size(); }

 private:
  std::vector<LangProfile> profiles_;  // sorted by language code
  // Union table: gram -> per-language log probabilities (unseen mass
  // pre-filled), so scoring costs one lookup per gram instead of one per
  // profile. Values index into profiles_ order.
  std::array<std::unordered_map<std::string, std::vector<double>>,
             kLangIdMaxOrder>
      merged_;
};

}  // namespace corpusforge

#endif  // CORPUSFORGE_LANGID_H_
