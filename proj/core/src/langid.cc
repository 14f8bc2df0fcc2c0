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

#include "corpusforge/langid.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "corpusforge/error.h"
#include "corpusforge/unicode.h"

namespace corpusforge {

namespace {

// Lowercased, whitespace-collapsed codepoints, capped at the subsample
// window. Spaces stay in: they carry word-boundary signal.
std::vector<char32_t> prepare_chars(std::string_view text, std::size_t cap) {
  std::vector<char32_t> cps;
  std::size_t i = 0;
  bool pending_space = false;
  while (i < text.size() && cps.size() < cap) {
    char32_t cp = uni::decode_next(text, i);
    if (uni::is_space(cp)) {
      pending_space = !cps.empty();
      continue;
    }
    if (pending_space) {
      cps.push_back(U' ');
      pending_space = false;
      if (cps.size() >= cap) break;
    }
    cps.push_back(uni::to_lower(cp));
  }
  return cps;
}

std::string gram_at(const std::vector<char32_t>& cps, std::size_t pos, int n) {
  std::string g;
  for (int k = 0; k < n; ++k) uni::append_utf8(cps[pos + k], g);
  return g;
}

}  // namespace

LangProfile train_profile(std::string_view lang, std::string_view corpus_text) {
  auto cps = prepare_chars(corpus_text, static_cast<std::size_t>(-1));
  if (cps.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty training corpus");

  LangProfile profile;
  profile.lang = std::string(lang);
  for (int n = 1; n <= kLangIdMaxOrder; ++n) {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    if (cps.size() >= static_cast<std::size_t>(n)) {
      for (std::size_t pos = 0; pos + n <= cps.size(); ++pos) {
        ++counts[gram_at(cps, pos, n)];
        ++total;
      }
    }
    auto& lp = profile.logprob[n - 1];
    double denom = static_cast<double>(total) +
                   kLangIdSmoothing * static_cast<double>(counts.size());
    if (counts.empty()) {
      // Degenerate order (corpus shorter than n); one unit of unseen mass.
      profile.unseen_logprob[n - 1] = 0.0;
      continue;
    }
    for (const auto& [gram, c] : counts) {
      lp[gram] = std::log((static_cast<double>(c) + kLangIdSmoothing) / denom);
    }
    profile.unseen_logprob[n - 1] = std::log(kLangIdSmoothing / denom);
  }
  return profile;
}

void LangProfile::save(const std::filesystem::path& file) const {
  nlohmann::ordered_json j;
  j["lang"] = lang;
  j["prior"] = prior;
  nlohmann::ordered_json grams;
  nlohmann::ordered_json unseen;
  for (int n = 1; n <= kLangIdMaxOrder; ++n) {
    // Sort grams so profile files are byte-stable across runs.
    std::vector<std::pair<std::string, double>> sorted(logprob[n - 1].begin(),
                                                       logprob[n - 1].end());
    std::sort(sorted.begin(), sorted.end());
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [g, p] : sorted) m[g] = p;
    grams[std::to_string(n)] = std::move(m);
    unseen[std::to_string(n)] = unseen_logprob[n - 1];
  }
  j["ngrams"] = std::move(grams);
  j["unseen"] = std::move(unseen);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write profile: " + file.string());
  out << j.dump(1, '\t') << '\n';
}

LangProfile LangProfile::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read profile: " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "malformed profile " + file.string() + ": " + e.what());
  }
  LangProfile profile;
  profile.lang = j.at("lang").get<std::string>();
  profile.prior = j.at("prior").get<double>();
  for (int n = 1; n <= kLangIdMaxOrder; ++n) {
    const auto& m = j.at("ngrams").at(std::to_string(n));
    for (auto it = m.begin(); it != m.end(); ++it) {
      profile.logprob[n - 1][it.key()] = it.value().get<double>();
    }
    profile.unseen_logprob[n - 1] =
        j.at("unseen").at(std::to_string(n)).get<double>();
  }
  return profile;
}

LangDetector::LangDetector(std::vector<LangProfile> profiles)
    : profiles_(std::move(profiles)) {
  std::sort(profiles_.begin(), profiles_.end(),
            [](const LangProfile& a, const LangProfile& b) { return a.lang < b.lang; });
  for (int n = 0; n < kLangIdMaxOrder; ++n) {
    auto& table = merged_[n];
    for (std::size_t p = 0; p < profiles_.size(); ++p) {
      for (const auto& [gram, lp] : profiles_[p].logprob[n]) {
        auto [it, inserted] = table.try_emplace(gram);
        if (inserted) {
          it->second.resize(profiles_.size());
          for (std::size_t q = 0; q < profiles_.size(); ++q) {
            it->second[q] = profiles_[q].unseen_logprob[n];
          }
        }
        it->second[p] = lp;
      }
    }
  }
}

LangDetector LangDetector::from_dir(const std::filesystem::path& dir) {
  std::vector<LangProfile> profiles;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) profiles.push_back(LangProfile::load(f));
  if (profiles.empty()) {
    throw Error(ErrorCode::kNoProfiles, "no language profiles in " + dir.string());
  }
  return LangDetector(std::move(profiles));
}

std::vector<std::pair<std::string, double>> LangDetector::posterior(
    std::string_view text) const {
  if (profiles_.empty()) {
    throw Error(ErrorCode::kNoProfiles, "no language profiles loaded");
  }
  auto cps = prepare_chars(text, kLangIdSubsampleChars);
  std::size_t non_space = 0;
  for (char32_t cp : cps) {
    if (cp != U' ') ++non_space;
  }
  if (non_space < kLangIdMinChars) {
    throw Error(ErrorCode::kLowConfidence,
                "text too short for language identification");
  }

  std::vector<double> scores(profiles_.size());
  for (std::size_t p = 0; p < profiles_.size(); ++p) scores[p] = profiles_[p].prior;
  std::string gram;
  for (int n = 1; n <= kLangIdMaxOrder; ++n) {
    const auto& table = merged_[n - 1];
    for (std::size_t pos = 0; pos + n <= cps.size(); ++pos) {
      gram.clear();
      for (int k = 0; k < n; ++k) uni::append_utf8(cps[pos + k], gram);
      auto it = table.find(gram);
      if (it != table.end()) {
        for (std::size_t p = 0; p < profiles_.size(); ++p) {
          scores[p] += it->second[p];
        }
      } else {
        for (std::size_t p = 0; p < profiles_.size(); ++p) {
          scores[p] += profiles_[p].unseen_logprob[n - 1];
        }
      }
    }
  }

  // Softmax in log space.
  double max_score = *std::max_element(scores.begin(), scores.end());
  double denom = 0.0;
  for (double s : scores) denom += std::exp(s - max_score);
  std::vector<std::pair<std::string, double>> result;
  result.reserve(profiles_.size());
  for (std::size_t p = 0; p < profiles_.size(); ++p) {
    result.emplace_back(profiles_[p].lang,
                        std::exp(scores[p] - max_score) / denom);
  }
  return result;
}

DetectResult LangDetector::detect(std::string_view text) const {
  auto post = posterior(text);
  // Profiles are sorted by code, so the first maximum is the lexicographic
  // tie-break winner.
  std::size_t best = 0;
  for (std::size_t p = 1; p < post.size(); ++p) {
    if (post[p].second > post[best].second) best = p;
  }
  return {post[best].first, post[best].second};
}

}  // namespace corpusforge
