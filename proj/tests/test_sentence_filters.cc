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

#include "corpusforge/sentence_filters.h"

#include <doctest.h>

#include <map>

#include "corpusforge/unicode.h"
#include "paths.h"

using namespace corpusforge;

namespace {

BadWordsIndex default_badwords() {
  return BadWordsIndex::from_file(testsup::resource_dir() / "badwords.txt");
}

BoilerplatePatterns default_boilerplate() {
  return BoilerplatePatterns::from_file(testsup::resource_dir() /
                                        "boilerplate.txt");
}

SentenceVerdict judge(const std::string& text) {
  static BadWordsIndex bw = default_badwords();
  static BoilerplatePatterns bp = default_boilerplate();
  return judge_sentence(make_sentence_record(text), bw, bp);
}

}  // namespace

TEST_CASE("word-count floor") {
  auto v = judge("uno due");
  CHECK_FALSE(v.keep);
  CHECK(v.reason == SentenceReason::kTooFewWords);
  CHECK(judge("uno due tre.").keep);  // exactly three words passes
}

TEST_CASE("clean sentence keeps") {
  auto v = judge("Questo prodotto è ottimo.");
  CHECK(v.keep);
  CHECK_FALSE(v.reason.has_value());
}

TEST_CASE("boilerplate needle from the shipped list") {
  auto v = judge("questo sito utilizza cookie per migliorare l'esperienza.");
  CHECK_FALSE(v.keep);
  CHECK(v.reason == SentenceReason::kBoilerplate);
  CHECK(judge("Vendiamo biscotti al cioccolato da anni.").keep);
}

TEST_CASE("badword matching is whole-token and case-insensitive") {
  auto bw = BadWordsIndex({"merda", "cazzo"});
  BoilerplatePatterns bp({});
  auto drop = judge_sentence(make_sentence_record("Che MERDA di giornata."),
                             bw, bp);
  CHECK_FALSE(drop.keep);
  CHECK(drop.reason == SentenceReason::kBadWord);
  // Substring containment must NOT match: "scazzottata" contains "cazzo".
  CHECK(judge_sentence(make_sentence_record("Una scazzottata furiosa scoppiò."),
                       bw, bp)
            .keep);
}

TEST_CASE("overlong word") {
  std::string token(1001, 'z');
  auto v = judge("Parola " + token + " incredibile davvero.");
  CHECK_FALSE(v.keep);
  CHECK(v.reason == SentenceReason::kWordTooLong);
  std::string ok_token(1000, 'z');
  CHECK(judge("Parola " + ok_token + " incredibile davvero.").keep);
}

TEST_CASE("terminal punctuation whitelist") {
  CHECK(judge("Frase che finisce bene.").keep);
  CHECK(judge("Frase che finisce bene!").keep);
  CHECK(judge("Frase che finisce bene?").keep);
  CHECK(judge("Frase che finisce bene…").keep);
  CHECK(judge("Disse «arrivo subito.»").keep);
  CHECK(judge("Disse \"arrivo subito.\"").keep);
  CHECK(judge("Una nota (anche questa.)").keep);

  auto no_term = judge("Frase senza punto finale");
  CHECK_FALSE(no_term.keep);
  CHECK(no_term.reason == SentenceReason::kBadTerminal);
  // Closer without a terminator before it.
  auto bare_closer = judge("Frase chiusa male»");
  CHECK_FALSE(bare_closer.keep);
  CHECK(bare_closer.reason == SentenceReason::kBadTerminal);
  CHECK_FALSE(judge("Elenco puntato;").keep);
  CHECK_FALSE(judge("Virgola finale,").keep);
}

TEST_CASE("fixed rule order decides the reason") {
  // Boilerplate beats BadWord even when both fire.
  auto bw = BadWordsIndex({"merda"});
  BoilerplatePatterns bp({"lorem ipsum"});
  auto both = judge_sentence(
      make_sentence_record("lorem ipsum merda senza fine"), bw, bp);
  CHECK(both.reason == SentenceReason::kBoilerplate);
  // BadWord beats TooFewWords.
  auto bw_few = judge_sentence(make_sentence_record("merda totale"), bw, bp);
  CHECK(bw_few.reason == SentenceReason::kBadWord);
  // TooFewWords beats WordTooLong.
  std::string long_token(1001, 'x');
  auto few_long =
      judge_sentence(make_sentence_record(long_token + " x"), bw, bp);
  CHECK(few_long.reason == SentenceReason::kTooFewWords);
  // WordTooLong beats BadTerminal.
  auto long_bad = judge_sentence(
      make_sentence_record("una " + long_token + " senza punto"), bw, bp);
  CHECK(long_bad.reason == SentenceReason::kWordTooLong);
}

TEST_CASE("filter_sentences is order-preserving and aligned") {
  auto bw = default_badwords();
  auto bp = default_boilerplate();

  SUBCASE("empty") {
    auto [kept, verdicts] = filter_sentences({}, bw, bp);
    CHECK(kept.empty());
    CHECK(verdicts.empty());
  }

  SUBCASE("all-keep fixture") {
    std::vector<SentenceRecord> in;
    for (int i = 0; i < 5; ++i) {
      in.push_back(make_sentence_record("Frase valida numero " +
                                        std::to_string(i) + "."));
    }
    auto [kept, verdicts] = filter_sentences(in, bw, bp);
    CHECK(kept.size() == 5);
    CHECK(verdicts.size() == 5);
    for (const auto& v : verdicts) CHECK(v.keep);
  }

  SUBCASE("mixed fixture with planted violations") {
    std::vector<SentenceRecord> in;
    auto add = [&](const std::string& t) { in.push_back(make_sentence_record(t)); };
    add("Prima frase del tutto normale.");
    add("troppo corta.");  // 2 words -> TooFewWords
    add("Seconda frase del tutto normale.");
    add("Terza frase ancora più normale.");
    add("Frase lasciata senza chiusura");  // BadTerminal
    add("Quarta frase di nuovo normale.");
    add("questo sito utilizza cookie per navigare meglio.");  // Boilerplate
    add("Quinta frase sempre normale.");
    add("Sesta frase decisamente normale.");
    add("Settima frase conclusiva e normale.");
    auto [kept, verdicts] = filter_sentences(in, bw, bp);
    CHECK(kept.size() == 7);
    REQUIRE(verdicts.size() == 10);

    std::map<SentenceReason, int> histogram;
    for (const auto& v : verdicts) {
      if (!v.keep) ++histogram[*v.reason];
    }
    CHECK(histogram[SentenceReason::kTooFewWords] == 1);
    CHECK(histogram[SentenceReason::kBadTerminal] == 1);
    CHECK(histogram[SentenceReason::kBoilerplate] == 1);
    CHECK(histogram.size() == 3);

    // Kept order matches input order.
    CHECK(kept[0].text == in[0].text);
    CHECK(kept[1].text == in[2].text);

    // Idempotence: filtering the kept set drops nothing.
    auto [kept2, verdicts2] = filter_sentences(kept, bw, bp);
    CHECK(kept2.size() == kept.size());
  }
}

TEST_CASE("monotonicity: growing the badword list never grows the kept set") {
  BoilerplatePatterns bp({});
  std::vector<SentenceRecord> in;
  for (const char* t :
       {"Il gatto dorme sul divano.", "La barca naviga piano piano.",
        "Il cuoco prepara la cena.", "Un treno passa di rado."}) {
    in.push_back(make_sentence_record(t));
  }
  BadWordsIndex small({"niente"});
  auto kept_small = filter_sentences(in, small, bp).first;

  BadWordsIndex bigger({"niente", "gatto", "cena"});
  auto kept_bigger = filter_sentences(in, bigger, bp).first;

  CHECK(kept_bigger.size() <= kept_small.size());
  // Every survivor of the bigger list survived the smaller one.
  for (const auto& s : kept_bigger) {
    bool found = false;
    for (const auto& t : kept_small) found |= (t.text == s.text);
    CHECK(found);
  }
  CHECK(kept_small.size() == 4);
  CHECK(kept_bigger.size() == 2);
}

// Independent per-rule oracle: a sentence must be dropped iff at least one
// rule predicate, evaluated directly here, holds.
TEST_CASE("drop iff some rule predicate holds") {
  auto bw = BadWordsIndex({"vietata"});
  BoilerplatePatterns bp({"cookie"});
  const char* fixtures[] = {
      "Frase pulita che termina bene.",
      "due parole.",
      "qui c'è un cookie nascosto.",
      "la parola vietata compare qui.",
      "Senza terminatore questa frase",
      "parole sufficienti ma chiuse male;",
      "Tre parole bastano.",
  };
  for (const char* t : fixtures) {
    CAPTURE(t);
    auto rec = make_sentence_record(t);
    std::string lower = uni::to_lower_copy(rec.text);

    bool pred_boiler = lower.find("cookie") != std::string::npos;
    bool pred_badword = false;
    {
      std::size_t start = 0;
      while (start < lower.size()) {
        auto end = lower.find_first_of(" \t", start);
        if (end == std::string::npos) end = lower.size();
        if (lower.substr(start, end - start) == "vietata") pred_badword = true;
        start = end + 1;
      }
    }
    bool pred_few = rec.word_count < 3;
    bool pred_long = rec.max_word_len > 1000;
    bool pred_terminal = true;
    if (!rec.text.empty()) {
      std::string tail = rec.text;
      while (!tail.empty() && (tail.back() == '"' || tail.back() == ')')) {
        tail.pop_back();
      }
      char c = tail.empty() ? ' ' : tail.back();
      pred_terminal = !(c == '.' || c == '!' || c == '?');
      // The multibyte ellipsis is absent from these fixtures.
    }
    bool should_drop =
        pred_boiler || pred_badword || pred_few || pred_long || pred_terminal;
    auto v = judge_sentence(rec, bw, bp);
    CHECK(v.keep == !should_drop);
  }
}
