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

#include "fixtures.h"

#include <array>
#include <fstream>
#include <stdexcept>

#include "corpusforge/corpus_io.h"
#include "corpusforge/rng.h"
#include "corpusforge/unicode.h"

namespace testsup {

namespace {

using corpusforge::ShardWriter;
using corpusforge::SplitMix64;

// Sentence templates. No internal terminators, >= 3 words, final '.':
// each composes into exactly one sentence per line.
constexpr std::array<const char*, 24> kItalianPool = {
    "Il mercato del paese offre ogni settimana prodotti freschi e genuini ai visitatori della zona",
    "La biblioteca comunale organizza incontri di lettura per i ragazzi delle scuole elementari",
    "Durante la primavera le colline si riempiono di fiori gialli e il profumo arriva fino in piazza",
    "Gli artigiani del quartiere riparano mobili antichi con una pazienza che sembra di altri tempi",
    "La squadra locale ha vinto la partita decisiva davanti a un pubblico numeroso ed entusiasta",
    "Il treno regionale attraversa la valle costeggiando il fiume e fermandosi in ogni piccola stazione",
    "La nonna prepara la pasta fresca ogni domenica seguendo la ricetta della sua famiglia",
    "Il museo della città espone quadri e sculture raccolti in oltre un secolo di donazioni",
    "I pescatori rientrano al porto prima dell'alba e vendono il pesce direttamente sul molo",
    "Il coro della parrocchia prova ogni settimana nuove canzoni per la festa del santo patrono",
    "La montagna innevata attira escursionisti esperti e famiglie in cerca di aria pulita",
    "Il panettiere del corso sforna pane caldo e dolci profumati fin dalle prime ore del mattino",
    "Gli studenti universitari affollano le aule durante la sessione invernale degli esami",
    "La pioggia leggera di ottobre rende i boschi perfetti per la raccolta delle castagne",
    "Il sindaco ha inaugurato la nuova pista ciclabile che collega il centro alla stazione",
    "Le campane della torre suonano a mezzogiorno e il suono si sente in tutta la vallata",
    "Il vecchio mulino lungo il torrente è stato trasformato in un piccolo museo della memoria",
    "La farmacia storica conserva ancora gli arredi in legno e i vasi di ceramica dipinta",
    "I contadini raccolgono le olive a novembre e portano il raccolto al frantoio del paese",
    "Il teatro comunale presenta una stagione ricca di spettacoli per grandi e bambini",
    "La piazza principale si anima ogni sera con famiglie e ragazzi che passeggiano tranquilli",
    "Il fornaio insegna ai nipoti i segreti dell'impasto tramandati da quattro generazioni",
    "Le barche colorate dei pescatori dondolano nel porto sotto la luce dorata del tramonto",
    "Il professore di matematica spiega con calma gli esercizi più difficili della verifica",
};

constexpr std::array<const char*, 8> kEnglishPool = {
    "The northern railway line follows the coast through villages that still smell of salt and tar",
    "Volunteers repaired the old footbridge so that walkers could reach the meadows before summer",
    "The local museum keeps a drawer of letters written by lighthouse keepers a century ago",
    "Market traders arrange their fruit in bright rows long before the first customers arrive",
    "The rowing club trains on the river every morning regardless of the weather forecast",
    "A family of foxes has moved into the hedgerow behind the village cricket pavilion",
    "The bakery at the crossroads sells out of brown loaves within an hour of opening",
    "Schoolchildren planted two hundred saplings along the lane during the autumn term",
};

std::string tagged(const char* stem, std::uint64_t tag) {
  return std::string(stem) + " n " + std::to_string(tag) + ".";
}

struct DocBuilder {
  std::string text;
  void add_line(const std::string& s) {
    if (!text.empty()) text += '\n';
    text += s;
  }
};

enum class Category {
  kKeep,
  kTooFewSentences,
  kTooShort,
  kTooLong,
  kWrongLanguage,
  kDuplicate,
};

}  // namespace

std::string italian_sentence(std::uint64_t tag, std::size_t approx_chars) {
  std::string s = tagged(kItalianPool[tag % kItalianPool.size()], tag);
  while (s.size() < approx_chars) {
    s.pop_back();  // drop '.'
    s += " e la storia continua ancora n " + std::to_string(tag) + ".";
  }
  return s;
}

std::string italian_document(std::uint64_t doc_tag, std::size_t sentences) {
  DocBuilder b;
  for (std::size_t i = 0; i < sentences; ++i) {
    b.add_line(tagged(kItalianPool[(doc_tag + i) % kItalianPool.size()],
                      doc_tag * 1000 + i));
  }
  return b.text;
}

PlantedCounts write_mixed_corpus(const std::filesystem::path& dir,
                                 const MixedCorpusOptions& opt) {
  std::filesystem::create_directories(dir);

  std::vector<Category> schedule;
  schedule.insert(schedule.end(), opt.keepers, Category::kKeep);
  schedule.insert(schedule.end(), opt.too_few_sentences, Category::kTooFewSentences);
  schedule.insert(schedule.end(), opt.too_short, Category::kTooShort);
  schedule.insert(schedule.end(), opt.too_long, Category::kTooLong);
  schedule.insert(schedule.end(), opt.wrong_language, Category::kWrongLanguage);
  SplitMix64 rng(opt.seed);
  rng.shuffle(schedule);
  // Duplicates copy earlier plain keepers, so they must come last in global
  // order.
  schedule.insert(schedule.end(), opt.duplicates, Category::kDuplicate);

  const std::size_t plant_sections[5] = {
      opt.plant_boilerplate,
      opt.plant_boilerplate + opt.plant_badword,
      opt.plant_boilerplate + opt.plant_badword + opt.plant_too_few_words,
      opt.plant_boilerplate + opt.plant_badword + opt.plant_too_few_words +
          opt.plant_word_too_long,
      opt.plant_boilerplate + opt.plant_badword + opt.plant_too_few_words +
          opt.plant_word_too_long + opt.plant_bad_terminal,
  };
  const std::string long_word(1001, 'x');
  auto plant_sentence = [&](std::size_t keeper_ordinal) -> std::string {
    if (keeper_ordinal < plant_sections[0]) {
      return "Questo sito utilizza cookie per migliorare la vostra esperienza di navigazione.";
    }
    if (keeper_ordinal < plant_sections[1]) {
      return "Questa situazione sembra davvero una merda totale.";
    }
    if (keeper_ordinal < plant_sections[2]) {
      return "Ciao amico.";
    }
    if (keeper_ordinal < plant_sections[3]) {
      return "Questa parola " + long_word + " risulta chiaramente eccessiva.";
    }
    if (keeper_ordinal < plant_sections[4]) {
      return "Questa frase finale rimane appositamente priva di punteggiatura terminale";
    }
    return "";
  };

  const std::size_t total_docs = schedule.size();
  const std::size_t per_shard = (total_docs + opt.shards - 1) / opt.shards;

  std::vector<std::string> plain_keeper_texts;
  std::size_t keeper_ordinal = 0;
  std::size_t dup_ordinal = 0;

  PlantedCounts counts;
  counts.documents = total_docs;
  counts.malformed_lines = opt.malformed_lines;
  counts.keep = opt.keepers;
  counts.too_few_sentences = opt.too_few_sentences;
  counts.too_short = opt.too_short;
  counts.too_long = opt.too_long;
  counts.wrong_language = opt.wrong_language;
  counts.duplicate = opt.duplicates;
  counts.boilerplate = opt.plant_boilerplate;
  counts.badword = opt.plant_badword;
  counts.too_few_words = opt.plant_too_few_words;
  counts.word_too_long = opt.plant_word_too_long;
  counts.bad_terminal = opt.plant_bad_terminal;

  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);

  std::size_t gidx = 0;
  std::size_t malformed_planted = 0;
  for (std::size_t sh = 0; sh < opt.shards && gidx < total_docs; ++sh) {
    bool gzip = opt.gzip_odd_shards && (sh % 2 == 1);
    std::string name = "raw_" + std::to_string(sh) + (gzip ? ".jsonl.gz" : ".jsonl");
    manifest << name << '\n';
    ShardWriter writer(dir / name, gzip);

    std::size_t in_shard = 0;
    while (gidx < total_docs && in_shard < per_shard) {
      DocBuilder b;
      Category cat = schedule[gidx];
      switch (cat) {
        case Category::kKeep: {
          std::string plant = plant_sentence(keeper_ordinal);
          for (std::size_t i = 0; i < 6; ++i) {
            if (i == 3 && !plant.empty()) b.add_line(plant);
            b.add_line(tagged(kItalianPool[(gidx + i) % kItalianPool.size()],
                              gidx * 1000 + i));
          }
          if (plant.empty()) plain_keeper_texts.push_back(b.text);
          ++keeper_ordinal;
          break;
        }
        case Category::kTooFewSentences:
          for (std::size_t i = 0; i < 4; ++i) {
            b.add_line(tagged(kItalianPool[(gidx + i) % kItalianPool.size()],
                              gidx * 1000 + i));
          }
          break;
        case Category::kTooShort:
          for (std::size_t i = 0; i < 5; ++i) {
            b.add_line("Il numero " + std::to_string(gidx * 1000 + i) +
                       " vale poco.");
          }
          break;
        case Category::kTooLong:
          for (std::size_t i = 0; corpusforge::uni::char_count(b.text) < 50500; ++i) {
            b.add_line(italian_sentence(gidx * 1000 + i, 110));
          }
          break;
        case Category::kWrongLanguage:
          for (std::size_t i = 0; i < 6; ++i) {
            b.add_line(tagged(kEnglishPool[(gidx + i) % kEnglishPool.size()],
                              gidx * 1000 + i));
          }
          break;
        case Category::kDuplicate:
          b.text = plain_keeper_texts[dup_ordinal % plain_keeper_texts.size()];
          ++dup_ordinal;
          break;
      }
      writer.write(b.text, "https://example.it/doc/" + std::to_string(gidx),
                   "2020-01-01T00:00:00Z");
      ++gidx;
      ++in_shard;
    }
    writer.close();

    // Trailing malformed lines go into the plain shards (the reader must
    // skip-and-report them). Three malformed shapes cycle: truncated JSON,
    // non-JSON junk, and a non-string text field.
    if (!gzip) {
      std::ofstream app(dir / name, std::ios::binary | std::ios::app);
      while (malformed_planted < opt.malformed_lines &&
             malformed_planted / 2 <= sh) {
        switch (malformed_planted % 3) {
          case 0: app << "{\"text\": \"unclosed\n"; break;
          case 1: app << "this is not json at all\n"; break;
          default: app << "{\"text\": 42, \"url\": \"u\"}\n"; break;
        }
        ++malformed_planted;
      }
    }
  }
  if (malformed_planted != opt.malformed_lines) {
    throw std::runtime_error("could not place all malformed lines");
  }

  return counts;
}

std::filesystem::path write_half_dirty_corpus(const std::filesystem::path& dir,
                                              std::uint64_t target_bytes,
                                              std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  SplitMix64 rng(seed);

  const std::size_t shards = 4;
  const std::uint64_t per_shard = target_bytes / shards;
  std::uint64_t tag = 0;
  std::vector<std::string> clean_texts;

  for (std::size_t sh = 0; sh < shards; ++sh) {
    std::string name = "web_" + std::to_string(sh) + ".jsonl";
    manifest << name << '\n';
    ShardWriter writer(dir / name, false);
    std::uint64_t written = 0;
    std::uint64_t clean_bytes = 0;
    std::uint64_t dirty_bytes = 0;
    while (written < per_shard) {
      bool make_clean = clean_bytes <= dirty_bytes;
      DocBuilder b;
      if (make_clean) {
        for (std::size_t i = 0; i < 8; ++i) {
          b.add_line(tagged(kItalianPool[rng.next_below(kItalianPool.size())],
                            tag * 1000 + i));
        }
        clean_texts.push_back(b.text);
        clean_bytes += b.text.size();
      } else {
        switch (rng.next_below(4)) {
          case 0:  // wrong language
            for (std::size_t i = 0; i < 8; ++i) {
              b.add_line(tagged(kEnglishPool[rng.next_below(kEnglishPool.size())],
                                tag * 1000 + i));
            }
            break;
          case 1:  // boilerplate-riddled: every sentence filtered, doc dies
            for (std::size_t i = 0; i < 8; ++i) {
              b.add_line("Questo sito utilizza cookie numero " +
                         std::to_string(tag * 1000 + i) +
                         " per la navigazione.");
            }
            break;
          case 2:  // too short after filtering
            for (std::size_t i = 0; i < 5; ++i) {
              b.add_line("Poco testo qui n " + std::to_string(tag * 1000 + i) + ".");
            }
            break;
          default:  // duplicate of an earlier clean doc
            if (clean_texts.empty()) {
              b.add_line("Ciao.");
            } else {
              b.text = clean_texts[rng.next_below(clean_texts.size())];
            }
            break;
        }
        dirty_bytes += b.text.size();
      }
      writer.write(b.text, "https://example.it/web/" + std::to_string(tag),
                   "2021-06-01T00:00:00Z");
      written += b.text.size();
      ++tag;
    }
    writer.close();
  }
  return dir / "manifest.txt";
}

std::filesystem::path write_big_clean_shard(const std::filesystem::path& dir,
                                            std::uint64_t target_bytes,
                                            std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  manifest << "big.jsonl\n";
  SplitMix64 rng(seed);
  ShardWriter writer(dir / "big.jsonl", false);
  std::uint64_t written = 0;
  std::uint64_t tag = 0;
  while (written < target_bytes) {
    // Web-article-sized documents (roughly 7-20 KB).
    std::size_t sentences = 60 + rng.next_below(120);
    std::string text = italian_document(tag, sentences);
    writer.write(text, "https://example.it/big/" + std::to_string(tag),
                 "2022-01-01T00:00:00Z");
    written += text.size();
    ++tag;
  }
  writer.close();
  return dir / "manifest.txt";
}

std::vector<std::string> tokenizer_training_lines(std::uint64_t target_bytes,
                                                  std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::string> lines;
  std::uint64_t total = 0;
  std::uint64_t tag = 0;
  while (total < target_bytes) {
    std::string line;
    std::size_t sentences = 1 + rng.next_below(3);
    for (std::size_t i = 0; i < sentences; ++i) {
      if (!line.empty()) line += ' ';
      line += tagged(kItalianPool[rng.next_below(kItalianPool.size())], tag++);
    }
    total += line.size();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace testsup
