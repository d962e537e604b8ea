// tests/test_recognizer.cc
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

#include <algorithm>
#include <cmath>
#include <random>

#include "csasr/arpa.h"
#include "csasr/error.h"
#include "csasr/lexicon.h"
#include "csasr/recognizer.h"
#include "csasr/util.h"
#include "doctest.h"
#include "oracles.h"

using namespace csasr;

namespace {

using Words = std::vector<std::string>;

const PhonemeSequence kNl = ParsePhonemes("W O M EN D A L AN Q IU");
const PhonemeSequence kCs = ParsePhonemes("W O M EN D A B A S I K E T B OU");

struct Toy {
  Wfst g = BuildG(ArpaModel::Parse(ReadFile(std::string(CSASR_TOY_DATA_DIR) + "/g0.arpa")));
  Lexicon l0 = Lexicon::LoadTsv(ReadFile(std::string(CSASR_TOY_DATA_DIR) + "/l0.tsv"));
  Lexicon fl = Lexicon::LoadTsv(ReadFile(std::string(CSASR_TOY_DATA_DIR) + "/fl.tsv"));
  std::vector<WordPair> pairs = {{"篮球", "basketball"}};
  Wfst enriched = Enrich(g, pairs).graph;
  Lexicon merged = Merge(std::vector<Lexicon>{l0, fl});
  SymbolTable phones = SymbolTable::ReadText("");

  Wfst L(const Lexicon &lex, const Wfst &grammar) const {
    return BuildLexiconFst(lex, phones, grammar.InputSymbolsPtr());
  }
};

void ExpectMatchesOracle(const PhonemeSequence &in, const Lexicon &lex, const Wfst &l,
                         const Wfst &g) {
  auto expect = oracle::DecodeByEnumeration(in, lex, g);
  auto got = Decode(in, l, g, expect.size() + 5);
  if (expect.empty()) {
    REQUIRE(got.size() == 1);
    CHECK(got[0].status == DecodeStatus::kNoPath);
    return;
  }
  REQUIRE(got.size() == expect.size());
  CHECK(std::abs(got[0].total_cost - expect[0].cost) < 1e-9);
  std::sort(got.begin(), got.end(), [](const auto &a, const auto &b) { return a.words < b.words; });
  std::sort(expect.begin(), expect.end(), [](const auto &a, const auto &b) { return a.words < b.words; });
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].status == DecodeStatus::kOk);
    CHECK(got[i].words == expect[i].words);
    CHECK(std::abs(got[i].total_cost - expect[i].cost) < 1e-9);
  }
}

}  // namespace

TEST_CASE("native phonemes decode to the native sentence") {
  Toy t;
  auto best = Decode(kNl, t.L(t.l0, t.g), t.g, 1);
  REQUIRE(best.size() == 1);
  CHECK(best[0].status == DecodeStatus::kOk);
  CHECK(best[0].words == Words{"我们", "打", "篮球"});
  ExpectMatchesOracle(kNl, t.l0, t.L(t.l0, t.g), t.g);
}

TEST_CASE("the foreign word has no path before enrichment") {
  Toy t;
  SymbolTable phones;
  for (const char *p : {"A", "AN", "B", "D", "E", "EN", "I", "IU", "K", "L", "M", "O", "OU", "Q",
                        "S", "T", "W"})
    phones.AddSymbol(p);
  Wfst l0 = BuildLexiconFst(t.l0, phones, t.g.InputSymbolsPtr());
  auto r = Decode(kCs, l0, t.g, 3);
  REQUIRE(r.size() == 1);
  CHECK(r[0].status == DecodeStatus::kNoPath);
  CHECK(r[0].words.empty());
  CHECK(FormatDecodeResults(r) == "# status: no_path\n");
  // Without the inventory the unknown phoneme is a configuration error.
  CHECK_THROWS_AS(Decode(kCs, t.L(t.l0, t.g), t.g, 1), ConfigError);
}

TEST_CASE("the enriched graph and merged lexicon recover the foreign word") {
  Toy t;
  Wfst l = t.L(t.merged, t.enriched);
  auto best = Decode(kCs, l, t.enriched, 1);
  REQUIRE(best.size() == 1);
  CHECK(best[0].words == Words{"我们", "打", "basketball"});
  ExpectMatchesOracle(kCs, t.merged, l, t.enriched);
  ExpectMatchesOracle(kNl, t.merged, l, t.enriched);
  // Same cost as the native sentence: the arc copies its counterpart.
  CHECK(best[0].total_cost == Decode(kNl, l, t.enriched, 1)[0].total_cost);
}

TEST_CASE("scale arithmetic on the code-switched input") {
  Toy t;
  Wfst l = t.L(t.merged, t.enriched);
  auto rows = CompareScales(kCs, l, t.g, t.pairs, {0.667, 1.0, 1.5});
  REQUIRE(rows.size() == 3);
  for (const auto &r : rows) CHECK(r.best.words == Words{"我们", "打", "basketball"});
  CHECK(std::abs((rows[1].best.total_cost - rows[2].best.total_cost) - std::log(1.5)) < 1e-12);
  CHECK(std::abs((rows[0].best.total_cost - rows[1].best.total_cost) - std::log(1 / 0.667)) < 1e-12);
  CHECK(rows[0].best.total_cost > rows[1].best.total_cost);
  CHECK(rows[1].best.total_cost > rows[2].best.total_cost);

  auto nl = CompareScales(kNl, l, t.g, t.pairs, {0.667, 1.0, 1.5});
  for (const auto &r : nl) {
    CHECK(r.best.words == Words{"我们", "打", "篮球"});
    CHECK(r.best.total_cost == nl[0].best.total_cost);
  }
  CHECK(FormatScaleRows(nl).find("0.667\tok\t") == 0);
}

TEST_CASE("two foreign words move the cost by twice the log scale") {
  Toy t;
  Lexicon lex = Merge(std::vector<Lexicon>{t.merged, Lexicon::LoadTsv("play\tP L EI\tL2f\n")});
  std::vector<WordPair> pairs = {{"篮球", "basketball"}, {"打", "play"}};
  Wfst l = t.L(lex, Enrich(t.g, pairs).graph);
  PhonemeSequence in = ParsePhonemes("W O M EN P L EI B A S I K E T B OU");
  auto rows = CompareScales(in, l, t.g, pairs, {1.0, 1.5});
  CHECK(rows[0].best.words == Words{"我们", "play", "basketball"});
  CHECK(std::abs((rows[0].best.total_cost - rows[1].best.total_cost) - 2 * std::log(1.5)) < 1e-12);
}

TEST_CASE("baseline hypotheses survive enrichment unchanged") {
  Toy t;
  std::vector<WordPair> pairs = {{"篮球", "basketball"}, {"打", "play"}, {"我们", "we"}};
  Wfst enriched = Enrich(t.g, pairs).graph;
  Wfst l_before = t.L(t.l0, t.g);
  Wfst l_after = t.L(t.l0, enriched);
  std::mt19937_64 rng(71);
  const auto &entries = t.l0.Entries();
  for (int trial = 0; trial < 60; ++trial) {
    PhonemeSequence in;
    for (std::size_t k = 1 + rng() % 4; k > 0; --k) {
      const auto &p = entries[rng() % entries.size()].phonemes;
      in.insert(in.end(), p.begin(), p.end());
    }
    auto before = Decode(in, l_before, t.g, 3);
    auto after = Decode(in, l_after, enriched, 3);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(before[i].words == after[i].words);
      CHECK(before[i].total_cost == after[i].total_cost);
    }
  }
}

TEST_CASE("decode equals exhaustive enumeration on random toys") {
  std::mt19937_64 rng(73);
  auto words = std::make_shared<SymbolTable>();
  for (const char *w : {"w1", "w2", "w3", "w4"}) words->AddSymbol(w);
  static const char *kPhones[] = {"A", "B", "C"};
  std::size_t with_paths = 0;
  for (int trial = 0; trial < 500; ++trial) {
    oracle::RandomFstSpec spec;
    spec.states = 1 + static_cast<int>(rng() % 6);
    spec.alphabet = 4;
    spec.acceptor = true;
    spec.input_eps = 0.25;
    spec.min_cost = 0.1;
    Wfst g = oracle::RandomFst(rng, spec, words);
    Lexicon lex;
    for (std::size_t k = 1 + rng() % 8; k > 0; --k) {
      PhonemeSequence p(1 + rng() % 3);
      for (auto &x : p) x = kPhones[rng() % 3];
      lex.Add({"w" + std::to_string(1 + rng() % 4), p, LexSource::kL0, std::nullopt});
    }
    SymbolTable phones;
    for (const char *p : kPhones) phones.AddSymbol(p);
    Wfst l = BuildLexiconFst(lex, phones, words);
    PhonemeSequence in;
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
      const auto &p = lex.Entries()[rng() % lex.Size()].phonemes;
      in.insert(in.end(), p.begin(), p.end());
    }
    if (rng() % 4 == 0) in.push_back(kPhones[rng() % 3]);
    ExpectMatchesOracle(in, lex, l, g);
    with_paths += !oracle::DecodeByEnumeration(in, lex, g).empty();
  }
  CHECK(with_paths > 60);
}

TEST_CASE("n-best lists distinct word sequences") {
  Toy t;
  // Homophones give several alignments per word sequence.
  Lexicon lex = Merge(std::vector<Lexicon>{
      t.l0, Lexicon::LoadTsv("打\tD A\tL1\n打\tD\tL1\n我们\tW O M EN\tL2n\n")});
  Wfst l = t.L(lex, t.g);
  auto r = Decode(kNl, l, t.g, 10);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(r[i].words != r[j].words);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].total_cost >= r[i - 1].total_cost);
}

TEST_CASE("decoder argument errors") {
  Toy t;
  Wfst l = t.L(t.l0, t.g);
  CHECK_THROWS_AS(Decode(kNl, l, t.g, 0), ConfigError);
  auto other = std::make_shared<SymbolTable>();
  other->AddSymbol("zzz");
  Wfst foreign(other);
  foreign.SetStart(foreign.AddState());
  CHECK_THROWS_AS(Decode(kNl, l, foreign, 1), ConfigError);
  CHECK_THROWS_AS(Decode({"<eps>"}, l, t.g, 1), ConfigError);
  CHECK(StatusName(DecodeStatus::kOk) == "ok");
  CHECK(StatusName(DecodeStatus::kNoPath) == "no_path");
  auto ok = Decode(kNl, l, t.g, 1);
  CHECK(FormatDecodeResults(ok) == "1\t" + FormatDouble(ok[0].total_cost) + "\t我们 打 篮球\n");
}
