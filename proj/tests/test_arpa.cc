// tests/test_arpa.cc
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
#include "csasr/util.h"
#include "doctest.h"
#include "oracles.h"

using namespace csasr;

namespace {

const double kLn10 = std::log(10.0);

std::string Golden() { return ReadFile(std::string(CSASR_TEST_DATA_DIR) + "/golden.arpa"); }

NgramEntry E(std::vector<std::string> tokens, double lp, std::optional<double> bow = std::nullopt) {
  return {std::move(tokens), lp, bow};
}

// Hand-built bigram model over five words.
ArpaModel FiveWordBigram() {
  return ArpaModel::FromEntries(
      2, {E({"<s>"}, -99, -0.5), E({"</s>"}, -1.0), E({"a"}, -0.7, -0.2), E({"b"}, -0.8, -0.3),
          E({"c"}, -0.9), E({"d"}, -1.1), E({"e"}, -1.2), E({"<s>", "a"}, -0.3),
          E({"a", "b"}, -0.4), E({"b", "</s>"}, -0.2), E({"a", "c"}, -0.5)});
}

double MinPathCost(const Wfst &g, const std::vector<std::string> &words) {
  auto paths = ShortestPath(Compose(AcceptSequence(words, g.InputSymbolsPtr()), g), 1);
  return paths.empty() ? kInfinity : paths[0].total_cost;
}

ArpaModel RandomModel(std::mt19937_64 &rng, int vocab, int order) {
  std::uniform_real_distribution<double> lp(-2.0, -0.05);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::string> words;
  for (int i = 0; i < vocab; ++i) words.push_back("w" + std::to_string(i));
  std::vector<NgramEntry> entries{E({"<s>"}, -99, lp(rng)), E({"</s>"}, lp(rng))};
  for (const auto &w : words) entries.push_back(E({w}, lp(rng), lp(rng)));
  std::vector<std::vector<std::string>> prev_histories{{"<s>"}};
  for (const auto &w : words) prev_histories.push_back({w});
  for (int k = 2; k <= order; ++k) {
    std::vector<std::vector<std::string>> next;
    for (const auto &h : prev_histories) {
      std::vector<std::string> succ = words;
      succ.push_back("</s>");
      for (const auto &w : succ) {
        if (coin(rng) > 0.4) continue;
        auto t = h;
        t.push_back(w);
        bool can_extend = k < order && w != "</s>";
        entries.push_back(can_extend && coin(rng) < 0.7 ? E(t, lp(rng), lp(rng)) : E(t, lp(rng)));
        if (can_extend) next.push_back(t);
      }
    }
    prev_histories = std::move(next);
  }
  return ArpaModel::FromEntries(order, std::move(entries));
}

}  // namespace

TEST_CASE("minimal unigram model") {
  ArpaModel m = ArpaModel::Parse("\\data\\\nngram 1=3\n\n\\1-grams:\n-1\t<s>\n-0.5\t</s>\n-0.3\ta\n\n\\end\\\n");
  CHECK(m.MaxOrder() == 1);
  CHECK(m.Vocabulary().size() == 3);
}

TEST_CASE("declared counts match the parsed sections") {
  ArpaModel m = ArpaModel::Parse(ReadFile(std::string(CSASR_TOY_DATA_DIR) + "/g0.arpa"));
  CHECK(m.MaxOrder() == 2);
  CHECK(m.Entries(1).size() == 5);
  CHECK(m.Entries(2).size() == 4);
  CHECK(m.NumEntries() == 9);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string &text) -> std::size_t {
    try {
      ArpaModel::Parse(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return 0;
  };
  // Count mismatch: the header promises 4 unigrams.
  CHECK(line_of("\\data\\\nngram 1=4\n\n\\1-grams:\n-1\t<s>\n-1\t</s>\n-1\ta\n\n\\end\\\n") == 9);
  // Dangling prefix: "b" is not a unigram.
  CHECK(line_of("\\data\\\nngram 1=3\nngram 2=1\n\n\\1-grams:\n-1\t<s>\n-1\t</s>\n-1\ta\n\n"
                "\\2-grams:\n-1\tb a\n\n\\end\\\n") == 11);
  // Malformed section header.
  CHECK(line_of("\\data\\\nngram 1=1\n\n\\one-grams:\n") == 4);
  CHECK(line_of("nonsense\n") == 1);
  // Missing sentence markers.
  CHECK_THROWS_AS(ArpaModel::Parse("\\data\\\nngram 1=1\n\n\\1-grams:\n-1\ta\n\n\\end\\\n"), ParseError);
  // Positive log probabilities are not probabilities.
  CHECK(line_of("\\data\\\nngram 1=2\n\n\\1-grams:\n-1\t<s>\n0.5\t</s>\n\n\\end\\\n") == 6);
}

TEST_CASE("serialization of the golden model is byte exact") {
  std::string text = Golden();
  ArpaModel m = ArpaModel::Parse(text);
  CHECK(m.Serialize() == text);
  ArpaModel again = ArpaModel::Parse(m.Serialize());
  for (int k = 1; k <= m.MaxOrder(); ++k) CHECK(again.Entries(k) == m.Entries(k));
}

TEST_CASE("unigram-only scoring uses direct lookups") {
  ArpaModel m = ArpaModel::FromEntries(
      1, {E({"<s>"}, -99), E({"</s>"}, std::log10(0.25)), E({"a"}, std::log10(0.5))});
  CHECK(ScoreSentence(m, {"a"}) == doctest::Approx(std::log10(0.5) + std::log10(0.25)).epsilon(1e-12));
}

TEST_CASE("hand-computed backoff on a five-word bigram model") {
  // P(a|<s>) = -0.3, P(b|a) = -0.4, P(c|b) = bow(b) + P(c) = -0.3 - 0.9,
  // P(</s>|c) = P(</s>) = -1.0 since c lists no backoff weight.
  ArpaModel m = FiveWordBigram();
  CHECK(std::abs(ScoreSentence(m, {"a", "b", "c"}) - (-2.9)) < 1e-9);
  CHECK(std::abs(oracle::BackoffLog10(m, {"a", "b", "c"}) - (-2.9)) < 1e-9);
}

TEST_CASE("scores ignore entry order in the file") {
  std::mt19937_64 rng(2);
  ArpaModel m = FiveWordBigram();
  std::vector<NgramEntry> entries;
  for (int k = 1; k <= 2; ++k) entries.insert(entries.end(), m.Entries(k).begin(), m.Entries(k).end());
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(entries.begin(), entries.end(), rng);
    ArpaModel shuffled = ArpaModel::FromEntries(2, entries);
    for (const auto &s : std::vector<std::vector<std::string>>{{"a", "b", "c"}, {"e", "d"}, {"a"}})
      CHECK(ScoreSentence(shuffled, s) == ScoreSentence(m, s));
  }
}

TEST_CASE("out-of-vocabulary policy") {
  ArpaModel m = ArpaModel::Parse(Golden());
  try {
    ScoreSentence(m, {"always", "basketball"});
    FAIL("expected an error");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("basketball") != std::string::npos);
  }
  ScoreOptions lenient;
  lenient.strict = false;
  CHECK(ScoreSentence(m, {"always", "basketball"}, lenient) ==
        ScoreSentence(m, {"always", "<unk>"}));
  CHECK_THROWS_AS(ScoreSentence(m, {}), ConfigError);
}

TEST_CASE("unigram G is a single state with self loops") {
  ArpaModel m = ArpaModel::FromEntries(
      1, {E({"<s>"}, -99), E({"</s>"}, -0.5), E({"x"}, -0.4), E({"y"}, -0.6), E({"z"}, -0.9)});
  Wfst g = BuildG(m);
  CHECK(g.NumStates() == 1);
  CHECK(g.NumArcs() == 3);
  for (const Arc &a : g.Arcs(0)) CHECK(a.dst == 0);
  CHECK(g.Final(0) == doctest::Approx(0.5 * kLn10).epsilon(1e-15));
}

TEST_CASE("toy G contains the path for 我们 打 篮球") {
  Wfst g = BuildG(ArpaModel::Parse(ReadFile(std::string(CSASR_TOY_DATA_DIR) + "/g0.arpa")));
  auto paths = ShortestPath(Compose(AcceptSequence(std::vector<std::string>{"我们", "打", "篮球"},
                                                   g.InputSymbolsPtr()),
                                    g),
                            1);
  REQUIRE(paths.size() == 1);
  CHECK(LabelsToSymbols(paths[0].osequence, g.OutputSymbols()) ==
        std::vector<std::string>{"我们", "打", "篮球"});
  // Direct bigrams all the way: -(-0.1 - 0.2 - 0.15 - 0.1) * ln 10.
  CHECK(paths[0].total_cost == doctest::Approx(0.55 * kLn10).epsilon(1e-12));
}

TEST_CASE("G arc count: one per word entry with mass plus one backoff per history") {
  ArpaModel m = ArpaModel::Parse(Golden());
  Wfst g = BuildG(m);
  std::size_t word_arcs = 0, histories = 0;
  for (int k = 1; k <= m.MaxOrder(); ++k)
    for (const NgramEntry &e : m.Entries(k)) {
      if (e.tokens.back() != "</s>" && e.HasMass()) ++word_arcs;
      if (k < m.MaxOrder() && e.tokens.back() != "</s>") ++histories;
    }
  CHECK(g.NumStates() == histories + 1);
  CHECK(g.NumArcs() == word_arcs + histories);
}

TEST_CASE("G path cost agrees with the backoff scorer on random sentences") {
  std::mt19937_64 rng(13);
  ArpaModel models[] = {RandomModel(rng, 5, 1), RandomModel(rng, 5, 2), FiveWordBigram()};
  int exact = 0, shortcuts = 0;
  for (const ArpaModel &m : models) {
    Wfst g = BuildG(m);
    std::vector<std::string> vocab;
    for (const auto &w : m.Vocabulary())
      if (w != "<s>" && w != "</s>") vocab.push_back(w);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1), len(1, 5);
    for (int s = 0; s < 20; ++s) {
      std::vector<std::string> sent(len(rng));
      for (auto &w : sent) w = vocab[pick(rng)];
      double expect = -oracle::BackoffLog10(m, sent) * kLn10;
      CHECK(std::abs(ScoreSentence(m, sent) * kLn10 + expect) < 1e-9);
      double got = MinPathCost(g, sent);
      CHECK(got <= expect + 1e-9);
      if (std::abs(got - expect) <= 1e-6)
        ++exact;
      else
        ++shortcuts;
    }
  }
  MESSAGE("exact: " << exact << ", backoff shortcuts: " << shortcuts);
  CHECK(exact > 0);
}

TEST_CASE("G never costs more than the backoff score on small random models") {
  std::mt19937_64 rng(29);
  int exact = 0, shortcuts = 0;
  for (int trial = 0; trial < 30; ++trial) {
    ArpaModel m = RandomModel(rng, 1 + trial % 6, 1 + trial % 3);
    Wfst g = BuildG(m);
    std::vector<std::string> vocab;
    for (const auto &w : m.Vocabulary())
      if (w != "<s>" && w != "</s>") vocab.push_back(w);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1), len(1, 5);
    for (int s = 0; s < 10; ++s) {
      std::vector<std::string> sent(len(rng));
      for (auto &w : sent) w = vocab[pick(rng)];
      double expect = -oracle::BackoffLog10(m, sent) * kLn10;
      double got = MinPathCost(g, sent);
      CHECK(got <= expect + 1e-9);
      (std::abs(got - expect) <= 1e-6 ? exact : shortcuts)++;
    }
  }
  MESSAGE("exact: " << exact << ", backoff shortcuts: " << shortcuts);
}
