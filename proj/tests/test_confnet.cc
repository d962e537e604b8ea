// tests/test_confnet.cc
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
#include <random>

#include "csasr/confnet.h"
#include "csasr/error.h"
#include "doctest.h"
#include "oracles.h"

using namespace csasr;

namespace {

ConfusionNetwork Always() {
  return ConfusionNetwork::Build(
      {ParsePhonemes("OU W EI Z"), ParsePhonemes("OU W I Z"), ParsePhonemes("OU W EI S")});
}

PhonemeSequence RandomSequence(std::mt19937_64 &rng, int alphabet, int max_len) {
  static const char *kPhones[] = {"A", "B", "C", "D"};
  PhonemeSequence s(1 + rng() % max_len);
  for (auto &p : s) p = kPhones[rng() % alphabet];
  return s;
}

}  // namespace

TEST_CASE("three decodings of always") {
  ConfusionNetwork cn = Always();
  REQUIRE(cn.Slots().size() == 4);
  CHECK(cn.Slots()[0] == ConfusionNetwork::Slot{{"OU", 3}});
  CHECK(cn.Slots()[1] == ConfusionNetwork::Slot{{"W", 3}});
  CHECK(cn.Slots()[2] == ConfusionNetwork::Slot{{"EI", 2}, {"I", 1}});
  CHECK(cn.Slots()[3] == ConfusionNetwork::Slot{{"Z", 2}, {"S", 1}});
  CHECK(cn.Report() == "0: OU(3)\n1: W(3)\n2: EI(2) I(1)\n3: Z(2) S(1)\n");

  auto best = NBest(cn, 1);
  REQUIRE(best.size() == 1);
  CHECK(PhonemesToString(best[0].phonemes) == "OU W EI Z");
  CHECK(best[0].score == 10);

  auto three = NBest(cn, 3);
  REQUIRE(three.size() == 3);
  CHECK(PhonemesToString(three[1].phonemes) == "OU W EI S");
  CHECK(PhonemesToString(three[2].phonemes) == "OU W I Z");
  CHECK(three[1].score == 9);
  CHECK(three[2].score == 9);
}

TEST_CASE("single sequence") {
  ConfusionNetwork cn = ConfusionNetwork::Build({ParsePhonemes("A B")});
  CHECK(cn.Report() == "0: A(1)\n1: B(1)\n");
  auto best = NBest(cn, 1);
  CHECK(best[0].phonemes == ParsePhonemes("A B"));
  CHECK(best[0].score == 2);
}

TEST_CASE("an insertion opens a slot with an epsilon vote") {
  ConfusionNetwork cn = ConfusionNetwork::Build({ParsePhonemes("A B"), ParsePhonemes("A C B")});
  REQUIRE(cn.Slots().size() == 3);
  CHECK(cn.Slots()[1] == ConfusionNetwork::Slot{{"C", 1}, {std::string(kCnEpsilon), 1}});
  CHECK(cn.Report() == "0: A(2)\n1: <eps>(1) C(1)\n2: B(2)\n");
}

TEST_CASE("deletions vote epsilon and epsilon can win a slot") {
  ConfusionNetwork cn = ConfusionNetwork::Build(
      {ParsePhonemes("A X B"), ParsePhonemes("A B"), ParsePhonemes("A B")});
  CHECK(cn.Slots()[1] == ConfusionNetwork::Slot{{"X", 1}, {std::string(kCnEpsilon), 2}});
  auto best = NBest(cn, 2);
  CHECK(best[0].phonemes == ParsePhonemes("A B"));
  CHECK(best[0].score == 8);
  CHECK(best[1].phonemes == ParsePhonemes("A X B"));
  CHECK(best[1].score == 7);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(ConfusionNetwork::Build({}), ConfigError);
  CHECK_THROWS_AS(ConfusionNetwork::Build({PhonemeSequence{}}), ConfigError);
  CHECK_THROWS_AS(ConfusionNetwork::Build({{"A", "<eps>"}}), ConfigError);
  CHECK_THROWS_AS(NBest(Always(), 0), ConfigError);
  CHECK_THROWS_AS(ConfusionNetwork::ParseReport("0: A(1)\n1 B(1)\n"), ParseError);
  CHECK_THROWS_AS(ConfusionNetwork::ParseReport("0: A(1)\n1: B(2)\n"), ParseError);
  CHECK_THROWS_AS(ConfusionNetwork::ParseReport("1: A(1)\n"), ParseError);
}

TEST_CASE("report round-trips") {
  CHECK(ConfusionNetwork::ParseReport(Always().Report()) == Always());
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PhonemeSequence> seqs(1 + rng() % 5);
    for (auto &s : seqs) s = RandomSequence(rng, 4, 5);
    ConfusionNetwork cn = ConfusionNetwork::Build(seqs);
    CHECK(ConfusionNetwork::ParseReport(cn.Report()) == cn);
  }
}

TEST_CASE("votes are conserved in every slot") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PhonemeSequence> seqs(1 + rng() % 6);
    for (auto &s : seqs) s = RandomSequence(rng, 3, 5);
    ConfusionNetwork cn = ConfusionNetwork::Build(seqs);
    CHECK(cn.TotalInputs() == static_cast<int>(seqs.size()));
    std::size_t longest = 0;
    for (const auto &s : seqs) longest = std::max(longest, s.size());
    CHECK(cn.Slots().size() >= longest);
    for (const auto &slot : cn.Slots()) {
      int sum = 0;
      for (const auto &[p, c] : slot) sum += c;
      CHECK(sum == cn.TotalInputs());
    }
  }
}

TEST_CASE("a doubled sequence wins regardless of merge order") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    PhonemeSequence s = RandomSequence(rng, 3, 4), t = RandomSequence(rng, 3, 4);
    if (s == t) continue;
    std::vector<PhonemeSequence> seqs = {s, s, t};
    std::sort(seqs.begin(), seqs.end());
    do {
      CHECK(NBest(ConfusionNetwork::Build(seqs), 1)[0].phonemes == s);
    } while (std::next_permutation(seqs.begin(), seqs.end()));
  }
}

TEST_CASE("nbest matches exhaustive selection over small inputs") {
  std::mt19937_64 rng(17);
  std::size_t compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<PhonemeSequence> seqs(1 + rng() % 4);
    for (auto &s : seqs) s = RandomSequence(rng, 3, 4);
    ConfusionNetwork cn = ConfusionNetwork::Build(seqs);
    auto expect = oracle::CnSelections(cn);
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, expect.size(), expect.size() + 5}) {
      auto got = NBest(cn, n);
      std::vector<ScoredPronunciation> want(expect.begin(),
                                            expect.begin() + std::min(n, expect.size()));
      CHECK(got == want);
      for (std::size_t r = 1; r < got.size(); ++r) CHECK(got[r].score <= got[r - 1].score);
      ++compared;
    }
  }
  CHECK(compared == 1600);
}
