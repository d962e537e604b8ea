// bench/bench_kernels.cc
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


// Serial reference (jobs = 1) against the OpenMP kernels. The argument is
// the worker count.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "csasr/confnet.h"
#include "csasr/enrich.h"
#include "csasr/fst.h"
#include "csasr/g2p.h"
#include "csasr/parallel.h"
#include "csasr/scoring.h"

using namespace csasr;

namespace {

std::string RandomWord(std::mt19937_64 &rng, std::size_t max_len) {
  std::string w(1 + rng() % max_len, 'a');
  for (char &c : w) c = "abcdefgh"[rng() % 8];
  return w;
}

PhonemeSequence RandomPhonemes(std::mt19937_64 &rng, std::size_t len) {
  static const char *kPhones[] = {"A", "B", "D", "E", "G", "I", "K", "O"};
  PhonemeSequence p(len);
  for (auto &x : p) x = kPhones[rng() % 8];
  return p;
}

const G2pModel &Model() {
  static const G2pModel model = [] {
    std::mt19937_64 rng(1);
    std::vector<PronEntry> lex;
    for (int i = 0; i < 300; ++i) {
      std::string w = RandomWord(rng, 6);
      lex.push_back({w, RandomPhonemes(rng, 1 + rng() % w.size()), LexSource::kL0, std::nullopt});
    }
    return TrainG2p(lex, {}).model;
  }();
  return model;
}

void BM_PredictBatch(benchmark::State &state) {
  const G2pModel &m = Model();
  std::mt19937_64 rng(2);
  std::vector<std::string> words;
  for (int i = 0; i < 200; ++i) words.push_back(RandomWord(rng, 6));
  for (auto _ : state)
    benchmark::DoNotOptimize(PredictBatch(m, words, 4, {}, static_cast<int>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}

// Dense acceptor: every state has one arc per word to every other state.
Wfst DenseG(int states, int words) {
  auto syms = std::make_shared<SymbolTable>();
  for (int w = 0; w < words; ++w) syms->AddSymbol("w" + std::to_string(w));
  Wfst g(syms, syms);
  for (int s = 0; s < states; ++s) g.AddState();
  g.SetStart(0);
  g.SetFinal(0, 0.5);
  for (int s = 0; s < states; ++s)
    for (int w = 1; w <= words; ++w)
      g.AddArc(s, {(s + w) % states, w, w, 0.1 * w});
  return g;
}

void BM_Enrich(benchmark::State &state) {
  static const Wfst g = DenseG(2000, 40);
  std::vector<WordPair> pairs;
  for (int w = 0; w < 40; ++w) pairs.push_back({"w" + std::to_string(w), "f" + std::to_string(w)});
  EnrichConfig cfg;
  cfg.scale = 1.5;
  cfg.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Enrich(g, pairs, cfg));
}

void BM_ScoreLines(benchmark::State &state) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vocab = {"我", "们", "打", "篮", "球", "basketball", "play"};
  std::vector<std::string> ref, hyp;
  for (int i = 0; i < 2000; ++i) {
    std::string r, h;
    for (int k = 0; k < 20; ++k) r += vocab[rng() % vocab.size()] + " ";
    for (int k = 0; k < 20; ++k) h += vocab[rng() % vocab.size()] + " ";
    ref.push_back(r);
    hyp.push_back(h);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(ScoreLines(ref, hyp, {}, static_cast<int>(state.range(0))));
}

// Per-word voting as cn-build runs it.
void BM_ConfusionNetworks(benchmark::State &state) {
  std::mt19937_64 rng(4);
  std::vector<std::vector<PhonemeSequence>> words(500);
  for (auto &decodings : words)
    for (int k = 0; k < 6; ++k) decodings.push_back(RandomPhonemes(rng, 3 + rng() % 4));
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::vector<std::vector<ScoredPronunciation>> out(words.size());
    ForEachIndex(words.size(), jobs,
                 [&](std::size_t i) { out[i] = NBest(ConfusionNetwork::Build(words[i]), 10); });
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}

}  // namespace

BENCHMARK(BM_PredictBatch)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enrich)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreLines)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConfusionNetworks)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
