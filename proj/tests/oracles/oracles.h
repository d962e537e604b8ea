// tests/oracles/oracles.h
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

#ifndef CSASR_TESTS_ORACLES_H_
#define CSASR_TESTS_ORACLES_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "csasr/arpa.h"
#include "csasr/confnet.h"
#include "csasr/enrich.h"
#include "csasr/fst.h"
#include "csasr/g2p.h"
#include "csasr/lexicon.h"
#include "csasr/pronunciation.h"

namespace oracle {

using csasr::Label;

// Minimum cost of reading `in` on the input tape while writing `out`,
// by Dijkstra over (state, in position, out position). +inf when impossible.
// Costs must be non-negative.
double TransduceCost(const csasr::Wfst &f, const std::vector<Label> &in,
                     const std::vector<Label> &out);

struct EnumeratedPath {
  std::vector<Label> in;
  std::vector<Label> out;
  double cost = 0.0;
  std::vector<std::pair<csasr::StateId, std::size_t>> arcs;  // (src, arc index)
};

// Every accepting path with at most `max_arcs` arcs.
std::vector<EnumeratedPath> EnumeratePaths(const csasr::Wfst &f, std::size_t max_arcs);

// All label strings over [1, alphabet] of length <= max_len.
std::vector<std::vector<Label>> AllStrings(int alphabet, std::size_t max_len);

// log10 P(<s> words </s>) by the textbook backoff recursion.
double BackoffLog10(const csasr::ArpaModel &model, const std::vector<std::string> &words);

// Every per-slot selection, deduplicated by sequence (best score kept),
// ranked by score then sequence.
std::vector<csasr::ScoredPronunciation> CnSelections(const csasr::ConfusionNetwork &cn);

std::size_t Levenshtein(const std::vector<std::string> &a, const std::vector<std::string> &b);

// Every segmentation of `word` into inventory graphones, best joint score per
// phoneme sequence, normalized into log posteriors, ranked.
std::vector<csasr::ScoredPronunciation> G2pExhaustive(const csasr::G2pModel &model,
                                                      const std::string &word);

struct WordHypothesis {
  std::vector<std::string> words;
  double cost = 0.0;
};

// Every word sequence whose concatenated pronunciations spell `phonemes`,
// scored by the cheapest G path; ranked by cost then words.
std::vector<WordHypothesis> DecodeByEnumeration(const csasr::PhonemeSequence &phonemes,
                                                const csasr::Lexicon &lex, const csasr::Wfst &g);

// Random graph over labels [0, alphabet] (0 = epsilon) with non-negative
// costs. Epsilon arcs on the flagged tapes only go to higher state ids.
struct RandomFstSpec {
  int states = 4;
  int alphabet = 3;
  int max_arcs_per_state = 3;
  double input_eps = 0.0;   // probability of an epsilon input label
  double output_eps = 0.0;  // probability of an epsilon output label
  bool acceptor = false;
  double min_cost = 0.0;
  double max_cost = 2.0;
};
csasr::Wfst RandomFst(std::mt19937_64 &rng, const RandomFstSpec &spec, csasr::SymbolTablePtr syms);

// Table with <eps> plus symbols s1..sN as ids 1..N.
csasr::SymbolTablePtr NumberedSymbols(int n);

struct EnrichCheck {
  std::string violation;  // empty when every invariant holds
  std::size_t nl_paths = 0;
  std::size_t mirrored_paths = 0;
};

// NL-path preservation, the FL-path mirror (cost delta -k ln scale within
// `tolerance`) and arc-count arithmetic, over paths of at most `max_arcs` arcs.
EnrichCheck CheckEnrichment(const csasr::Wfst &g, const csasr::Wfst &enriched,
                            const std::vector<csasr::WordPair> &pairs, double scale,
                            std::size_t max_arcs, double tolerance);

// Small G-like acceptors (1..6 states) over 我们, 打, 篮球, 足球 with forward
// epsilon arcs, `count` of them from `seed`.
std::vector<csasr::Wfst> ToyGGraphs(std::uint64_t seed, int count);

}  // namespace oracle

#endif  // CSASR_TESTS_ORACLES_H_
