// include/csasr/g2p.h
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

#ifndef CSASR_G2P_H_
#define CSASR_G2P_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csasr/lexicon.h"
#include "csasr/pronunciation.h"

namespace csasr {

// Joint grapheme/phoneme unit. `letters` is 0..2 UTF-8 code points
// concatenated; `phonemes` is 0..2 phonemes; never both empty.
struct Graphone {
  std::string letters;
  PhonemeSequence phonemes;

  auto operator<=>(const Graphone &) const = default;
};

using GraphoneSequence = std::vector<Graphone>;

struct AlignOptions {
  int max_letters = 2;
  int max_phonemes = 2;
  int em_iters = 10;
  // Fixed weight size_penalty^max(0, letters + phonemes - 2) per graphone.
  // Plain maximum likelihood would always prefer the largest units.
  double size_penalty = 0.5;
  // Graphones with no letters; never two in a row.
  bool allow_insertions = false;
};

struct AlignResult {
  // One segmentation per admissible entry, in input order.
  std::vector<GraphoneSequence> alignments;
  std::vector<std::size_t> aligned;  // input index of each alignment
  std::vector<std::size_t> skipped;  // input indices with no admissible segmentation
  // Weighted log-likelihood at the start of every iteration plus once after
  // the last M-step (em_iters + 1 values).
  std::vector<double> log_likelihood;
  std::map<Graphone, double> probabilities;
};

// Unigram-graphone EM over all monotone segmentations (forward-backward),
// followed by a Viterbi pass per entry.
AlignResult AlignLexicon(std::span<const PronEntry> entries, const AlignOptions &opts = {});

// Graphone n-gram model with interpolated Witten-Bell smoothing down to a
// uniform distribution over the inventory plus the end marker.
class G2pModel {
 public:
  static G2pModel Train(const std::vector<GraphoneSequence> &alignments, int order,
                        const AlignOptions &space = {});

  int Order() const { return order_; }
  const std::vector<Graphone> &Inventory() const { return inventory_; }
  int Id(const Graphone &g) const;  // -1 when absent
  int EndId() const { return static_cast<int>(inventory_.size()); }
  int BeginId() const { return static_cast<int>(inventory_.size()) + 1; }
  const std::set<std::string> &Alphabet() const { return alphabet_; }
  bool AllowInsertions() const { return allow_insertions_; }

  // Natural-log smoothed probability of `next` after `history` (token ids;
  // BeginId() may start the history). Longer histories are truncated.
  double LogProb(const std::vector<int> &history, int next) const;
  // Maximum-likelihood estimate c(h, next) / c(h) for an exact history.
  double RelativeFrequency(const std::vector<int> &history, int next) const;
  // Observed histories of every order (for normalization checks).
  std::vector<std::vector<int>> Contexts() const;

  // Joint log-probability of one segmentation, end marker included.
  double ScoreAlignment(const GraphoneSequence &seq) const;
  // Best joint log-probability over segmentations of (word, phonemes);
  // -inf when none exists.
  double ScorePronunciation(std::string_view word, const PhonemeSequence &phonemes) const;

  // Graphones whose letters equal `letters` exactly.
  const std::vector<int> &GraphonesWithLetters(const std::string &letters) const;

  std::string Serialize() const;
  static G2pModel Deserialize(std::string_view text);

 private:
  struct Context {
    std::map<int, long> next;
    long total = 0;
  };
  void Index();
  int Intern(const Graphone &g);

  int order_ = 3;
  bool allow_insertions_ = false;
  std::vector<Graphone> inventory_;
  std::map<Graphone, int> ids_;
  std::map<std::string, std::vector<int>> by_letters_;
  std::set<std::string> alphabet_;
  // counts_[k]: histories of length k.
  std::vector<std::map<std::vector<int>, Context>> counts_;
};

struct PredictOptions {
  std::size_t beam = 10;
};

// Up to n distinct pronunciations of `word`, best first. Scores are log
// posteriors over all completions the search reached. Throws ConfigError on
// letters outside the model alphabet; returns empty when nothing completes.
std::vector<ScoredPronunciation> Predict(const G2pModel &model, std::string_view word,
                                         std::size_t n, const PredictOptions &opts = {});

struct PredictOutcome {
  std::string word;
  std::vector<ScoredPronunciation> prons;
  std::string error;  // non-empty when the word was rejected
};

// Per-word prediction over an immutable model; jobs <= 1 is the serial kernel.
std::vector<PredictOutcome> PredictBatch(const G2pModel &model,
                                         const std::vector<std::string> &words, std::size_t n,
                                         const PredictOptions &opts, int jobs);

struct G2pTrainOptions {
  AlignOptions align;
  int order = 3;
  // Set (b) entries are repeated this many times.
  int b_weight = 1;
};

struct G2pTrainResult {
  G2pModel model;
  AlignResult alignment;
};

// Aligns set (a) followed by set (b) x b_weight, then trains the n-gram.
G2pTrainResult TrainG2p(std::span<const PronEntry> set_a, std::span<const PronEntry> set_b,
                        const G2pTrainOptions &opts = {});

}  // namespace csasr

#endif  // CSASR_G2P_H_
