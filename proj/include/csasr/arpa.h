// include/csasr/arpa.h
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

#ifndef CSASR_ARPA_H_
#define CSASR_ARPA_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csasr/fst.h"

namespace csasr {

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
// ARPA convention for "no direct probability mass".
inline constexpr double kNoMassLogprob = -99.0;

// log10 probability and optional log10 backoff weight for one n-gram.
struct NgramEntry {
  std::vector<std::string> tokens;
  double logprob = 0.0;
  std::optional<double> backoff;

  bool HasMass() const { return logprob > kNoMassLogprob; }
  bool operator==(const NgramEntry &) const = default;
};

// A backoff n-gram model as it appears in ARPA text. Entries keep file order
// within each order so that serialization reproduces canonical input.
class ArpaModel {
 public:
  // Validates hierarchical closure and sentence markers. Throws ConfigError.
  static ArpaModel FromEntries(int max_order, std::vector<NgramEntry> entries);
  // Throws ParseError carrying the offending line number.
  static ArpaModel Parse(std::string_view text);
  std::string Serialize() const;

  int MaxOrder() const { return static_cast<int>(by_order_.size()); }
  const std::vector<NgramEntry> &Entries(int order) const { return by_order_.at(order - 1); }
  std::size_t NumEntries() const;
  const NgramEntry *Find(const std::vector<std::string> &tokens) const;
  bool InVocabulary(const std::string &word) const { return Find({word}) != nullptr; }
  // Unigram tokens in file order.
  std::vector<std::string> Vocabulary() const;

 private:
  // Returns an error message, or empty when `e` is acceptable given the
  // entries already added.
  std::string CheckEntry(const NgramEntry &e) const;
  void Add(NgramEntry e);

  std::vector<std::vector<NgramEntry>> by_order_;
  std::map<std::vector<std::string>, std::pair<int, std::size_t>> index_;
};

struct ScoreOptions {
  // Strict: OOV words are an error. Otherwise they map to `unk` when the
  // model has it.
  bool strict = true;
  std::string unk = "<unk>";
};

// log10 P(word | history) by the backoff recursion. `history` is truncated to
// the model order.
double ConditionalLogProb(const ArpaModel &model, std::vector<std::string> history,
                          const std::string &word);

// log10 probability of `<s> words </s>`.
double ScoreSentence(const ArpaModel &model, const std::vector<std::string> &words,
                     const ScoreOptions &opts = {});

// Backoff G acceptor: one state per history, word arcs with cost
// -ln(10^logprob), epsilon backoff arcs, final costs from `</s>`.
Wfst BuildG(const ArpaModel &model);

}  // namespace csasr

#endif  // CSASR_ARPA_H_
