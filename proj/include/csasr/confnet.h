// include/csasr/confnet.h
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

#ifndef CSASR_CONFNET_H_
#define CSASR_CONFNET_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "csasr/pronunciation.h"

namespace csasr {

// Slot entry used for "this input had nothing here".
inline constexpr std::string_view kCnEpsilon = "<eps>";

// ROVER-style phoneme confusion network. Each slot counts, per phoneme, how
// many merged sequences put that phoneme there; deletions vote for epsilon,
// so every slot sums to the number of merged sequences.
class ConfusionNetwork {
 public:
  using Slot = std::map<std::string, int>;

  // Merges in input order. Throws ConfigError on an empty list.
  static ConfusionNetwork Build(const std::vector<PhonemeSequence> &sequences);

  // Aligns `seq` to the slots by edit distance (a phoneme matches a slot at
  // cost 0 if the slot already holds a vote for it, else substitution at 1;
  // insertion and deletion cost 1; backtrace prefers match/substitution,
  // then deletion, then insertion) and adds its votes.
  void Merge(const PhonemeSequence &seq);

  const std::vector<Slot> &Slots() const { return slots_; }
  int TotalInputs() const { return total_inputs_; }

  // `index: phon(count) ...` per slot, entries by count desc then phoneme.
  std::string Report() const;
  static ConfusionNetwork ParseReport(std::string_view text);

  bool operator==(const ConfusionNetwork &) const = default;

 private:
  std::vector<Slot> slots_;
  int total_inputs_ = 0;
};

// Best n distinct phoneme sequences obtained by picking one entry per slot
// (epsilon picks drop the slot), scored by the sum of picked votes. Ties are
// ordered lexicographically by phoneme strings; all-epsilon picks are skipped.
std::vector<ScoredPronunciation> NBest(const ConfusionNetwork &cn, std::size_t n);

}  // namespace csasr

#endif  // CSASR_CONFNET_H_
