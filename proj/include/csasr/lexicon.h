// include/csasr/lexicon.h
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

#ifndef CSASR_LEXICON_H_
#define CSASR_LEXICON_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "csasr/fst.h"
#include "csasr/pronunciation.h"

namespace csasr {

// Where a pronunciation came from: the native lexicon (L0), linguist labels
// (L1), phone decoding of foreign (L2f) or native (L2n) speakers, and G2P
// trained on the standard lexicon alone (L3a) or with decoded data (L3ab).
enum class LexSource { kL0, kL1, kL2f, kL2n, kL3a, kL3ab };

std::string_view SourceName(LexSource source);
std::optional<LexSource> ParseSource(std::string_view name);

struct PronEntry {
  std::string word;
  PhonemeSequence phonemes;
  LexSource source = LexSource::kL0;
  std::optional<double> score;

  bool operator==(const PronEntry &) const = default;
};

class Lexicon {
 public:
  // Returns false (and keeps the first) when (word, phonemes, source) is
  // already present. Throws ConfigError on an invalid entry.
  bool Add(PronEntry entry);

  const std::vector<PronEntry> &Entries() const { return entries_; }
  std::vector<const PronEntry *> Lookup(std::string_view word) const;
  // Distinct words in first-appearance order.
  std::vector<std::string> Words() const;
  std::size_t Size() const { return entries_.size(); }
  bool Empty() const { return entries_.empty(); }

  // `word<TAB>phonemes<TAB>source<TAB>score?`; '#' lines are comments.
  static Lexicon LoadTsv(std::string_view text);
  std::string SaveTsv() const;

  bool operator==(const Lexicon &other) const { return entries_ == other.entries_; }

 private:
  using Key = std::tuple<std::string, PhonemeSequence, LexSource>;
  std::vector<PronEntry> entries_;
  std::set<Key> keys_;
};

// Union in input order. Entries that differ only by source are all kept.
Lexicon Merge(std::span<const Lexicon> lexicons);

struct LexiconFstOptions {
  // Off: every pronunciation costs 0. On: -ln(score / best score of the word).
  bool score_costs = false;
};

// Phoneme-to-word transducer: one path per entry from a shared start to a
// shared final state, emitting the word on the first arc. Phonemes missing
// from `phones` are added; every word must already be in `words`.
Wfst BuildLexiconFst(const Lexicon &lex, const SymbolTable &phones, SymbolTablePtr words,
                     const LexiconFstOptions &opts = {});

}  // namespace csasr

#endif  // CSASR_LEXICON_H_
