// include/csasr/enrich.h
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

#ifndef CSASR_ENRICH_H_
#define CSASR_ENRICH_H_

#include <string>
#include <string_view>
#include <vector>

#include "csasr/fst.h"

namespace csasr {

// A translation pair: the foreign word borrows the native word's arcs.
struct WordPair {
  std::string nl_word;
  std::string fl_word;

  bool operator==(const WordPair &) const = default;
};

// Throws ConfigError if the words are equal or either is a reserved symbol.
void ValidateWordPair(const WordPair &pair);

struct EnrichConfig {
  // Probability-space multiplier: new cost = old cost - ln(scale).
  double scale = 1.0;
  // Fail (rather than skip) when a native word has no arcs.
  bool strict = false;
  // Worker count for collecting arcs per pair; 1 runs the serial kernel.
  int jobs = 1;
};

enum class PairStatus { kOk, kSkippedNlWordAbsent };

struct PairReport {
  WordPair pair;
  std::size_t arcs_added = 0;
  PairStatus status = PairStatus::kOk;
};

struct EnrichReport {
  std::vector<PairReport> pairs;
};

struct EnrichResult {
  Wfst graph;
  EnrichReport report;
};

// For every pair and every arc labeled nl_word, adds a parallel arc labeled
// fl_word with cost (original - ln scale). Original arcs, states and final
// costs are untouched; new arcs follow the originals of each state in pair
// order. Inserting the same (src, dst, fl_word) twice is an error.
EnrichResult Enrich(const Wfst &g, const std::vector<WordPair> &pairs,
                    const EnrichConfig &cfg = {});

// `fl_word<TAB>nl_word<TAB>arcs_added<TAB>status`, one line per pair.
std::string FormatEnrichReport(const EnrichReport &report);

// `nl_word<TAB>fl_word` per line; '#' lines and blank lines are skipped.
std::vector<WordPair> ParseWordPairs(std::string_view text);

}  // namespace csasr

#endif  // CSASR_ENRICH_H_
