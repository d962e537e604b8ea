// include/csasr/scoring.h
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

#ifndef CSASR_SCORING_H_
#define CSASR_SCORING_H_

#include <string>
#include <string_view>
#include <vector>

namespace csasr {

using TokenSequence = std::vector<std::string>;

// U+4E00..U+9FFF and U+3400..U+4DBF.
bool IsCjk(char32_t cp);

struct TokenizeOptions {
  // Punctuation from a fixed ASCII/CJK set becomes whitespace.
  bool strip_punctuation = true;
  // Lowercase ASCII letters in non-CJK tokens.
  bool fold_case = false;
};

// Each CJK character is a token; maximal runs of other non-space characters
// are tokens.
TokenSequence TokenizeCs(std::string_view text, const TokenizeOptions &opts = {});

struct WerResult {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_len = 0;
  double wer = 0.0;

  std::size_t Errors() const { return substitutions + insertions + deletions; }
};

// Unit-cost Levenshtein alignment; the backtrace prefers substitution (or
// match), then deletion, then insertion. Throws ConfigError on an empty
// reference.
WerResult Wer(const TokenSequence &reference, const TokenSequence &hypothesis);

struct CorpusWer {
  std::vector<WerResult> lines;
  WerResult total;  // sums; wer = errors / reference tokens
};

// Line-aligned reference and hypothesis texts. Blank reference lines are a
// ConfigError. `jobs` > 1 scores lines in parallel.
CorpusWer ScoreLines(const std::vector<std::string> &ref_lines,
                     const std::vector<std::string> &hyp_lines, const TokenizeOptions &opts = {},
                     int jobs = 1);

// Percentage with one decimal, e.g. "34.4".
std::string FormatPercent(double wer);

// `line<TAB>S<TAB>I<TAB>D<TAB>ref_len<TAB>wer%` rows and a `total` row.
std::string FormatCorpusWer(const CorpusWer &result);

}  // namespace csasr

#endif  // CSASR_SCORING_H_
