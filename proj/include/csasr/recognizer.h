// include/csasr/recognizer.h
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

#ifndef CSASR_RECOGNIZER_H_
#define CSASR_RECOGNIZER_H_

#include <string>
#include <string_view>
#include <vector>

#include "csasr/enrich.h"
#include "csasr/fst.h"
#include "csasr/pronunciation.h"

namespace csasr {

enum class DecodeStatus { kOk, kNoPath };

std::string_view StatusName(DecodeStatus status);

struct DecodeResult {
  std::vector<std::string> words;
  double total_cost = kInfinity;
  DecodeStatus status = DecodeStatus::kNoPath;
};

// Shortest paths of accept(phonemes) o closure(l) o g, collapsed to distinct
// word sequences (cheapest alignment wins). Returns one kNoPath result when
// nothing is accepted. Throws ConfigError on unknown phonemes or when l's
// output table does not match g.
std::vector<DecodeResult> Decode(const PhonemeSequence &phonemes, const Wfst &l, const Wfst &g,
                                 std::size_t n);

struct ScaleRow {
  double scale = 1.0;
  DecodeResult best;
};

// Enriches g with `pairs` at each scale and decodes the best hypothesis.
// `l` must be built against the enriched word table.
std::vector<ScaleRow> CompareScales(const PhonemeSequence &phonemes, const Wfst &l, const Wfst &g,
                                    const std::vector<WordPair> &pairs,
                                    const std::vector<double> &scales);

// `rank<TAB>cost<TAB>words`, or `# status: no_path`.
std::string FormatDecodeResults(const std::vector<DecodeResult> &results);
// `scale<TAB>status<TAB>cost<TAB>words`.
std::string FormatScaleRows(const std::vector<ScaleRow> &rows);

}  // namespace csasr

#endif  // CSASR_RECOGNIZER_H_
