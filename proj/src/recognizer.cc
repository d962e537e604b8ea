// src/recognizer.cc
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

#include "csasr/recognizer.h"

#include <set>

#include "csasr/error.h"
#include "csasr/util.h"

namespace csasr {

namespace {

constexpr std::size_t kMaxPathRequest = std::size_t{1} << 16;

}  // namespace

std::string_view StatusName(DecodeStatus status) {
  return status == DecodeStatus::kOk ? "ok" : "no_path";
}

std::vector<DecodeResult> Decode(const PhonemeSequence &phonemes, const Wfst &l, const Wfst &g,
                                 std::size_t n) {
  if (n == 0) throw ConfigError("decode: n must be >= 1");
  if (!l.OutputSymbols().CompatibleWith(g.InputSymbols()))
    throw ConfigError("decode: lexicon output symbols do not match the grammar's symbols");
  for (const std::string &p : phonemes)
    if (l.InputSymbols().Find(p) == kNoLabel || p == kEpsilonSymbol)
      throw ConfigError("decode: phoneme '" + p + "' is not in the lexicon's phoneme table");

  Wfst input = AcceptSequence(phonemes, l.InputSymbolsPtr());
  Wfst search = Compose(Compose(input, Closure(l)), g);

  std::vector<DecodeResult> out;
  for (std::size_t request = n;; request = std::min(request * 2, kMaxPathRequest)) {
    std::vector<Path> paths = ShortestPath(search, request);
    out.clear();
    std::set<std::vector<Label>> seen;
    for (const Path &p : paths) {
      if (!seen.insert(p.osequence).second) continue;
      out.push_back({LabelsToSymbols(p.osequence, search.OutputSymbols()), p.total_cost,
                     DecodeStatus::kOk});
      if (out.size() == n) break;
    }
    if (out.size() == n || paths.size() < request || request == kMaxPathRequest) break;
  }
  if (out.empty()) out.push_back(DecodeResult{});
  return out;
}

std::vector<ScaleRow> CompareScales(const PhonemeSequence &phonemes, const Wfst &l, const Wfst &g,
                                    const std::vector<WordPair> &pairs,
                                    const std::vector<double> &scales) {
  if (scales.empty()) throw ConfigError("compare_scales: no scales");
  std::vector<ScaleRow> rows;
  for (double scale : scales) {
    EnrichConfig cfg;
    cfg.scale = scale;
    EnrichResult enriched = Enrich(g, pairs, cfg);
    rows.push_back({scale, Decode(phonemes, l, enriched.graph, 1).front()});
  }
  return rows;
}

std::string FormatDecodeResults(const std::vector<DecodeResult> &results) {
  if (results.size() == 1 && results.front().status == DecodeStatus::kNoPath)
    return "# status: no_path\n";
  std::string out;
  for (std::size_t r = 0; r < results.size(); ++r)
    out += std::to_string(r + 1) + '\t' + FormatDouble(results[r].total_cost) + '\t' +
           Join(results[r].words, " ") + '\n';
  return out;
}

std::string FormatScaleRows(const std::vector<ScaleRow> &rows) {
  std::string out;
  for (const ScaleRow &row : rows) {
    out += FormatDouble(row.scale) + '\t' + std::string(StatusName(row.best.status)) + '\t';
    out += row.best.status == DecodeStatus::kOk ? FormatDouble(row.best.total_cost) : "inf";
    out += '\t' + Join(row.best.words, " ") + '\n';
  }
  return out;
}

}  // namespace csasr
