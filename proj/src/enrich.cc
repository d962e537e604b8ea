// src/enrich.cc
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

#include "csasr/enrich.h"

#include <cmath>
#include <set>
#include <tuple>

#include "csasr/arpa.h"
#include "csasr/error.h"
#include "csasr/parallel.h"
#include "csasr/util.h"

namespace csasr {

namespace {

bool Reserved(const std::string &w) {
  return w == kEpsilonSymbol || w == kSentenceStart || w == kSentenceEnd;
}

std::string Describe(const WordPair &p) { return "(" + p.nl_word + ", " + p.fl_word + ")"; }

}  // namespace

void ValidateWordPair(const WordPair &pair) {
  if (pair.nl_word.empty() || pair.fl_word.empty())
    throw ConfigError("word pair " + Describe(pair) + " has an empty word");
  if (pair.nl_word == pair.fl_word)
    throw ConfigError("word pair " + Describe(pair) + " maps a word to itself");
  if (Reserved(pair.nl_word) || Reserved(pair.fl_word))
    throw ConfigError("word pair " + Describe(pair) + " uses a reserved symbol");
}

EnrichResult Enrich(const Wfst &g, const std::vector<WordPair> &pairs,
                    const EnrichConfig &cfg) {
  if (!(cfg.scale > 0.0) || !std::isfinite(cfg.scale))
    throw ConfigError("enrich: scale must be a positive finite number");
  if (!g.IsAcceptor()) throw ConfigError("enrich: G must be an acceptor");
  for (const WordPair &p : pairs) ValidateWordPair(p);

  auto syms = std::make_shared<SymbolTable>(g.InputSymbols());
  std::vector<Label> nl_labels, fl_labels;
  for (const WordPair &p : pairs) {
    nl_labels.push_back(syms->Find(p.nl_word));
    fl_labels.push_back(syms->AddSymbol(p.fl_word));
  }

  const double delta = std::log(cfg.scale);
  std::vector<std::vector<PathArc>> added(pairs.size());
  ForEachIndex(pairs.size(), cfg.jobs, [&](std::size_t i) {
    if (nl_labels[i] == kNoLabel) return;
    for (StateId s = 0; s < static_cast<StateId>(g.NumStates()); ++s)
      for (const Arc &a : g.Arcs(s))
        if (a.ilabel == nl_labels[i])
          added[i].push_back({s, {a.dst, fl_labels[i], fl_labels[i], a.cost - delta}});
  });

  EnrichReport report;
  std::set<std::tuple<StateId, StateId, Label>> occupied;
  std::set<Label> fl_set(fl_labels.begin(), fl_labels.end());
  for (StateId s = 0; s < static_cast<StateId>(g.NumStates()); ++s)
    for (const Arc &a : g.Arcs(s))
      if (fl_set.count(a.ilabel)) occupied.emplace(s, a.dst, a.ilabel);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    PairReport pr{pairs[i], added[i].size(), PairStatus::kOk};
    if (added[i].empty()) {
      if (cfg.strict)
        throw ConfigError("enrich: pair " + Describe(pairs[i]) +
                          ": native word has no arcs in G");
      pr.status = PairStatus::kSkippedNlWordAbsent;
    }
    for (const PathArc &pa : added[i]) {
      if (!occupied.emplace(pa.src, pa.arc.dst, pa.arc.ilabel).second)
        throw ConfigError("enrich: pair " + Describe(pairs[i]) + " would duplicate the '" +
                          pairs[i].fl_word + "' arc " + std::to_string(pa.src) + "->" +
                          std::to_string(pa.arc.dst));
    }
    report.pairs.push_back(std::move(pr));
  }

  Wfst out(syms);
  for (std::size_t s = 0; s < g.NumStates(); ++s) out.AddState();
  if (g.ValidState(g.Start())) out.SetStart(g.Start());
  for (StateId s = 0; s < static_cast<StateId>(g.NumStates()); ++s) {
    for (const Arc &a : g.Arcs(s)) out.AddArc(s, a);
    if (g.IsFinal(s)) out.SetFinal(s, g.Final(s));
  }
  for (const auto &list : added)
    for (const PathArc &pa : list) out.AddArc(pa.src, pa.arc);
  return {std::move(out), std::move(report)};
}

std::string FormatEnrichReport(const EnrichReport &report) {
  std::string out;
  for (const PairReport &pr : report.pairs) {
    out += pr.pair.fl_word + '\t' + pr.pair.nl_word + '\t' + std::to_string(pr.arcs_added) +
           '\t' + (pr.status == PairStatus::kOk ? "ok" : "skipped:nl-word-absent") + '\n';
  }
  return out;
}

std::vector<WordPair> ParseWordPairs(std::string_view text) {
  std::vector<WordPair> pairs;
  std::size_t lineno = 0;
  for (const std::string &line : SplitLines(text)) {
    ++lineno;
    if (IsBlankOrComment(line)) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 2) throw ParseError("expected 'nl_word<TAB>fl_word'", lineno);
    WordPair p{fields[0], fields[1]};
    try {
      ValidateWordPair(p);
    } catch (const ConfigError &e) {
      throw ParseError(e.what(), lineno);
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace csasr
