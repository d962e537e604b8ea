// src/lexicon.cc
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

#include "csasr/lexicon.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "csasr/arpa.h"
#include "csasr/error.h"
#include "csasr/util.h"

namespace csasr {

namespace {

constexpr std::pair<LexSource, std::string_view> kSourceNames[] = {
    {LexSource::kL0, "L0"},   {LexSource::kL1, "L1"},   {LexSource::kL2f, "L2f"},
    {LexSource::kL2n, "L2n"}, {LexSource::kL3a, "L3a"}, {LexSource::kL3ab, "L3ab"},
};

void ValidateWord(const std::string &word) {
  if (word.empty() || word.find_first_of(" \t\n") != std::string::npos)
    throw ConfigError("invalid word '" + word + "'");
  if (word == kEpsilonSymbol || word == kSentenceStart || word == kSentenceEnd)
    throw ConfigError("reserved symbol '" + word + "' used as a word");
}

}  // namespace

std::string_view SourceName(LexSource source) {
  for (const auto &[s, name] : kSourceNames)
    if (s == source) return name;
  return "?";
}

std::optional<LexSource> ParseSource(std::string_view name) {
  for (const auto &[s, n] : kSourceNames)
    if (n == name) return s;
  return std::nullopt;
}

bool Lexicon::Add(PronEntry entry) {
  ValidateWord(entry.word);
  ValidatePhonemeSequence(entry.phonemes);
  if (entry.score && !std::isfinite(*entry.score))
    throw ConfigError("non-finite score for '" + entry.word + "'");
  if (!keys_.emplace(entry.word, entry.phonemes, entry.source).second) return false;
  entries_.push_back(std::move(entry));
  return true;
}

std::vector<const PronEntry *> Lexicon::Lookup(std::string_view word) const {
  std::vector<const PronEntry *> out;
  for (const PronEntry &e : entries_)
    if (e.word == word) out.push_back(&e);
  return out;
}

std::vector<std::string> Lexicon::Words() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const PronEntry &e : entries_)
    if (seen.insert(e.word).second) out.push_back(e.word);
  return out;
}

Lexicon Lexicon::LoadTsv(std::string_view text) {
  Lexicon lex;
  std::size_t lineno = 0;
  for (const std::string &line : SplitLines(text)) {
    ++lineno;
    if (IsBlankOrComment(line)) continue;
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() != 3 && f.size() != 4)
      throw ParseError("expected 3 or 4 tab-separated fields, got " + std::to_string(f.size()),
                       lineno);
    auto source = ParseSource(f[2]);
    if (!source) throw ParseError("unknown source tag '" + f[2] + "'", lineno);
    PronEntry e{f[0], ParsePhonemes(f[1]), *source, std::nullopt};
    if (f.size() == 4 && !f[3].empty()) e.score = ParseDouble(f[3], lineno);
    try {
      lex.Add(std::move(e));
    } catch (const ConfigError &err) {
      throw ParseError(err.what(), lineno);
    }
  }
  return lex;
}

std::string Lexicon::SaveTsv() const {
  std::string out;
  for (const PronEntry &e : entries_) {
    out += e.word + '\t' + PhonemesToString(e.phonemes) + '\t' + std::string(SourceName(e.source));
    if (e.score) out += '\t' + FormatDouble(*e.score);
    out += '\n';
  }
  return out;
}

Lexicon Merge(std::span<const Lexicon> lexicons) {
  Lexicon out;
  for (const Lexicon &lex : lexicons)
    for (const PronEntry &e : lex.Entries()) out.Add(e);
  return out;
}

Wfst BuildLexiconFst(const Lexicon &lex, const SymbolTable &phones, SymbolTablePtr words,
                     const LexiconFstOptions &opts) {
  auto isyms = std::make_shared<SymbolTable>(phones);
  for (const PronEntry &e : lex.Entries()) {
    for (const std::string &p : e.phonemes) {
      if (p == kEpsilonSymbol || p.front() == '#')
        throw ConfigError("phoneme '" + p + "' of '" + e.word + "' collides with a reserved symbol");
      isyms->AddSymbol(p);
    }
    if (words->Find(e.word) == kNoLabel)
      throw ConfigError("word '" + e.word + "' is not in the word symbol table");
  }

  std::map<std::string, double> best_score;
  if (opts.score_costs) {
    for (const PronEntry &e : lex.Entries()) {
      if (!e.score) continue;
      if (*e.score <= 0.0)
        throw ConfigError("score-based costs need positive scores ('" + e.word + "')");
      auto [it, fresh] = best_score.emplace(e.word, *e.score);
      if (!fresh) it->second = std::max(it->second, *e.score);
    }
  }

  Wfst l(isyms, words);
  StateId start = l.AddState();
  StateId final = l.AddState();
  l.SetStart(start);
  l.SetFinal(final, 0.0);
  for (const PronEntry &e : lex.Entries()) {
    double cost = 0.0;
    if (opts.score_costs && e.score) cost = -std::log(*e.score / best_score.at(e.word));
    StateId s = start;
    for (std::size_t i = 0; i < e.phonemes.size(); ++i) {
      bool last = i + 1 == e.phonemes.size();
      StateId next = last ? final : l.AddState();
      l.AddArc(s, {next, isyms->Find(e.phonemes[i]), i == 0 ? words->Find(e.word) : kEpsilon,
                   i == 0 ? cost : 0.0});
      s = next;
    }
  }
  return l;
}

}  // namespace csasr
