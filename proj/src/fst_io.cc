// src/fst_io.cc
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

#include <cmath>
#include <string>

#include "csasr/error.h"
#include "csasr/fst.h"
#include "csasr/util.h"

namespace csasr {

namespace {

void WriteState(const Wfst &f, StateId s, std::string *out) {
  const SymbolTable &isyms = f.InputSymbols();
  const SymbolTable &osyms = f.OutputSymbols();
  for (const Arc &a : f.Arcs(s)) {
    *out += std::to_string(s);
    *out += '\t';
    *out += std::to_string(a.dst);
    *out += '\t';
    *out += isyms.Symbol(a.ilabel);
    *out += '\t';
    *out += osyms.Symbol(a.olabel);
    *out += '\t';
    *out += FormatDouble(a.cost);
    *out += '\n';
  }
  if (f.IsFinal(s)) {
    *out += std::to_string(s);
    *out += '\t';
    *out += FormatDouble(f.Final(s));
    *out += '\n';
  }
}

struct ParsedLine {
  std::size_t lineno;
  std::vector<std::string> fields;
};

}  // namespace

std::string WriteFstText(const Wfst &f) {
  std::string out;
  if (!f.ValidState(f.Start())) return out;
  WriteState(f, f.Start(), &out);
  for (StateId s = 0; s < static_cast<StateId>(f.NumStates()); ++s)
    if (s != f.Start()) WriteState(f, s, &out);
  return out;
}

Wfst ReadFstText(std::string_view text, const FstReadOptions &opts) {
  std::vector<ParsedLine> lines;
  std::size_t lineno = 0;
  for (const std::string &line : SplitLines(text)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() == 1) fields = SplitWhitespace(line);
    if (fields.empty() || fields.size() == 3 || fields.size() > 5)
      throw ParseError("expected 1, 2, 4 or 5 fields, got " + std::to_string(fields.size()),
                       lineno);
    lines.push_back({lineno, std::move(fields)});
  }

  // Without seed tables, a graph whose arcs all carry equal labels on both
  // tapes is read as an acceptor with one shared table.
  bool shared = false;
  if (!opts.isyms && !opts.osyms) {
    shared = true;
    for (const ParsedLine &pl : lines)
      if (pl.fields.size() >= 4 && pl.fields[2] != pl.fields[3]) shared = false;
  } else if (opts.isyms == opts.osyms) {
    shared = true;
  }
  auto isyms = std::make_shared<SymbolTable>(opts.isyms ? *opts.isyms : SymbolTable());
  auto osyms = shared ? isyms
                      : std::make_shared<SymbolTable>(opts.osyms ? *opts.osyms : SymbolTable());

  auto resolve = [&](SymbolTable &table, const std::string &sym, std::size_t ln) {
    Label l = table.Find(sym);
    if (l != kNoLabel) return l;
    if (opts.strict) throw ParseError("unknown symbol '" + sym + "'", ln);
    return table.AddSymbol(sym);
  };

  struct RawArc {
    StateId src;
    Arc arc;
  };
  std::vector<RawArc> arcs;
  std::vector<std::pair<StateId, double>> finals;
  StateId max_state = -1;
  StateId start = kNoState;
  auto state_of = [&](const std::string &field, std::size_t ln) {
    long v = ParseInt(field, ln);
    if (v < 0 || v > std::numeric_limits<StateId>::max())
      throw ParseError("state id out of range: " + field, ln);
    return static_cast<StateId>(v);
  };
  for (const ParsedLine &pl : lines) {
    const auto &fl = pl.fields;
    StateId src = state_of(fl[0], pl.lineno);
    if (start == kNoState) start = src;
    max_state = std::max(max_state, src);
    if (fl.size() <= 2) {
      double cost = fl.size() == 2 ? ParseDouble(fl[1], pl.lineno) : 0.0;
      finals.emplace_back(src, cost);
      continue;
    }
    Arc a;
    a.dst = state_of(fl[1], pl.lineno);
    a.ilabel = resolve(*isyms, fl[2], pl.lineno);
    a.olabel = resolve(*osyms, fl[3], pl.lineno);
    a.cost = fl.size() == 5 ? ParseDouble(fl[4], pl.lineno) : 0.0;
    if (!std::isfinite(a.cost)) throw ParseError("arc cost must be finite", pl.lineno);
    max_state = std::max(max_state, a.dst);
    arcs.push_back({src, a});
  }

  Wfst f(isyms, osyms);
  for (StateId s = 0; s <= max_state; ++s) f.AddState();
  if (start == kNoState) {
    // Empty text: an empty-language graph with a single start state.
    f.SetStart(f.AddState());
    return f;
  }
  f.SetStart(start);
  for (const RawArc &ra : arcs) f.AddArc(ra.src, ra.arc);
  for (const auto &[s, cost] : finals) f.SetFinal(s, cost);
  return f;
}

}  // namespace csasr
