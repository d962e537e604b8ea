// src/symbol_table.cc
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

#include <string>

#include "csasr/error.h"
#include "csasr/fst.h"
#include "csasr/util.h"

namespace csasr {

SymbolTable::SymbolTable() {
  by_id_.emplace(kEpsilon, std::string(kEpsilonSymbol));
  by_symbol_.emplace(std::string(kEpsilonSymbol), kEpsilon);
}

Label SymbolTable::AddSymbol(std::string_view symbol) {
  Label id = Find(symbol);
  if (id != kNoLabel) return id;
  return AddSymbol(symbol, AvailableKey());
}

Label SymbolTable::AddSymbol(std::string_view symbol, Label id) {
  if (id < 0) throw ConfigError("negative symbol id for '" + std::string(symbol) + "'");
  if (symbol.empty()) throw ConfigError("empty symbol");
  auto by_sym = by_symbol_.find(std::string(symbol));
  auto by_id = by_id_.find(id);
  if (by_sym != by_symbol_.end() && by_sym->second == id) return id;
  if (by_sym != by_symbol_.end())
    throw ConfigError("symbol '" + std::string(symbol) + "' already has id " +
                      std::to_string(by_sym->second));
  if (by_id != by_id_.end())
    throw ConfigError("id " + std::to_string(id) + " already bound to '" +
                      by_id->second + "'");
  by_id_.emplace(id, std::string(symbol));
  by_symbol_.emplace(std::string(symbol), id);
  return id;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = by_symbol_.find(std::string(symbol));
  return it == by_symbol_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Symbol(Label id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw ConfigError("unknown symbol id " + std::to_string(id));
  return it->second;
}

bool SymbolTable::CompatibleWith(const SymbolTable &other) const {
  const SymbolTable &small = Size() <= other.Size() ? *this : other;
  const SymbolTable &large = Size() <= other.Size() ? other : *this;
  for (const auto &[id, sym] : small.by_id_) {
    auto it = large.by_id_.find(id);
    if (it != large.by_id_.end()) {
      if (it->second != sym) return false;
    } else if (large.Find(sym) != kNoLabel) {
      return false;
    }
  }
  return true;
}

std::string SymbolTable::WriteText() const {
  std::string out;
  for (const auto &[id, sym] : by_id_) {
    out += sym;
    out += '\t';
    out += std::to_string(id);
    out += '\n';
  }
  return out;
}

SymbolTable SymbolTable::ReadText(std::string_view text) {
  SymbolTable table;
  std::size_t lineno = 0;
  for (const std::string &line : SplitLines(text)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 2) fields = SplitWhitespace(line);
    if (fields.size() != 2)
      throw ParseError("expected 'symbol<TAB>id'", lineno);
    Label id = static_cast<Label>(ParseInt(fields[1], lineno));
    try {
      table.AddSymbol(fields[0], id);
    } catch (const ConfigError &e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return table;
}

}  // namespace csasr
