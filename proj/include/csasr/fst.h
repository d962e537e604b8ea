// include/csasr/fst.h
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

#ifndef CSASR_FST_H_
#define CSASR_FST_H_

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace csasr {

using Label = std::int32_t;
using StateId = std::int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;
inline constexpr StateId kNoState = -1;
inline constexpr std::string_view kEpsilonSymbol = "<eps>";
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Bijection between non-negative ids and strings. Id 0 is always "<eps>".
class SymbolTable {
 public:
  SymbolTable();

  // Returns the existing id, or assigns the next free one.
  Label AddSymbol(std::string_view symbol);
  // Explicit id; throws ConfigError if either side is already bound elsewhere.
  Label AddSymbol(std::string_view symbol, Label id);

  Label Find(std::string_view symbol) const;  // kNoLabel when absent
  const std::string &Symbol(Label id) const;  // throws ConfigError
  bool Contains(Label id) const { return by_id_.count(id) != 0; }
  std::size_t Size() const { return by_id_.size(); }
  Label AvailableKey() const { return by_id_.rbegin()->first + 1; }

  const std::map<Label, std::string> &Items() const { return by_id_; }

  // True when no id or string is bound differently in the two tables. An
  // extension of a table (same bindings plus new symbols) is compatible.
  bool CompatibleWith(const SymbolTable &other) const;
  bool operator==(const SymbolTable &other) const { return by_id_ == other.by_id_; }

  // `symbol<TAB>id` per line, in id order.
  std::string WriteText() const;
  static SymbolTable ReadText(std::string_view text);

 private:
  std::map<Label, std::string> by_id_;
  std::unordered_map<std::string, Label> by_symbol_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

// Cost is -ln(probability) in the tropical semiring.
struct Arc {
  StateId dst = kNoState;
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  double cost = 0.0;

  bool operator==(const Arc &) const = default;
};

class Wfst {
 public:
  Wfst(SymbolTablePtr isyms, SymbolTablePtr osyms);
  // Acceptor-style graph sharing one table for both sides.
  explicit Wfst(SymbolTablePtr syms) : Wfst(syms, syms) {}

  StateId AddState();
  void SetStart(StateId s);
  void SetFinal(StateId s, double cost);
  // Throws ConfigError on an invalid state, unknown label or non-finite cost.
  void AddArc(StateId src, const Arc &arc);

  StateId Start() const { return start_; }
  std::size_t NumStates() const { return arcs_.size(); }
  std::size_t NumArcs() const;
  std::span<const Arc> Arcs(StateId s) const { return arcs_.at(s); }
  bool IsFinal(StateId s) const { return finals_.at(s) != kInfinity; }
  double Final(StateId s) const { return finals_.at(s); }
  std::vector<StateId> FinalStates() const;

  const SymbolTable &InputSymbols() const { return *isyms_; }
  const SymbolTable &OutputSymbols() const { return *osyms_; }
  const SymbolTablePtr &InputSymbolsPtr() const { return isyms_; }
  const SymbolTablePtr &OutputSymbolsPtr() const { return osyms_; }

  bool IsAcceptor() const;
  bool ValidState(StateId s) const {
    return s >= 0 && static_cast<std::size_t>(s) < arcs_.size();
  }

 private:
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
  StateId start_ = kNoState;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<double> finals_;
};

struct PathArc {
  StateId src = kNoState;
  Arc arc;

  bool operator==(const PathArc &) const = default;
};

struct Path {
  std::vector<PathArc> arcs;
  double final_cost = 0.0;
  double total_cost = 0.0;
  std::vector<Label> isequence;  // non-epsilon input labels
  std::vector<Label> osequence;  // non-epsilon output labels
};

std::vector<std::string> LabelsToSymbols(const std::vector<Label> &labels,
                                         const SymbolTable &table);

// Composition with the three-state epsilon filter. Tables must be compatible
// and neither side may contain an epsilon cycle on the composed tape.
Wfst Compose(const Wfst &a, const Wfst &b);

// Up to n accepting paths by nondecreasing cost. Equal costs are ordered by
// output label sequence, then by arc sequence.
std::vector<Path> ShortestPath(const Wfst &f, std::size_t n);

// Kleene star: zero or more concatenated f-paths.
Wfst Closure(const Wfst &f);

// Linear acceptor over the given symbols, all costs 0.
Wfst AcceptSequence(const std::vector<std::string> &symbols, SymbolTablePtr table);
Wfst AcceptSequence(const std::vector<Label> &labels, SymbolTablePtr table);

// Drops states that are not both reachable and co-reachable. The start state
// survives even when the language is empty.
Wfst Connect(const Wfst &f);

// Cycle made only of arcs whose input (or output) label is epsilon.
bool HasEpsilonCycle(const Wfst &f, bool on_input);

// AT&T text: `src<TAB>dst<TAB>isym<TAB>osym<TAB>cost` and `state<TAB>cost`.
// The first line belongs to the start state.
std::string WriteFstText(const Wfst &f);

struct FstReadOptions {
  // Starting tables; unknown symbols extend a copy unless `strict`.
  SymbolTablePtr isyms;
  SymbolTablePtr osyms;
  bool strict = false;
};
Wfst ReadFstText(std::string_view text, const FstReadOptions &opts = {});

}  // namespace csasr

#endif  // CSASR_FST_H_
