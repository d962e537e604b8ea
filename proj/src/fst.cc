// src/fst.cc
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

namespace csasr {

Wfst::Wfst(SymbolTablePtr isyms, SymbolTablePtr osyms)
    : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {
  if (!isyms_ || !osyms_) throw ConfigError("Wfst requires symbol tables");
}

StateId Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(kInfinity);
  return static_cast<StateId>(arcs_.size() - 1);
}

void Wfst::SetStart(StateId s) {
  if (!ValidState(s)) throw ConfigError("start state " + std::to_string(s) + " out of range");
  start_ = s;
}

void Wfst::SetFinal(StateId s, double cost) {
  if (!ValidState(s)) throw ConfigError("final state " + std::to_string(s) + " out of range");
  if (std::isnan(cost) || cost == -kInfinity)
    throw ConfigError("invalid final cost on state " + std::to_string(s));
  finals_[s] = cost + 0.0;
}

void Wfst::AddArc(StateId src, const Arc &arc) {
  if (!ValidState(src) || !ValidState(arc.dst))
    throw ConfigError("arc " + std::to_string(src) + "->" + std::to_string(arc.dst) +
                      " references a missing state");
  if (!std::isfinite(arc.cost))
    throw ConfigError("arc cost must be finite (state " + std::to_string(src) + ")");
  if (!isyms_->Contains(arc.ilabel))
    throw ConfigError("input label " + std::to_string(arc.ilabel) + " not in symbol table");
  if (!osyms_->Contains(arc.olabel))
    throw ConfigError("output label " + std::to_string(arc.olabel) + " not in symbol table");
  Arc a = arc;
  a.cost += 0.0;
  arcs_[src].push_back(a);
}

std::size_t Wfst::NumArcs() const {
  std::size_t n = 0;
  for (const auto &v : arcs_) n += v.size();
  return n;
}

std::vector<StateId> Wfst::FinalStates() const {
  std::vector<StateId> out;
  for (std::size_t s = 0; s < finals_.size(); ++s)
    if (finals_[s] != kInfinity) out.push_back(static_cast<StateId>(s));
  return out;
}

bool Wfst::IsAcceptor() const {
  if (!isyms_->CompatibleWith(*osyms_)) return false;
  for (const auto &v : arcs_)
    for (const Arc &a : v)
      if (a.ilabel != a.olabel) return false;
  return true;
}

std::vector<std::string> LabelsToSymbols(const std::vector<Label> &labels,
                                         const SymbolTable &table) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (Label l : labels) out.push_back(table.Symbol(l));
  return out;
}

}  // namespace csasr
