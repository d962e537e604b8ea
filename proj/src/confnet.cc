// src/confnet.cc
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

#include "csasr/confnet.h"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>

#include "csasr/error.h"
#include "csasr/util.h"

namespace csasr {

void ValidatePhonemeSequence(const PhonemeSequence &seq) {
  if (seq.empty()) throw ConfigError("empty phoneme sequence");
  for (const std::string &p : seq) {
    if (p.empty() || p == kCnEpsilon || p.find_first_of(" \t\n") != std::string::npos)
      throw ConfigError("invalid phoneme '" + p + "' in '" + Join(seq, " ") + "'");
  }
}

std::string PhonemesToString(const PhonemeSequence &seq) { return Join(seq, " "); }

PhonemeSequence ParsePhonemes(std::string_view text) { return SplitWhitespace(text); }

ConfusionNetwork ConfusionNetwork::Build(const std::vector<PhonemeSequence> &sequences) {
  if (sequences.empty()) throw ConfigError("confusion network needs at least one sequence");
  ConfusionNetwork cn;
  for (const PhonemeSequence &seq : sequences) cn.Merge(seq);
  return cn;
}

void ConfusionNetwork::Merge(const PhonemeSequence &seq) {
  ValidatePhonemeSequence(seq);
  const std::string eps(kCnEpsilon);
  if (total_inputs_ == 0) {
    for (const std::string &p : seq) slots_.push_back({{p, 1}});
    total_inputs_ = 1;
    return;
  }

  const std::size_t n = slots_.size(), m = seq.size(), w = m + 1;
  std::vector<int> sub(n * m), cost((n + 1) * w);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) sub[i * m + j] = slots_[i].count(seq[j]) ? 0 : 1;
  for (std::size_t i = 1; i <= n; ++i) cost[i * w] = static_cast<int>(i);
  for (std::size_t j = 1; j <= m; ++j) cost[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      cost[i * w + j] = std::min({cost[(i - 1) * w + j - 1] + sub[(i - 1) * m + j - 1],
                                  cost[(i - 1) * w + j] + 1, cost[i * w + j - 1] + 1});

  enum class Op { kAlign, kDelete, kInsert };
  std::vector<Op> ops;
  ops.reserve(n + m);
  bool inserts = false;
  for (std::size_t i = n, j = m; i > 0 || j > 0;) {
    if (i > 0 && j > 0 && cost[i * w + j] == cost[(i - 1) * w + j - 1] + sub[(i - 1) * m + j - 1]) {
      ops.push_back(Op::kAlign);
      --i, --j;
    } else if (i > 0 && cost[i * w + j] == cost[(i - 1) * w + j] + 1) {
      ops.push_back(Op::kDelete);
      --i;
    } else {
      ops.push_back(Op::kInsert);
      inserts = true;
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());

  if (!inserts) {
    std::size_t i = 0, j = 0;
    for (Op op : ops) ++slots_[i++][op == Op::kAlign ? seq[j++] : eps];
    ++total_inputs_;
    return;
  }
  std::vector<Slot> merged;
  merged.reserve(n + m);
  std::size_t i = 0, j = 0;
  for (Op op : ops) {
    switch (op) {
      case Op::kAlign:
        merged.push_back(std::move(slots_[i++]));
        ++merged.back()[seq[j++]];
        break;
      case Op::kDelete:
        merged.push_back(std::move(slots_[i++]));
        ++merged.back()[eps];
        break;
      case Op::kInsert:
        merged.push_back({{seq[j++], 1}, {eps, total_inputs_}});
        break;
    }
  }
  slots_ = std::move(merged);
  ++total_inputs_;
}

namespace {

std::vector<std::pair<std::string, int>> SortedEntries(const ConfusionNetwork::Slot &slot) {
  std::vector<std::pair<std::string, int>> entries(slot.begin(), slot.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  return entries;
}

}  // namespace

std::string ConfusionNetwork::Report() const {
  std::string out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    out += std::to_string(i) + ":";
    for (const auto &[p, c] : SortedEntries(slots_[i])) out += " " + p + "(" + std::to_string(c) + ")";
    out += '\n';
  }
  return out;
}

ConfusionNetwork ConfusionNetwork::ParseReport(std::string_view text) {
  ConfusionNetwork cn;
  std::size_t lineno = 0;
  for (const std::string &line : SplitLines(text)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'index: phon(count) ...'", lineno);
    if (ParseInt(line.substr(0, colon), lineno) != static_cast<long>(cn.slots_.size()))
      throw ParseError("slot indices must count up from 0", lineno);
    Slot slot;
    int sum = 0;
    for (const std::string &tok : SplitWhitespace(line.substr(colon + 1))) {
      std::size_t open = tok.rfind('(');
      if (open == std::string::npos || open == 0 || tok.back() != ')')
        throw ParseError("malformed entry '" + tok + "'", lineno);
      long count = ParseInt(tok.substr(open + 1, tok.size() - open - 2), lineno);
      if (count <= 0) throw ParseError("vote counts must be positive", lineno);
      if (!slot.emplace(tok.substr(0, open), static_cast<int>(count)).second)
        throw ParseError("duplicate entry '" + tok + "'", lineno);
      sum += static_cast<int>(count);
    }
    if (slot.empty()) throw ParseError("empty slot", lineno);
    if (cn.slots_.empty()) cn.total_inputs_ = sum;
    if (sum != cn.total_inputs_)
      throw ParseError("slot votes sum to " + std::to_string(sum) + ", expected " +
                           std::to_string(cn.total_inputs_),
                       lineno);
    cn.slots_.push_back(std::move(slot));
  }
  if (cn.slots_.empty()) throw ParseError("empty confusion network report", 0);
  return cn;
}

namespace {

// Per-slot entries, best vote first, flattened: slot k owns
// ids/votes[begin[k], begin[k + 1]).
template <typename Char>
struct PickTable {
  std::vector<std::size_t> begin{0};
  std::vector<Char> ids;
  std::vector<int> votes;
  std::size_t Width() const { return begin.size() - 1; }
};

// Ranked distinct sequences over interned ids; Char must hold every id.
template <typename Char>
std::vector<std::pair<int, std::basic_string<Char>>> RankPicks(const PickTable<Char> &t,
                                                                std::size_t n) {
  constexpr Char kEps = 0;
  const std::size_t width = t.Width();
  // Each pick is generated once: a child only advances slots at or after
  // the one its parent advanced last.
  struct Node {
    int score;
    std::size_t offset;
    std::size_t last;
  };
  std::vector<std::uint32_t> pool;
  pool.reserve(width * 64);
  pool.assign(width, 0);
  std::vector<Node> storage;
  storage.reserve(64);
  auto worse = [](const Node &a, const Node &b) { return a.score < b.score; };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> heap(worse, std::move(storage));
  int top = 0;
  for (std::size_t k = 0; k < width; ++k) top += t.votes[t.begin[k]];
  heap.push({top, 0, 0});

  std::vector<std::pair<int, std::basic_string<Char>>> found;
  found.reserve(std::min<std::size_t>(n, 64));
  // Open addressing over indices into `found`; -1 marks a free cell.
  std::vector<std::ptrdiff_t> table(128, -1);
  auto insert = [&](const std::basic_string<Char> &k) {
    if (2 * (found.size() + 1) > table.size()) {
      std::vector<std::ptrdiff_t> bigger(table.size() * 2, -1);
      for (std::ptrdiff_t idx : table) {
        if (idx < 0) continue;
        std::size_t h = std::hash<std::basic_string<Char>>{}(found[idx].second) & (bigger.size() - 1);
        while (bigger[h] >= 0) h = (h + 1) & (bigger.size() - 1);
        bigger[h] = idx;
      }
      table.swap(bigger);
    }
    std::size_t h = std::hash<std::basic_string<Char>>{}(k) & (table.size() - 1);
    for (; table[h] >= 0; h = (h + 1) & (table.size() - 1))
      if (found[table[h]].second == k) return false;
    table[h] = static_cast<std::ptrdiff_t>(found.size());
    return true;
  };
  std::basic_string<Char> key;
  while (!heap.empty()) {
    const Node node = heap.top();
    if (found.size() >= n && node.score < found[n - 1].first) break;
    heap.pop();
    key.clear();
    for (std::size_t k = 0; k < width; ++k) {
      Char id = t.ids[t.begin[k] + pool[node.offset + k]];
      if (id != kEps) key.push_back(id);
    }
    if (!key.empty() && insert(key)) found.emplace_back(node.score, key);
    for (std::size_t k = node.last; k < width; ++k) {
      std::size_t at = t.begin[k] + pool[node.offset + k];
      if (at + 1 >= t.begin[k + 1]) continue;
      std::size_t child = pool.size();
      pool.insert(pool.end(), pool.begin() + static_cast<std::ptrdiff_t>(node.offset),
                  pool.begin() + static_cast<std::ptrdiff_t>(node.offset + width));
      ++pool[child + k];
      heap.push({node.score - t.votes[at] + t.votes[at + 1], child, k});
    }
  }
  // Pops come in nonincreasing score order; only ties need sorting.
  for (auto lo = found.begin(); lo != found.end();) {
    auto hi = std::find_if(lo, found.end(), [&](const auto &f) { return f.first != lo->first; });
    if (hi - lo > 1)
      std::sort(lo, hi, [](const auto &a, const auto &b) { return a.second < b.second; });
    lo = hi;
  }
  if (found.size() > n) found.resize(n);
  return found;
}

template <typename Char>
std::vector<ScoredPronunciation> NBestAs(const ConfusionNetwork &cn,
                                         const std::vector<const std::string *> &names,
                                         std::size_t n) {
  // Ids follow string order, so id order is phoneme order. 0 is epsilon.
  auto id_of = [&](const std::string &p) -> Char {
    if (p == kCnEpsilon) return 0;
    auto it = std::lower_bound(names.begin(), names.end(), &p,
                               [](const std::string *a, const std::string *b) { return *a < *b; });
    return static_cast<Char>(it - names.begin() + 1);
  };
  PickTable<Char> table;
  table.begin.reserve(cn.Slots().size() + 1);
  std::vector<std::pair<Char, int>> e;
  for (const auto &slot : cn.Slots()) {
    e.clear();
    for (const auto &[p, c] : slot) e.emplace_back(id_of(p), c);
    std::stable_sort(e.begin(), e.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
    for (const auto &[id, c] : e) {
      table.ids.push_back(id);
      table.votes.push_back(c);
    }
    table.begin.push_back(table.ids.size());
  }
  auto ranked = RankPicks(table, n);
  std::vector<ScoredPronunciation> out(ranked.size());
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const auto &ids = ranked[r].second;
    out[r].phonemes.reserve(ids.size());
    for (Char id : ids) out[r].phonemes.push_back(*names[static_cast<std::size_t>(id) - 1]);
    out[r].score = static_cast<double>(ranked[r].first);
  }
  return out;
}

}  // namespace

std::vector<ScoredPronunciation> NBest(const ConfusionNetwork &cn, std::size_t n) {
  if (n == 0) throw ConfigError("nbest: n must be >= 1");
  std::vector<const std::string *> names;
  for (const auto &slot : cn.Slots())
    for (const auto &[p, c] : slot)
      if (p != kCnEpsilon) names.push_back(&p);
  auto less = [](const std::string *a, const std::string *b) { return *a < *b; };
  auto same = [](const std::string *a, const std::string *b) { return *a == *b; };
  std::sort(names.begin(), names.end(), less);
  names.erase(std::unique(names.begin(), names.end(), same), names.end());
  if (names.size() < 0xFFFF) return NBestAs<char16_t>(cn, names, n);
  return NBestAs<char32_t>(cn, names, n);
}

}  // namespace csasr
