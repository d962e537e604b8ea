// src/fst_algorithms.cc
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

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <string>
#include <tuple>

#include "csasr/error.h"
#include "csasr/fst.h"

namespace csasr {

namespace {

// Equal-cost tolerance for shortest-path tie handling.
bool CostsTied(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(a));
}

std::vector<bool> Reachable(const Wfst &f) {
  std::vector<bool> seen(f.NumStates(), false);
  if (!f.ValidState(f.Start())) return seen;
  std::vector<StateId> stack{f.Start()};
  seen[f.Start()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &a : f.Arcs(s)) {
      if (!seen[a.dst]) {
        seen[a.dst] = true;
        stack.push_back(a.dst);
      }
    }
  }
  return seen;
}

std::vector<std::vector<StateId>> ReverseAdjacency(const Wfst &f) {
  std::vector<std::vector<StateId>> rev(f.NumStates());
  for (StateId s = 0; s < static_cast<StateId>(f.NumStates()); ++s)
    for (const Arc &a : f.Arcs(s)) rev[a.dst].push_back(s);
  return rev;
}

std::vector<bool> CoReachable(const Wfst &f) {
  std::vector<bool> seen(f.NumStates(), false);
  auto rev = ReverseAdjacency(f);
  std::vector<StateId> stack;
  for (StateId s : f.FinalStates()) {
    seen[s] = true;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : rev[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

// Shortest distance from every state to acceptance (final cost included).
// Label-correcting so that negative arcs are allowed; a negative cycle on a
// co-reachable part of the graph is rejected.
std::vector<double> DistanceToFinal(const Wfst &f) {
  const std::size_t n = f.NumStates();
  std::vector<double> dist(n, kInfinity);
  std::vector<std::vector<std::pair<StateId, double>>> rev(n);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s)
    for (const Arc &a : f.Arcs(s)) rev[a.dst].emplace_back(s, a.cost);
  std::deque<StateId> queue;
  std::vector<bool> queued(n, false);
  std::vector<std::size_t> relax_count(n, 0);
  for (StateId s : f.FinalStates()) {
    dist[s] = f.Final(s);
    queue.push_back(s);
    queued[s] = true;
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    queued[s] = false;
    for (const auto &[p, cost] : rev[s]) {
      double cand = dist[s] + cost;
      if (cand < dist[p] && !CostsTied(cand, dist[p])) {
        dist[p] = cand;
        if (++relax_count[p] > n + 1)
          throw ConfigError("negative-cost cycle; shortest path undefined");
        if (!queued[p]) {
          queued[p] = true;
          queue.push_back(p);
        }
      }
    }
  }
  return dist;
}

}  // namespace

bool HasEpsilonCycle(const Wfst &f, bool on_input) {
  const std::size_t n = f.NumStates();
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> color(n, 0);
  for (StateId root = 0; root < static_cast<StateId>(n); ++root) {
    if (color[root]) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto &[s, next] = stack.back();
      auto arcs = f.Arcs(s);
      bool pushed = false;
      while (next < arcs.size()) {
        const Arc &a = arcs[next++];
        if ((on_input ? a.ilabel : a.olabel) != kEpsilon) continue;
        if (color[a.dst] == 1) return true;
        if (color[a.dst] == 0) {
          color[a.dst] = 1;
          stack.emplace_back(a.dst, 0);
          pushed = true;
          break;
        }
      }
      if (!pushed) {
        color[stack.back().first] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

Wfst Compose(const Wfst &a, const Wfst &b) {
  if (!a.OutputSymbols().CompatibleWith(b.InputSymbols()))
    throw ConfigError("compose: output symbols of the left graph do not match "
                      "input symbols of the right graph");
  if (HasEpsilonCycle(a, /*on_input=*/false))
    throw ConfigError("compose: left graph has an output-epsilon cycle");
  if (HasEpsilonCycle(b, /*on_input=*/true))
    throw ConfigError("compose: right graph has an input-epsilon cycle");

  Wfst c(a.InputSymbolsPtr(), b.OutputSymbolsPtr());
  if (!a.ValidState(a.Start()) || !b.ValidState(b.Start())) {
    c.SetStart(c.AddState());
    return c;
  }

  // Arcs of b grouped by input label, per state.
  std::vector<std::vector<std::size_t>> b_sorted(b.NumStates());
  for (StateId s = 0; s < static_cast<StateId>(b.NumStates()); ++s) {
    auto arcs = b.Arcs(s);
    auto &idx = b_sorted[s];
    idx.resize(arcs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return arcs[x].ilabel < arcs[y].ilabel;
    });
  }
  auto matching = [&](StateId s, Label label) {
    auto arcs = b.Arcs(s);
    const auto &idx = b_sorted[s];
    auto lo = std::lower_bound(idx.begin(), idx.end(), label,
                               [&](std::size_t i, Label l) { return arcs[i].ilabel < l; });
    auto hi = std::upper_bound(idx.begin(), idx.end(), label,
                               [&](Label l, std::size_t i) { return l < arcs[i].ilabel; });
    return std::make_pair(lo, hi);
  };

  using Triple = std::tuple<StateId, StateId, int>;
  std::map<Triple, StateId> ids;
  std::deque<Triple> queue;
  auto state_of = [&](StateId qa, StateId qb, int filter) {
    Triple key{qa, qb, filter};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId s = c.AddState();
    ids.emplace(key, s);
    queue.push_back(key);
    return s;
  };

  c.SetStart(state_of(a.Start(), b.Start(), 0));
  while (!queue.empty()) {
    auto [qa, qb, filter] = queue.front();
    queue.pop_front();
    StateId src = ids.at({qa, qb, filter});
    if (a.IsFinal(qa) && b.IsFinal(qb)) c.SetFinal(src, a.Final(qa) + b.Final(qb));

    for (const Arc &x : a.Arcs(qa)) {
      if (x.olabel != kEpsilon) {
        auto [lo, hi] = matching(qb, x.olabel);
        for (auto it = lo; it != hi; ++it) {
          const Arc &y = b.Arcs(qb)[*it];
          StateId dst = state_of(x.dst, y.dst, 0);
          c.AddArc(src, {dst, x.ilabel, y.olabel, x.cost + y.cost});
        }
        continue;
      }
      if (filter != 2) {
        StateId dst = state_of(x.dst, qb, 1);
        c.AddArc(src, {dst, x.ilabel, kEpsilon, x.cost});
      }
      if (filter == 0) {
        auto [lo, hi] = matching(qb, kEpsilon);
        for (auto it = lo; it != hi; ++it) {
          const Arc &y = b.Arcs(qb)[*it];
          StateId dst = state_of(x.dst, y.dst, 0);
          c.AddArc(src, {dst, x.ilabel, y.olabel, x.cost + y.cost});
        }
      }
    }
    if (filter != 1) {
      auto [lo, hi] = matching(qb, kEpsilon);
      for (auto it = lo; it != hi; ++it) {
        const Arc &y = b.Arcs(qb)[*it];
        StateId dst = state_of(qa, y.dst, 2);
        c.AddArc(src, {dst, kEpsilon, y.olabel, y.cost});
      }
    }
  }
  return Connect(c);
}

Wfst Connect(const Wfst &f) {
  Wfst out(f.InputSymbolsPtr(), f.OutputSymbolsPtr());
  auto acc = Reachable(f);
  auto coacc = CoReachable(f);
  std::vector<StateId> remap(f.NumStates(), kNoState);
  for (StateId s = 0; s < static_cast<StateId>(f.NumStates()); ++s)
    if ((acc[s] && coacc[s]) || s == f.Start()) remap[s] = out.AddState();
  if (!f.ValidState(f.Start())) return out;
  out.SetStart(remap[f.Start()]);
  for (StateId s = 0; s < static_cast<StateId>(f.NumStates()); ++s) {
    if (remap[s] == kNoState) continue;
    if (f.IsFinal(s)) out.SetFinal(remap[s], f.Final(s));
    for (const Arc &a : f.Arcs(s)) {
      if (remap[a.dst] == kNoState || !(acc[a.dst] && coacc[a.dst])) continue;
      Arc b = a;
      b.dst = remap[a.dst];
      out.AddArc(remap[s], b);
    }
  }
  return out;
}

std::vector<Path> ShortestPath(const Wfst &f, std::size_t n) {
  if (n == 0) throw ConfigError("shortest_path: n must be >= 1");
  std::vector<Path> result;
  if (!f.ValidState(f.Start())) return result;
  const std::vector<double> to_final = DistanceToFinal(f);
  if (to_final[f.Start()] == kInfinity) return result;

  struct Node {
    StateId state;
    double cost;       // cost of the prefix
    std::int64_t parent;
    PathArc via;
  };
  struct Entry {
    double priority;
    std::uint64_t seq;
    std::int64_t node;
    bool complete;
  };
  auto worse = [](const Entry &x, const Entry &y) {
    if (x.priority != y.priority) return x.priority > y.priority;
    return x.seq > y.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  std::vector<Node> nodes;
  std::uint64_t seq = 0;

  // Each state is expanded at most n times, plus further prefixes tied with
  // the n-th one so that the lexicographic tie-break sees every candidate.
  const std::size_t tie_cap = 4 * n + 16;
  std::vector<std::size_t> pops(f.NumStates(), 0);
  std::vector<double> nth_pop(f.NumStates(), kInfinity);
  const std::size_t max_pops = 5'000'000;
  std::size_t total_pops = 0;

  struct Done {
    double cost;
    std::int64_t node;
  };
  std::vector<Done> done;

  nodes.push_back({f.Start(), 0.0, -1, {}});
  heap.push({to_final[f.Start()], seq++, 0, false});
  while (!heap.empty()) {
    Entry top = heap.top();
    if (done.size() >= n && top.priority > done[n - 1].cost &&
        !CostsTied(top.priority, done[n - 1].cost))
      break;
    heap.pop();
    if (++total_pops > max_pops) break;
    const Node node = nodes[top.node];
    if (top.complete) {
      done.push_back({top.priority, top.node});
      continue;
    }
    std::size_t &count = pops[node.state];
    if (count >= n) {
      if (!CostsTied(top.priority, nth_pop[node.state]) || count >= n + tie_cap) continue;
    }
    ++count;
    if (count == n) nth_pop[node.state] = top.priority;

    if (f.IsFinal(node.state))
      heap.push({node.cost + f.Final(node.state), seq++, top.node, true});
    for (const Arc &a : f.Arcs(node.state)) {
      if (to_final[a.dst] == kInfinity) continue;
      double cost = node.cost + a.cost;
      nodes.push_back({a.dst, cost, top.node, {node.state, a}});
      heap.push({cost + to_final[a.dst], seq++,
                 static_cast<std::int64_t>(nodes.size() - 1), false});
    }
  }

  for (const Done &d : done) {
    Path p;
    for (std::int64_t i = d.node; nodes[i].parent >= 0; i = nodes[i].parent)
      p.arcs.push_back(nodes[i].via);
    std::reverse(p.arcs.begin(), p.arcs.end());
    double total = 0.0;
    for (const PathArc &pa : p.arcs) {
      total += pa.arc.cost;
      if (pa.arc.ilabel != kEpsilon) p.isequence.push_back(pa.arc.ilabel);
      if (pa.arc.olabel != kEpsilon) p.osequence.push_back(pa.arc.olabel);
    }
    p.final_cost = f.Final(nodes[d.node].state);
    p.total_cost = total + p.final_cost;
    result.push_back(std::move(p));
  }

  // Group runs of tied costs and order each run deterministically.
  std::stable_sort(result.begin(), result.end(),
                   [](const Path &x, const Path &y) { return x.total_cost < y.total_cost; });
  auto arc_key = [](const Path &p) {
    std::vector<std::tuple<StateId, StateId, Label, Label>> key;
    for (const PathArc &pa : p.arcs)
      key.emplace_back(pa.src, pa.arc.dst, pa.arc.ilabel, pa.arc.olabel);
    return key;
  };
  for (std::size_t i = 0; i < result.size();) {
    std::size_t j = i + 1;
    while (j < result.size() && CostsTied(result[i].total_cost, result[j].total_cost)) ++j;
    std::stable_sort(result.begin() + i, result.begin() + j,
                     [&](const Path &x, const Path &y) {
                       if (x.osequence != y.osequence) return x.osequence < y.osequence;
                       return arc_key(x) < arc_key(y);
                     });
    i = j;
  }
  if (result.size() > n) result.resize(n);
  return result;
}

Wfst Closure(const Wfst &f) {
  Wfst out(f.InputSymbolsPtr(), f.OutputSymbolsPtr());
  for (std::size_t s = 0; s < f.NumStates(); ++s) out.AddState();
  StateId start = out.AddState();
  out.SetStart(start);
  out.SetFinal(start, 0.0);
  if (!f.ValidState(f.Start())) return out;
  for (StateId s = 0; s < static_cast<StateId>(f.NumStates()); ++s) {
    for (const Arc &a : f.Arcs(s)) out.AddArc(s, a);
    if (f.IsFinal(s)) {
      out.SetFinal(s, f.Final(s));
      // The final cost is paid on the loop back so concatenations add up.
      out.AddArc(s, {f.Start(), kEpsilon, kEpsilon, f.Final(s)});
    }
  }
  out.AddArc(start, {f.Start(), kEpsilon, kEpsilon, 0.0});
  return out;
}

Wfst AcceptSequence(const std::vector<Label> &labels, SymbolTablePtr table) {
  Wfst out(table);
  StateId s = out.AddState();
  out.SetStart(s);
  for (Label l : labels) {
    if (l == kEpsilon) throw ConfigError("accept_sequence: epsilon in input");
    if (!table->Contains(l))
      throw ConfigError("accept_sequence: unknown symbol id " + std::to_string(l));
    StateId next = out.AddState();
    out.AddArc(s, {next, l, l, 0.0});
    s = next;
  }
  out.SetFinal(s, 0.0);
  return out;
}

Wfst AcceptSequence(const std::vector<std::string> &symbols, SymbolTablePtr table) {
  std::vector<Label> labels;
  labels.reserve(symbols.size());
  for (const std::string &sym : symbols) {
    Label l = table->Find(sym);
    if (l == kNoLabel || l == kEpsilon)
      throw ConfigError("accept_sequence: unknown symbol '" + sym + "'");
    labels.push_back(l);
  }
  return AcceptSequence(labels, std::move(table));
}

}  // namespace csasr
