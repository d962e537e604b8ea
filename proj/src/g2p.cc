// src/g2p.cc
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

#include "csasr/g2p.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "csasr/error.h"
#include "csasr/parallel.h"
#include "csasr/util.h"

namespace csasr {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();
constexpr std::string_view kModelMagic = "csasr-g2p";
constexpr int kModelVersion = 1;

double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::string Concat(const std::vector<std::string> &chars, std::size_t from, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count; ++k) out += chars[from + k];
  return out;
}

double SizeLogWeight(const AlignOptions &opts, std::size_t letters, std::size_t phonemes) {
  long excess = static_cast<long>(letters + phonemes) - 2;
  return excess > 0 ? static_cast<double>(excess) * std::log(opts.size_penalty) : 0.0;
}

// Segmentation lattice of one (word, pronunciation) pair. States are
// (letters consumed, phonemes consumed, last graphone had no letters);
// every edge advances letters + phonemes, so ordering states by that sum is
// topological.
struct Lattice {
  struct Edge {
    int src;
    int dst;
    int graphone;
    double log_weight;  // size weight only
  };
  std::size_t letters = 0, phonemes = 0;
  std::vector<int> order;        // states in topological order
  std::vector<Edge> edges;       // grouped by src in `order`
  std::vector<int> first_edge;   // per state, index into edges (or -1)
  std::vector<int> edge_count;
  int num_states = 0;

  int State(std::size_t i, std::size_t j, bool ins) const {
    return static_cast<int>((i * (phonemes + 1) + j) * 2 + (ins ? 1 : 0));
  }
};

struct GraphoneInterner {
  std::map<Graphone, int> ids;
  std::vector<Graphone> list;
  int Intern(const Graphone &g) {
    auto [it, fresh] = ids.emplace(g, static_cast<int>(list.size()));
    if (fresh) list.push_back(g);
    return it->second;
  }
};

// Builds the lattice restricted to edges on complete paths. Returns false
// when the pair has no admissible segmentation.
bool BuildLattice(const std::vector<std::string> &chars, const PhonemeSequence &phones,
                  const AlignOptions &opts, GraphoneInterner *interner, Lattice *lat) {
  lat->letters = chars.size();
  lat->phonemes = phones.size();
  lat->num_states = static_cast<int>((chars.size() + 1) * (phones.size() + 1) * 2);
  for (std::size_t sum = 0; sum <= chars.size() + phones.size(); ++sum)
    for (std::size_t i = 0; i <= std::min(sum, chars.size()); ++i) {
      std::size_t j = sum - i;
      if (j > phones.size()) continue;
      lat->order.push_back(lat->State(i, j, false));
      lat->order.push_back(lat->State(i, j, true));
    }

  struct Raw {
    std::size_t i, j;
    bool ins;
    std::size_t a, b;
  };
  std::vector<Raw> raw;
  for (int s : lat->order) {
    bool ins = s % 2;
    std::size_t ij = static_cast<std::size_t>(s / 2);
    std::size_t i = ij / (phones.size() + 1), j = ij % (phones.size() + 1);
    for (int a = 1; a <= opts.max_letters; ++a)
      for (int b = 0; b <= opts.max_phonemes; ++b)
        if (i + a <= chars.size() && j + b <= phones.size())
          raw.push_back({i, j, ins, static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
    if (opts.allow_insertions && !ins)
      for (int b = 1; b <= opts.max_phonemes; ++b)
        if (j + b <= phones.size()) raw.push_back({i, j, ins, 0, static_cast<std::size_t>(b)});
  }

  // Prune to edges on complete paths.
  std::vector<bool> fwd(lat->num_states, false), bwd(lat->num_states, false);
  fwd[lat->State(0, 0, false)] = true;
  for (const Raw &r : raw)
    if (fwd[lat->State(r.i, r.j, r.ins)]) fwd[lat->State(r.i + r.a, r.j + r.b, r.a == 0)] = true;
  bwd[lat->State(chars.size(), phones.size(), false)] = true;
  bwd[lat->State(chars.size(), phones.size(), true)] = true;
  for (auto it = raw.rbegin(); it != raw.rend(); ++it)
    if (bwd[lat->State(it->i + it->a, it->j + it->b, it->a == 0)])
      bwd[lat->State(it->i, it->j, it->ins)] = true;
  if (!bwd[lat->State(0, 0, false)]) return false;

  lat->first_edge.assign(lat->num_states, -1);
  lat->edge_count.assign(lat->num_states, 0);
  for (const Raw &r : raw) {
    int src = lat->State(r.i, r.j, r.ins);
    int dst = lat->State(r.i + r.a, r.j + r.b, r.a == 0);
    if (!fwd[src] || !bwd[dst]) continue;
    Graphone g{Concat(chars, r.i, r.a),
               PhonemeSequence(phones.begin() + r.j, phones.begin() + r.j + r.b)};
    if (lat->first_edge[src] < 0) lat->first_edge[src] = static_cast<int>(lat->edges.size());
    ++lat->edge_count[src];
    lat->edges.push_back({src, dst, interner->Intern(g), SizeLogWeight(opts, r.a, r.b)});
  }
  return true;
}

}  // namespace

AlignResult AlignLexicon(std::span<const PronEntry> entries, const AlignOptions &opts) {
  if (entries.empty()) throw ConfigError("align_lexicon: no entries");
  if (opts.em_iters < 1) throw ConfigError("align_lexicon: em_iters must be >= 1");
  if (opts.max_letters < 1 || opts.max_phonemes < 1)
    throw ConfigError("align_lexicon: graphone size bounds must be >= 1");
  if (!(opts.size_penalty > 0.0) || opts.size_penalty > 1.0)
    throw ConfigError("align_lexicon: size_penalty must be in (0, 1]");

  AlignResult result;
  GraphoneInterner interner;
  std::vector<Lattice> lattices;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    Lattice lat;
    if (BuildLattice(Utf8Chars(entries[k].word), entries[k].phonemes, opts, &interner, &lat)) {
      lattices.push_back(std::move(lat));
      result.aligned.push_back(k);
    } else {
      result.skipped.push_back(k);
    }
  }
  if (lattices.empty()) throw ConfigError("align_lexicon: no entry has an admissible segmentation");

  const std::size_t num_graphones = interner.list.size();
  std::vector<double> logp(num_graphones, -std::log(static_cast<double>(num_graphones)));

  auto edge_score = [&](const Lattice::Edge &e) { return logp[e.graphone] + e.log_weight; };

  // E-step over every lattice; returns the weighted log-likelihood.
  auto expectation = [&](std::vector<double> *counts) {
    double ll = 0.0;
    for (const Lattice &lat : lattices) {
      std::vector<double> alpha(lat.num_states, kLogZero), beta(lat.num_states, kLogZero);
      alpha[lat.State(0, 0, false)] = 0.0;
      for (int s : lat.order) {
        if (alpha[s] == kLogZero || lat.first_edge[s] < 0) continue;
        for (int e = lat.first_edge[s]; e < lat.first_edge[s] + lat.edge_count[s]; ++e)
          alpha[lat.edges[e].dst] = LogAdd(alpha[lat.edges[e].dst], alpha[s] + edge_score(lat.edges[e]));
      }
      beta[lat.State(lat.letters, lat.phonemes, false)] = 0.0;
      beta[lat.State(lat.letters, lat.phonemes, true)] = 0.0;
      for (auto it = lat.order.rbegin(); it != lat.order.rend(); ++it) {
        int s = *it;
        if (lat.first_edge[s] < 0) continue;
        for (int e = lat.first_edge[s]; e < lat.first_edge[s] + lat.edge_count[s]; ++e)
          beta[s] = LogAdd(beta[s], edge_score(lat.edges[e]) + beta[lat.edges[e].dst]);
      }
      double z = LogAdd(alpha[lat.State(lat.letters, lat.phonemes, false)],
                        alpha[lat.State(lat.letters, lat.phonemes, true)]);
      ll += z;
      if (!counts) continue;
      for (const Lattice::Edge &e : lat.edges) {
        double post = alpha[e.src] + edge_score(e) + beta[e.dst] - z;
        if (post > kLogZero) (*counts)[e.graphone] += std::exp(post);
      }
    }
    return ll;
  };

  for (int iter = 0; iter < opts.em_iters; ++iter) {
    std::vector<double> counts(num_graphones, 0.0);
    result.log_likelihood.push_back(expectation(&counts));
    double total = 0.0;
    for (double c : counts) total += c;
    for (std::size_t q = 0; q < num_graphones; ++q)
      logp[q] = counts[q] > 0.0 ? std::log(counts[q] / total) : kLogZero;
  }
  result.log_likelihood.push_back(expectation(nullptr));

  for (std::size_t q = 0; q < num_graphones; ++q)
    result.probabilities[interner.list[q]] = std::exp(logp[q]);

  for (const Lattice &lat : lattices) {
    std::vector<double> best(lat.num_states, kLogZero);
    std::vector<int> back(lat.num_states, -1);
    best[lat.State(0, 0, false)] = 0.0;
    for (int s : lat.order) {
      if (best[s] == kLogZero || lat.first_edge[s] < 0) continue;
      for (int e = lat.first_edge[s]; e < lat.first_edge[s] + lat.edge_count[s]; ++e) {
        const Lattice::Edge &edge = lat.edges[e];
        double cand = best[s] + edge_score(edge);
        if (cand > best[edge.dst]) {
          best[edge.dst] = cand;
          back[edge.dst] = e;
        }
      }
    }
    int end_plain = lat.State(lat.letters, lat.phonemes, false);
    int end_ins = lat.State(lat.letters, lat.phonemes, true);
    int s = best[end_ins] > best[end_plain] ? end_ins : end_plain;
    GraphoneSequence seq;
    while (back[s] >= 0) {
      seq.push_back(interner.list[lat.edges[back[s]].graphone]);
      s = lat.edges[back[s]].src;
    }
    std::reverse(seq.begin(), seq.end());
    result.alignments.push_back(std::move(seq));
  }
  return result;
}

int G2pModel::Intern(const Graphone &g) {
  auto [it, fresh] = ids_.emplace(g, static_cast<int>(inventory_.size()));
  if (fresh) inventory_.push_back(g);
  return it->second;
}

void G2pModel::Index() {
  by_letters_.clear();
  alphabet_.clear();
  for (std::size_t q = 0; q < inventory_.size(); ++q) {
    by_letters_[inventory_[q].letters].push_back(static_cast<int>(q));
    for (const std::string &ch : Utf8Chars(inventory_[q].letters)) alphabet_.insert(ch);
  }
}

int G2pModel::Id(const Graphone &g) const {
  auto it = ids_.find(g);
  return it == ids_.end() ? -1 : it->second;
}

const std::vector<int> &G2pModel::GraphonesWithLetters(const std::string &letters) const {
  static const std::vector<int> kNone;
  auto it = by_letters_.find(letters);
  return it == by_letters_.end() ? kNone : it->second;
}

G2pModel G2pModel::Train(const std::vector<GraphoneSequence> &alignments, int order,
                         const AlignOptions &space) {
  if (order < 1) throw ConfigError("g2p train: order must be >= 1");
  if (alignments.empty()) throw ConfigError("g2p train: no alignments");
  G2pModel m;
  m.order_ = order;
  m.allow_insertions_ = space.allow_insertions;
  for (const GraphoneSequence &seq : alignments)
    for (const Graphone &g : seq) {
      if (g.letters.empty() && g.phonemes.empty())
        throw ConfigError("g2p train: empty graphone");
      m.Intern(g);
    }
  m.counts_.resize(order);
  for (const GraphoneSequence &seq : alignments) {
    std::vector<int> tokens{m.BeginId()};
    for (const Graphone &g : seq) tokens.push_back(m.ids_.at(g));
    tokens.push_back(m.EndId());
    for (std::size_t pos = 1; pos < tokens.size(); ++pos) {
      for (int k = 0; k < order; ++k) {
        if (static_cast<std::size_t>(k) > pos) break;
        std::vector<int> history(tokens.begin() + (pos - k), tokens.begin() + pos);
        Context &ctx = m.counts_[k][history];
        ++ctx.next[tokens[pos]];
        ++ctx.total;
      }
    }
  }
  m.Index();
  return m;
}

double G2pModel::LogProb(const std::vector<int> &history, int next) const {
  double p = 1.0 / static_cast<double>(inventory_.size() + 1);
  const std::size_t max_k = std::min(static_cast<std::size_t>(order_ - 1), history.size());
  for (std::size_t k = 0; k <= max_k; ++k) {
    std::vector<int> h(history.end() - k, history.end());
    auto it = counts_[k].find(h);
    if (it == counts_[k].end() || it->second.total == 0) continue;
    const Context &ctx = it->second;
    auto c = ctx.next.find(next);
    double count = c == ctx.next.end() ? 0.0 : static_cast<double>(c->second);
    double types = static_cast<double>(ctx.next.size());
    p = (count + types * p) / (static_cast<double>(ctx.total) + types);
  }
  return std::log(p);
}

double G2pModel::RelativeFrequency(const std::vector<int> &history, int next) const {
  if (history.size() >= counts_.size()) return 0.0;
  auto it = counts_[history.size()].find(history);
  if (it == counts_[history.size()].end() || it->second.total == 0) return 0.0;
  auto c = it->second.next.find(next);
  return c == it->second.next.end()
             ? 0.0
             : static_cast<double>(c->second) / static_cast<double>(it->second.total);
}

std::vector<std::vector<int>> G2pModel::Contexts() const {
  std::vector<std::vector<int>> out;
  for (const auto &level : counts_)
    for (const auto &[h, ctx] : level) out.push_back(h);
  return out;
}

double G2pModel::ScoreAlignment(const GraphoneSequence &seq) const {
  std::vector<int> history{BeginId()};
  double total = 0.0;
  for (const Graphone &g : seq) {
    int id = Id(g);
    if (id < 0) return kLogZero;
    total += LogProb(history, id);
    history.push_back(id);
  }
  return total + LogProb(history, EndId());
}

namespace {

std::vector<int> Advance(const std::vector<int> &history, int token, int order) {
  std::vector<int> out = history;
  out.push_back(token);
  std::size_t keep = static_cast<std::size_t>(std::max(order - 1, 0));
  if (out.size() > keep) out.erase(out.begin(), out.end() - keep);
  return out;
}

std::vector<int> StartHistory(const G2pModel &m) {
  return Advance({}, m.BeginId(), m.Order());
}

std::size_t MaxLetters(const G2pModel &m) {
  std::size_t most = 0;
  for (const Graphone &g : m.Inventory()) most = std::max(most, Utf8Chars(g.letters).size());
  return most;
}

}  // namespace

double G2pModel::ScorePronunciation(std::string_view word, const PhonemeSequence &phonemes) const {
  const std::vector<std::string> chars = Utf8Chars(word);
  using Key = std::tuple<std::size_t, std::size_t, bool, std::vector<int>>;
  // Layered by letters + phonemes consumed.
  std::vector<std::map<Key, double>> layers(chars.size() + phonemes.size() + 1);
  const std::size_t max_letters = MaxLetters(*this);
  layers[0][{0, 0, false, StartHistory(*this)}] = 0.0;
  double best = kLogZero;
  for (std::size_t layer = 0; layer < layers.size(); ++layer) {
    for (const auto &[key, score] : layers[layer]) {
      const auto &[i, j, ins, history] = key;
      if (i == chars.size() && j == phonemes.size())
        best = std::max(best, score + LogProb(history, EndId()));
      for (std::size_t a = 0; a <= max_letters && i + a <= chars.size(); ++a) {
        if (a == 0 && (ins || !allow_insertions_)) continue;
        for (int q : GraphonesWithLetters(Concat(chars, i, a))) {
          const PhonemeSequence &ph = inventory_[q].phonemes;
          if (j + ph.size() > phonemes.size() ||
              !std::equal(ph.begin(), ph.end(), phonemes.begin() + j))
            continue;
          if (a == 0 && ph.empty()) continue;
          Key next{i + a, j + ph.size(), a == 0, Advance(history, q, order_)};
          double cand = score + LogProb(history, q);
          auto &slot = layers[layer + a + ph.size()];
          auto [it, fresh] = slot.emplace(next, cand);
          if (!fresh) it->second = std::max(it->second, cand);
        }
      }
    }
  }
  return best;
}

std::string G2pModel::Serialize() const {
  std::string out = std::string(kModelMagic) + ' ' + std::to_string(kModelVersion) + '\n';
  out += "order " + std::to_string(order_) + '\n';
  out += std::string("insertions ") + (allow_insertions_ ? "1" : "0") + '\n';
  out += "graphones " + std::to_string(inventory_.size()) + '\n';
  for (std::size_t q = 0; q < inventory_.size(); ++q)
    out += std::to_string(q) + '\t' + inventory_[q].letters + '\t' +
           PhonemesToString(inventory_[q].phonemes) + '\n';
  std::size_t n = 0;
  for (const auto &level : counts_)
    for (const auto &[h, ctx] : level) n += ctx.next.size();
  out += "ngrams " + std::to_string(n) + '\n';
  for (const auto &level : counts_) {
    for (const auto &[h, ctx] : level) {
      std::vector<std::string> hs;
      for (int t : h) hs.push_back(std::to_string(t));
      for (const auto &[next, count] : ctx.next)
        out += Join(hs, " ") + '\t' + std::to_string(next) + '\t' + std::to_string(count) + '\n';
    }
  }
  out += "end\n";
  return out;
}

G2pModel G2pModel::Deserialize(std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  std::size_t i = 0;
  auto expect = [&](std::string_view key) -> long {
    if (i >= lines.size()) throw ParseError("unexpected end of model", i);
    std::vector<std::string> f = SplitWhitespace(lines[i]);
    if (f.size() != 2 || f[0] != key)
      throw ParseError("expected '" + std::string(key) + " <value>'", i + 1);
    ++i;
    return ParseInt(f[1], i);
  };
  if (expect(kModelMagic) != kModelVersion) throw ParseError("unsupported model version", 1);
  G2pModel m;
  m.order_ = static_cast<int>(expect("order"));
  if (m.order_ < 1) throw ParseError("order must be >= 1", i);
  m.allow_insertions_ = expect("insertions") != 0;
  long num_graphones = expect("graphones");
  for (long q = 0; q < num_graphones; ++q, ++i) {
    if (i >= lines.size()) throw ParseError("truncated graphone table", i);
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 3 || ParseInt(f[0], i + 1) != q)
      throw ParseError("expected 'id<TAB>letters<TAB>phonemes'", i + 1);
    Graphone g{f[1], ParsePhonemes(f[2])};
    if (g.letters.empty() && g.phonemes.empty()) throw ParseError("empty graphone", i + 1);
    if (m.Intern(g) != q) throw ParseError("duplicate graphone", i + 1);
  }
  m.counts_.resize(m.order_);
  const int max_token = m.BeginId();
  long num_ngrams = expect("ngrams");
  for (long k = 0; k < num_ngrams; ++k, ++i) {
    if (i >= lines.size()) throw ParseError("truncated n-gram table", i);
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 3) throw ParseError("expected 'history<TAB>next<TAB>count'", i + 1);
    std::vector<int> h;
    for (const std::string &t : SplitWhitespace(f[0])) {
      long v = ParseInt(t, i + 1);
      if (v < 0 || v > max_token) throw ParseError("token id out of range", i + 1);
      h.push_back(static_cast<int>(v));
    }
    long next = ParseInt(f[1], i + 1);
    long count = ParseInt(f[2], i + 1);
    if (h.size() >= m.counts_.size() || next < 0 || next >= max_token || count <= 0)
      throw ParseError("invalid n-gram line", i + 1);
    Context &ctx = m.counts_[h.size()][h];
    if (!ctx.next.emplace(static_cast<int>(next), count).second)
      throw ParseError("duplicate n-gram", i + 1);
    ctx.total += count;
  }
  if (i >= lines.size() || lines[i] != "end") throw ParseError("expected 'end'", i + 1);
  m.Index();
  return m;
}

std::vector<ScoredPronunciation> Predict(const G2pModel &model, std::string_view word,
                                         std::size_t n, const PredictOptions &opts) {
  if (n == 0) throw ConfigError("predict: n must be >= 1");
  if (opts.beam == 0) throw ConfigError("predict: beam must be >= 1");
  const std::vector<std::string> chars = Utf8Chars(word);
  if (chars.empty()) throw ConfigError("predict: empty word");
  for (const std::string &ch : chars)
    if (!model.Alphabet().count(ch))
      throw ConfigError("predict: character '" + ch + "' of '" + std::string(word) +
                        "' is not in the grapheme alphabet");

  struct Hyp {
    std::vector<int> history;
    bool ins = false;
    PhonemeSequence phones;
    double score = 0.0;
  };
  using Key = std::tuple<std::vector<int>, bool, PhonemeSequence>;
  auto add = [](std::map<Key, double> &pool, Hyp h) {
    auto [it, fresh] = pool.emplace(Key{std::move(h.history), h.ins, std::move(h.phones)}, h.score);
    if (!fresh) it->second = std::max(it->second, h.score);
  };
  auto prune = [&](const std::map<Key, double> &pool) {
    std::vector<Hyp> hyps;
    for (const auto &[key, score] : pool)
      hyps.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), score});
    std::stable_sort(hyps.begin(), hyps.end(), [](const Hyp &a, const Hyp &b) {
      if (a.score != b.score) return a.score > b.score;
      return a.phones < b.phones;
    });
    if (hyps.size() > opts.beam) hyps.resize(opts.beam);
    return hyps;
  };
  auto extend = [&](const Hyp &h, int q) {
    Hyp next;
    next.history = Advance(h.history, q, model.Order());
    next.ins = model.Inventory()[q].letters.empty();
    next.phones = h.phones;
    const PhonemeSequence &ph = model.Inventory()[q].phonemes;
    next.phones.insert(next.phones.end(), ph.begin(), ph.end());
    next.score = h.score + model.LogProb(h.history, q);
    return next;
  };

  const std::size_t max_letters = MaxLetters(model);
  std::vector<std::map<Key, double>> arrivals(chars.size() + 1);
  add(arrivals[0], Hyp{StartHistory(model), false, {}, 0.0});
  std::map<PhonemeSequence, double> completions;
  for (std::size_t pos = 0; pos <= chars.size(); ++pos) {
    std::vector<Hyp> pool = prune(arrivals[pos]);
    if (model.AllowInsertions()) {
      std::map<Key, double> with_ins = arrivals[pos];
      for (const Hyp &h : pool)
        for (int q : model.GraphonesWithLetters(""))
          if (!h.ins) add(with_ins, extend(h, q));
      pool = prune(with_ins);
    }
    if (pos == chars.size()) {
      for (const Hyp &h : pool) {
        if (h.phones.empty()) continue;
        double total = h.score + model.LogProb(h.history, model.EndId());
        auto [it, fresh] = completions.emplace(h.phones, total);
        if (!fresh) it->second = std::max(it->second, total);
      }
      break;
    }
    for (const Hyp &h : pool)
      for (std::size_t a = 1; a <= max_letters && pos + a <= chars.size(); ++a)
        for (int q : model.GraphonesWithLetters(Concat(chars, pos, a)))
          add(arrivals[pos + a], extend(h, q));
  }

  std::vector<ScoredPronunciation> out;
  double norm = kLogZero;
  for (const auto &[phones, score] : completions) norm = LogAdd(norm, score);
  for (const auto &[phones, score] : completions) out.push_back({phones, score - norm});
  std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.phonemes < b.phonemes;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

std::vector<PredictOutcome> PredictBatch(const G2pModel &model,
                                         const std::vector<std::string> &words, std::size_t n,
                                         const PredictOptions &opts, int jobs) {
  std::vector<PredictOutcome> out(words.size());
  ForEachIndex(words.size(), jobs, [&](std::size_t i) {
    out[i].word = words[i];
    try {
      out[i].prons = Predict(model, words[i], n, opts);
    } catch (const ConfigError &e) {
      out[i].error = e.what();
    }
  });
  return out;
}

G2pTrainResult TrainG2p(std::span<const PronEntry> set_a, std::span<const PronEntry> set_b,
                        const G2pTrainOptions &opts) {
  if (opts.b_weight < 0) throw ConfigError("g2p train: b_weight must be >= 0");
  std::vector<PronEntry> all(set_a.begin(), set_a.end());
  for (int w = 0; w < opts.b_weight; ++w) all.insert(all.end(), set_b.begin(), set_b.end());
  AlignResult alignment = AlignLexicon(all, opts.align);
  G2pModel model = G2pModel::Train(alignment.alignments, opts.order, opts.align);
  return {std::move(model), std::move(alignment)};
}

}  // namespace csasr
