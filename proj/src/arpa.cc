// src/arpa.cc
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

#include "csasr/arpa.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "csasr/error.h"
#include "csasr/util.h"

namespace csasr {

namespace {

const double kLn10 = std::log(10.0);

double Log10ToCost(double log10_value) { return -log10_value * kLn10; }

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::string ArpaModel::CheckEntry(const NgramEntry &e) const {
  const std::size_t n = e.tokens.size();
  if (n == 0) return "empty n-gram";
  if (std::isnan(e.logprob) || e.logprob > 0.0)
    return "logprob must be <= 0 (got " + FormatDouble(e.logprob) + ")";
  if (e.backoff && !std::isfinite(*e.backoff)) return "backoff weight must be finite";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string &t = e.tokens[i];
    if (t.empty() || t.find_first_of("\t\n ") != std::string::npos)
      return "invalid token '" + t + "'";
    if (t == kSentenceStart && i != 0) return "<s> may only start an n-gram";
    if (t == kSentenceEnd && i + 1 != n) return "</s> may only end an n-gram";
  }
  if (index_.count(e.tokens)) return "duplicate n-gram '" + Join(e.tokens, " ") + "'";
  if (n > 1) {
    std::vector<std::string> prefix(e.tokens.begin(), e.tokens.end() - 1);
    if (!index_.count(prefix))
      return "n-gram '" + Join(e.tokens, " ") + "' has no prefix entry '" +
             Join(prefix, " ") + "'";
  }
  return {};
}

void ArpaModel::Add(NgramEntry e) {
  const int order = static_cast<int>(e.tokens.size());
  if (static_cast<int>(by_order_.size()) < order) by_order_.resize(order);
  auto &bucket = by_order_[order - 1];
  index_.emplace(e.tokens, std::make_pair(order, bucket.size()));
  bucket.push_back(std::move(e));
}

ArpaModel ArpaModel::FromEntries(int max_order, std::vector<NgramEntry> entries) {
  if (max_order < 1) throw ConfigError("max_order must be >= 1");
  std::stable_sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    return a.tokens.size() < b.tokens.size();
  });
  ArpaModel m;
  m.by_order_.resize(max_order);
  for (NgramEntry &e : entries) {
    if (static_cast<int>(e.tokens.size()) > max_order)
      throw ConfigError("n-gram '" + Join(e.tokens, " ") + "' exceeds max order");
    std::string err = m.CheckEntry(e);
    if (!err.empty()) throw ConfigError(err);
    m.Add(std::move(e));
  }
  if (!m.Find({std::string(kSentenceStart)}) || !m.Find({std::string(kSentenceEnd)}))
    throw ConfigError("unigrams must include <s> and </s>");
  return m;
}

ArpaModel ArpaModel::Parse(std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && SplitWhitespace(lines[i]).empty()) ++i;
  };
  skip_blank();
  if (i >= lines.size() || SplitWhitespace(lines[i]) != std::vector<std::string>{"\\data\\"})
    throw ParseError("expected \\data\\ header", i < lines.size() ? i + 1 : 0);
  ++i;

  std::vector<std::size_t> declared;
  for (; i < lines.size(); ++i) {
    std::string line = Join(SplitWhitespace(lines[i]), " ");
    if (line.empty()) continue;
    if (!StartsWith(line, "ngram ")) break;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("malformed ngram count line", i + 1);
    long order = ParseInt(line.substr(6, eq - 6), i + 1);
    long count = ParseInt(line.substr(eq + 1), i + 1);
    if (order != static_cast<long>(declared.size()) + 1 || count < 0)
      throw ParseError("ngram counts must be listed for orders 1, 2, ... in sequence", i + 1);
    declared.push_back(static_cast<std::size_t>(count));
  }
  if (declared.empty()) throw ParseError("\\data\\ section declares no n-gram counts", i + 1);

  ArpaModel m;
  m.by_order_.resize(declared.size());
  for (std::size_t order = 1; order <= declared.size(); ++order) {
    skip_blank();
    std::string want = "\\" + std::to_string(order) + "-grams:";
    if (i >= lines.size() || Join(SplitWhitespace(lines[i]), "") != want)
      throw ParseError("expected section header " + want, i < lines.size() ? i + 1 : 0);
    ++i;
    std::size_t seen = 0;
    for (; i < lines.size(); ++i) {
      std::vector<std::string> fields = SplitWhitespace(lines[i]);
      if (fields.empty()) continue;
      if (fields[0].front() == '\\') break;
      if (fields.size() != order + 1 && fields.size() != order + 2)
        throw ParseError("expected " + std::to_string(order) + " tokens", i + 1);
      NgramEntry e;
      e.logprob = ParseDouble(fields[0], i + 1);
      e.tokens.assign(fields.begin() + 1, fields.begin() + 1 + order);
      if (fields.size() == order + 2) e.backoff = ParseDouble(fields.back(), i + 1);
      std::string err = m.CheckEntry(e);
      if (!err.empty()) throw ParseError(err, i + 1);
      m.Add(std::move(e));
      ++seen;
    }
    if (seen != declared[order - 1])
      throw ParseError("\\" + std::to_string(order) + "-grams: header declares " +
                           std::to_string(declared[order - 1]) + " entries, found " +
                           std::to_string(seen),
                       i < lines.size() ? i + 1 : 0);
  }
  skip_blank();
  if (i >= lines.size() || Join(SplitWhitespace(lines[i]), "") != "\\end\\")
    throw ParseError("expected \\end\\", i < lines.size() ? i + 1 : 0);
  if (!m.Find({std::string(kSentenceStart)}) || !m.Find({std::string(kSentenceEnd)}))
    throw ParseError("unigrams must include <s> and </s>", 0);
  return m;
}

std::string ArpaModel::Serialize() const {
  std::string out = "\\data\\\n";
  for (std::size_t k = 0; k < by_order_.size(); ++k)
    out += "ngram " + std::to_string(k + 1) + "=" + std::to_string(by_order_[k].size()) + "\n";
  for (std::size_t k = 0; k < by_order_.size(); ++k) {
    out += "\n\\" + std::to_string(k + 1) + "-grams:\n";
    for (const NgramEntry &e : by_order_[k]) {
      out += FormatDouble(e.logprob);
      out += '\t';
      out += Join(e.tokens, " ");
      if (e.backoff) {
        out += '\t';
        out += FormatDouble(*e.backoff);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  return out;
}

std::size_t ArpaModel::NumEntries() const {
  std::size_t n = 0;
  for (const auto &v : by_order_) n += v.size();
  return n;
}

const NgramEntry *ArpaModel::Find(const std::vector<std::string> &tokens) const {
  auto it = index_.find(tokens);
  if (it == index_.end()) return nullptr;
  return &by_order_[it->second.first - 1][it->second.second];
}

std::vector<std::string> ArpaModel::Vocabulary() const {
  std::vector<std::string> out;
  if (by_order_.empty()) return out;
  for (const NgramEntry &e : by_order_[0]) out.push_back(e.tokens[0]);
  return out;
}

double ConditionalLogProb(const ArpaModel &model, std::vector<std::string> history,
                          const std::string &word) {
  const std::size_t keep = static_cast<std::size_t>(model.MaxOrder() - 1);
  if (history.size() > keep) history.erase(history.begin(), history.end() - keep);
  double backoff_total = 0.0;
  while (true) {
    std::vector<std::string> ngram = history;
    ngram.push_back(word);
    const NgramEntry *e = model.Find(ngram);
    if (e && e->HasMass()) return backoff_total + e->logprob;
    if (history.empty()) return -kInfinity;
    const NgramEntry *h = model.Find(history);
    if (h && h->backoff) backoff_total += *h->backoff;
    history.erase(history.begin());
  }
}

double ScoreSentence(const ArpaModel &model, const std::vector<std::string> &words,
                     const ScoreOptions &opts) {
  if (words.empty()) throw ConfigError("score_sentence: empty word sequence");
  std::vector<std::string> context{std::string(kSentenceStart)};
  double total = 0.0;
  for (std::size_t i = 0; i <= words.size(); ++i) {
    std::string w = i < words.size() ? words[i] : std::string(kSentenceEnd);
    if (i < words.size()) {
      if (w == kSentenceStart || w == kSentenceEnd)
        throw ConfigError("sentence marker '" + w + "' inside a sentence");
      if (!model.InVocabulary(w)) {
        if (opts.strict || !model.InVocabulary(opts.unk))
          throw ConfigError("out-of-vocabulary word '" + w + "'");
        w = opts.unk;
      }
    }
    total += ConditionalLogProb(model, context, w);
    context.push_back(w);
  }
  return total;
}

Wfst BuildG(const ArpaModel &model) {
  auto syms = std::make_shared<SymbolTable>();
  for (const std::string &w : model.Vocabulary())
    if (w != kSentenceStart && w != kSentenceEnd) syms->AddSymbol(w);
  for (const NgramEntry &e : model.Entries(1))
    if (e.tokens[0] == kSentenceStart && e.HasMass()) syms->AddSymbol(e.tokens[0]);

  const int n = model.MaxOrder();
  // History states: the empty history plus every n-gram below the top order
  // that does not end in </s>.
  std::map<std::vector<std::string>, StateId> state_of;
  Wfst g(syms);
  state_of[{}] = g.AddState();
  for (int k = 1; k < n; ++k)
    for (const NgramEntry &e : model.Entries(k))
      if (e.tokens.back() != kSentenceEnd) state_of[e.tokens] = g.AddState();

  auto longest_state_suffix = [&](std::vector<std::string> tokens) {
    while (true) {
      auto it = state_of.find(tokens);
      if (it != state_of.end()) return it->second;
      tokens.erase(tokens.begin());
    }
  };

  const std::vector<std::string> start_history =
      n >= 2 ? std::vector<std::string>{std::string(kSentenceStart)} : std::vector<std::string>{};
  g.SetStart(state_of.at(start_history));

  for (int k = 1; k <= n; ++k) {
    for (const NgramEntry &e : model.Entries(k)) {
      std::vector<std::string> history(e.tokens.begin(), e.tokens.end() - 1);
      auto src = state_of.find(history);
      if (src == state_of.end()) continue;  // history ends in </s>; unreachable
      const std::string &w = e.tokens.back();
      if (w == kSentenceEnd) {
        if (e.HasMass()) g.SetFinal(src->second, Log10ToCost(e.logprob));
        continue;
      }
      if (!e.HasMass()) continue;
      StateId dst = k < n ? state_of.at(e.tokens)
                          : longest_state_suffix({e.tokens.begin() + 1, e.tokens.end()});
      Label l = syms->AddSymbol(w);
      g.AddArc(src->second, {dst, l, l, Log10ToCost(e.logprob)});
    }
  }
  for (const auto &[history, s] : state_of) {
    if (history.empty()) continue;
    const NgramEntry *e = model.Find(history);
    double bow = e && e->backoff ? *e->backoff : 0.0;
    StateId dst = longest_state_suffix({history.begin() + 1, history.end()});
    g.AddArc(s, {dst, kEpsilon, kEpsilon, Log10ToCost(bow)});
  }
  return g;
}

}  // namespace csasr
