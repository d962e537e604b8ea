// src/scoring.cc
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

#include "csasr/scoring.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "csasr/error.h"
#include "csasr/parallel.h"
#include "csasr/util.h"

namespace csasr {

namespace {

const std::set<std::string> &Punctuation() {
  static const std::set<std::string> kSet = {
      ",", ".", "!", "?", ";", ":", "\"", "(", ")",
      "，", "。", "！", "？", "；", "：", "、", "“", "”", "（", "）", "《", "》"};
  return kSet;
}

bool IsSpace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' ||
         cp == U'\f' || cp == 0x3000;
}

}  // namespace

bool IsCjk(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF);
}

TokenSequence TokenizeCs(std::string_view text, const TokenizeOptions &opts) {
  TokenSequence out;
  std::string run;
  auto flush = [&] {
    if (run.empty()) return;
    if (opts.fold_case)
      std::transform(run.begin(), run.end(), run.begin(), [](unsigned char c) {
        return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
      });
    out.push_back(std::move(run));
    run.clear();
  };
  for (const std::string &ch : Utf8Chars(text)) {
    char32_t cp = DecodeUtf8(ch);
    if (IsSpace(cp) || (opts.strip_punctuation && Punctuation().count(ch))) {
      flush();
    } else if (IsCjk(cp)) {
      flush();
      out.push_back(ch);
    } else {
      run += ch;
    }
  }
  flush();
  return out;
}

WerResult Wer(const TokenSequence &ref, const TokenSequence &hyp) {
  if (ref.empty()) throw ConfigError("wer: empty reference");
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1), d[i - 1][j] + 1,
                          d[i][j - 1] + 1});
  WerResult r;
  r.ref_len = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++r.substitutions;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++r.deletions;
      --i;
    } else {
      ++r.insertions;
      --j;
    }
  }
  r.wer = static_cast<double>(r.Errors()) / static_cast<double>(n);
  return r;
}

CorpusWer ScoreLines(const std::vector<std::string> &ref_lines,
                     const std::vector<std::string> &hyp_lines, const TokenizeOptions &opts,
                     int jobs) {
  if (ref_lines.size() != hyp_lines.size())
    throw ConfigError("reference has " + std::to_string(ref_lines.size()) +
                      " lines but hypothesis has " + std::to_string(hyp_lines.size()));
  CorpusWer out;
  out.lines.resize(ref_lines.size());
  ForEachIndex(ref_lines.size(), jobs, [&](std::size_t k) {
    TokenSequence ref = TokenizeCs(ref_lines[k], opts);
    if (ref.empty()) throw ConfigError("reference line " + std::to_string(k + 1) + " is empty");
    out.lines[k] = Wer(ref, TokenizeCs(hyp_lines[k], opts));
  });
  for (const WerResult &r : out.lines) {
    out.total.substitutions += r.substitutions;
    out.total.insertions += r.insertions;
    out.total.deletions += r.deletions;
    out.total.ref_len += r.ref_len;
  }
  if (out.total.ref_len > 0)
    out.total.wer = static_cast<double>(out.total.Errors()) / static_cast<double>(out.total.ref_len);
  return out;
}

std::string FormatPercent(double wer) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", wer * 100.0);
  return buf;
}

std::string FormatCorpusWer(const CorpusWer &result) {
  auto row = [](const std::string &name, const WerResult &r) {
    return name + '\t' + std::to_string(r.substitutions) + '\t' + std::to_string(r.insertions) +
           '\t' + std::to_string(r.deletions) + '\t' + std::to_string(r.ref_len) + '\t' +
           FormatPercent(r.wer) + "%\n";
  };
  std::string out = "line\tS\tI\tD\tref_len\twer\n";
  for (std::size_t k = 0; k < result.lines.size(); ++k)
    out += row(std::to_string(k + 1), result.lines[k]);
  out += row("total", result.total);
  return out;
}

}  // namespace csasr
