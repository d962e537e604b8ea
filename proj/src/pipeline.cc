// src/pipeline.cc
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

#include "csasr/pipeline.h"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "csasr/error.h"
#include "csasr/parallel.h"
#include "csasr/util.h"

namespace csasr {

namespace {

class LockedDecoder : public PhoneDecoderInterface {
 public:
  explicit LockedDecoder(const PhoneDecoderInterface &inner) : inner_(inner) {}
  PhonemeSequence Decode(const std::string &segment_ref) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_.Decode(segment_ref);
  }

 private:
  const PhoneDecoderInterface &inner_;
  mutable std::mutex mu_;
};

class LockedAligner : public ForcedAlignerInterface {
 public:
  explicit LockedAligner(const ForcedAlignerInterface &inner) : inner_(inner) {}
  AlignmentOutput Align(const Utterance &utt, const Lexicon *lexicon) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_.Align(utt, lexicon);
  }

 private:
  const ForcedAlignerInterface &inner_;
  mutable std::mutex mu_;
};

class LockedScorer : public AcousticScorerInterface {
 public:
  explicit LockedScorer(const AcousticScorerInterface &inner) : inner_(inner) {}
  double Score(const std::string &segment_ref, const PhonemeSequence &pron) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_.Score(segment_ref, pron);
  }

 private:
  const AcousticScorerInterface &inner_;
  mutable std::mutex mu_;
};

// Picks the implementation itself or a serializing wrapper around it.
template <typename Interface, typename Locked>
class Guarded {
 public:
  Guarded(const Interface &inner, int jobs) : inner_(inner) {
    if (jobs > 1 && !inner.ThreadSafe()) locked_.emplace(inner);
  }
  const Interface &get() const {
    if (locked_) return *locked_;
    return inner_;
  }

 private:
  const Interface &inner_;
  std::optional<Locked> locked_;
};

std::size_t EditDistance(const PhonemeSequence &a, const PhonemeSequence &b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

HarvestResult Harvest(const std::vector<Utterance> &corpus, const Lexicon *lexicon,
                      const std::set<std::string> &target_words,
                      const ForcedAlignerInterface &aligner_in,
                      const PhoneDecoderInterface &decoder_in, LexSource source,
                      const HarvestOptions &opts) {
  if (target_words.empty()) throw ConfigError("no target words");
  if (opts.nbest == 0) throw ConfigError("nbest must be >= 1");
  Guarded<ForcedAlignerInterface, LockedAligner> aligner(aligner_in, opts.jobs);
  Guarded<PhoneDecoderInterface, LockedDecoder> decoder(decoder_in, opts.jobs);

  std::vector<AlignmentOutput> aligned(corpus.size());
  ForEachIndex(corpus.size(), opts.jobs, [&](std::size_t u) {
    aligned[u] = aligner.get().Align(corpus[u], lexicon);
    ValidateSegments(aligned[u].segments);
  });

  HarvestResult result;
  std::map<std::string, std::vector<std::string>> refs;
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    for (const Segment &seg : aligned[u].segments)
      if (target_words.count(seg.word)) refs[seg.word].push_back(SegmentRef(corpus[u].id, seg));
    for (const std::string &w : aligned[u].unaligned)
      if (target_words.count(w)) result.unaligned.push_back({corpus[u].id, w});
  }
  for (const std::string &w : target_words) {
    auto it = refs.find(w);
    if (it == refs.end()) {
      result.omitted.push_back(w);
      continue;
    }
    WordHarvest h;
    h.word = w;
    h.segment_refs = it->second;
    result.words.push_back(std::move(h));
  }

  ForEachIndex(result.words.size(), opts.jobs, [&](std::size_t k) {
    WordHarvest &h = result.words[k];
    for (const std::string &ref : h.segment_refs) h.decoded.push_back(decoder.get().Decode(ref));
    h.cn = ConfusionNetwork::Build(h.decoded);
    h.prons = NBest(h.cn, opts.nbest);
  });

  for (const WordHarvest &h : result.words)
    for (const ScoredPronunciation &p : h.prons)
      result.lexicon.Add({h.word, p.phonemes, source, p.score});
  return result;
}

}  // namespace

void ValidateSegments(const std::vector<Segment> &segments) {
  double last_end = -kInfinity;
  for (const Segment &s : segments) {
    if (s.word.empty()) throw ConfigError("segment without a word");
    if (!(s.start >= 0.0) || !(s.end > s.start) || !std::isfinite(s.end))
      throw ConfigError("segment of '" + s.word + "' has an invalid span");
    if (s.start < last_end) throw ConfigError("segment of '" + s.word + "' overlaps its predecessor");
    last_end = s.end;
  }
}

std::string SegmentRef(std::string_view utt_id, const Segment &segment) {
  return std::string(utt_id) + '@' + FormatDouble(segment.start) + '-' + FormatDouble(segment.end);
}

std::vector<Utterance> ParseCorpus(std::string_view text) {
  std::vector<Utterance> out;
  std::set<std::string> seen;
  std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlankOrComment(lines[i])) continue;
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 2 || f[0].empty()) throw ParseError("expected 'utt_id<TAB>transcript'", i + 1);
    if (!seen.insert(f[0]).second) throw ParseError("duplicate utterance id '" + f[0] + "'", i + 1);
    out.push_back({f[0], SplitWhitespace(f[1]), std::nullopt});
  }
  return out;
}

ScriptedDecoder ScriptedDecoder::FromTsv(std::string_view text) {
  std::map<std::string, PhonemeSequence> script;
  std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlankOrComment(lines[i])) continue;
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 2) throw ParseError("expected 'segment_ref<TAB>phonemes'", i + 1);
    PhonemeSequence p = ParsePhonemes(f[1]);
    try {
      ValidatePhonemeSequence(p);
    } catch (const ConfigError &e) {
      throw ParseError(e.what(), i + 1);
    }
    if (!script.emplace(f[0], std::move(p)).second)
      throw ParseError("duplicate segment reference '" + f[0] + "'", i + 1);
  }
  return ScriptedDecoder(std::move(script));
}

PhonemeSequence ScriptedDecoder::Decode(const std::string &segment_ref) const {
  auto it = script_.find(segment_ref);
  if (it == script_.end()) throw ConfigError("decoder has no output for segment '" + segment_ref + "'");
  return it->second;
}

ManifestAligner::ManifestAligner(std::map<std::string, std::vector<Segment>> manifest,
                                 bool thread_safe)
    : manifest_(std::move(manifest)), thread_safe_(thread_safe) {
  for (auto &[utt, segs] : manifest_) {
    std::stable_sort(segs.begin(), segs.end(),
                     [](const Segment &a, const Segment &b) { return a.start < b.start; });
    ValidateSegments(segs);
  }
}

ManifestAligner ManifestAligner::FromTsv(std::string_view text) {
  std::map<std::string, std::vector<Segment>> manifest;
  std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlankOrComment(lines[i])) continue;
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 4 || f[0].empty() || f[1].empty())
      throw ParseError("expected 'utt_id<TAB>word<TAB>start<TAB>end'", i + 1);
    manifest[f[0]].push_back({f[1], ParseDouble(f[2], i + 1), ParseDouble(f[3], i + 1)});
  }
  return ManifestAligner(std::move(manifest));
}

AlignmentOutput ManifestAligner::Align(const Utterance &utt, const Lexicon *lexicon) const {
  AlignmentOutput out;
  std::set<std::string> in_transcript(utt.transcript.begin(), utt.transcript.end());
  std::set<std::string> found;
  auto it = manifest_.find(utt.id);
  if (it != manifest_.end())
    for (const Segment &seg : it->second) {
      if (!in_transcript.count(seg.word)) continue;
      if (lexicon && lexicon->Lookup(seg.word).empty()) continue;
      out.segments.push_back(seg);
      found.insert(seg.word);
    }
  std::set<std::string> reported;
  for (const std::string &w : utt.transcript)
    if (!found.count(w) && reported.insert(w).second) out.unaligned.push_back(w);
  return out;
}

ScriptedScorer ScriptedScorer::FromTsv(std::string_view text, const PhoneDecoderInterface *fallback) {
  std::map<std::pair<std::string, PhonemeSequence>, double> table;
  std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlankOrComment(lines[i])) continue;
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 3) throw ParseError("expected 'segment_ref<TAB>phonemes<TAB>score'", i + 1);
    if (!table.emplace(std::make_pair(f[0], ParsePhonemes(f[1])), ParseDouble(f[2], i + 1)).second)
      throw ParseError("duplicate score entry", i + 1);
  }
  return ScriptedScorer(std::move(table), fallback);
}

double ScriptedScorer::Score(const std::string &segment_ref, const PhonemeSequence &pron) const {
  auto it = table_.find({segment_ref, pron});
  if (it != table_.end()) return it->second;
  if (!fallback_)
    throw ConfigError("no score for '" + PhonemesToString(pron) + "' on segment '" + segment_ref + "'");
  return -static_cast<double>(EditDistance(fallback_->Decode(segment_ref), pron));
}

HarvestResult Pdff(const std::vector<Utterance> &fl_corpus, const std::set<std::string> &target_words,
                   const ForcedAlignerInterface &aligner, const PhoneDecoderInterface &decoder,
                   const HarvestOptions &opts) {
  return Harvest(fl_corpus, nullptr, target_words, aligner, decoder, LexSource::kL2f, opts);
}

HarvestResult Pdfn(const std::vector<Utterance> &nl_corpus, const Lexicon &nl_lexicon,
                   const Lexicon &initial_lexicon, const std::set<std::string> &target_words,
                   const ForcedAlignerInterface &aligner, const PhoneDecoderInterface &decoder,
                   const HarvestOptions &opts) {
  const Lexicon both[] = {nl_lexicon, initial_lexicon};
  Lexicon merged = Merge(both);
  return Harvest(nl_corpus, &merged, target_words, aligner, decoder, LexSource::kL2n, opts);
}

std::string FormatHarvestReport(const HarvestResult &result) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const WordHarvest &h : result.words)
    rows.emplace_back(h.word, "segments\t" + std::to_string(h.segment_refs.size()));
  for (const std::string &w : result.omitted) rows.emplace_back(w, "omitted:no-segments");
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto &[w, status] : rows) out += w + '\t' + status + '\n';
  for (const UnalignedWord &u : result.unaligned) out += "unaligned\t" + u.utt_id + '\t' + u.word + '\n';
  return out;
}

std::map<std::string, std::vector<std::string>> ParseRecordings(std::string_view text) {
  std::map<std::string, std::vector<std::string>> out;
  std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlankOrComment(lines[i])) continue;
    std::vector<std::string> f = SplitTabs(lines[i]);
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw ParseError("expected 'word<TAB>segment_ref'", i + 1);
    out[f[0]].push_back(f[1]);
  }
  return out;
}

DataBResult BuildG2pDataB(const std::vector<std::string> &words,
                          const std::map<std::string, std::vector<std::string>> &recordings,
                          const G2pModel &g2p_a, const PhoneDecoderInterface &decoder_in,
                          const AcousticScorerInterface &scorer_in, const DataBOptions &opts) {
  if (opts.k == 0) throw ConfigError("k must be >= 1");
  Guarded<PhoneDecoderInterface, LockedDecoder> decoder(decoder_in, opts.jobs);
  Guarded<AcousticScorerInterface, LockedScorer> scorer(scorer_in, opts.jobs);

  std::vector<DataBWord> per_word;
  std::set<std::string> seen;
  for (const std::string &w : words)
    if (seen.insert(w).second) per_word.push_back({w, {}, {}, {}});

  ForEachIndex(per_word.size(), opts.jobs, [&](std::size_t idx) {
    DataBWord &dw = per_word[idx];
    auto add = [&](const PhonemeSequence &p, bool g2p) {
      for (DataBCandidate &c : dw.candidates)
        if (c.phonemes == p) {
          (g2p ? c.from_g2p : c.from_decoder) = true;
          return;
        }
      dw.candidates.push_back({p, g2p, !g2p, 0.0});
    };
    try {
      for (const ScoredPronunciation &sp : Predict(g2p_a, dw.word, opts.k, opts.predict))
        add(sp.phonemes, true);
    } catch (const ConfigError &e) {
      dw.g2p_error = e.what();
    }
    static const std::vector<std::string> kNoRecordings;
    auto rec = recordings.find(dw.word);
    const std::vector<std::string> &refs = rec == recordings.end() ? kNoRecordings : rec->second;
    if (!refs.empty()) {
      std::vector<PhonemeSequence> decoded;
      for (const std::string &ref : refs) decoded.push_back(decoder.get().Decode(ref));
      for (const ScoredPronunciation &sp : NBest(ConfusionNetwork::Build(decoded), opts.k))
        add(sp.phonemes, false);
    }
    for (DataBCandidate &c : dw.candidates)
      for (const std::string &ref : refs) c.score += scorer.get().Score(ref, c.phonemes);
    std::vector<const DataBCandidate *> ranked;
    for (const DataBCandidate &c : dw.candidates) ranked.push_back(&c);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto *a, const auto *b) { return a->score > b->score; });
    for (std::size_t r = 0; r < ranked.size() && r < opts.k; ++r)
      dw.kept.push_back({dw.word, ranked[r]->phonemes, LexSource::kL3ab, ranked[r]->score});
  });

  DataBResult result;
  for (DataBWord &dw : per_word) {
    if (dw.candidates.empty()) {
      result.omitted.push_back(dw.word);
      continue;
    }
    result.entries.insert(result.entries.end(), dw.kept.begin(), dw.kept.end());
    result.words.push_back(std::move(dw));
  }
  return result;
}

std::string FormatDataBReport(const DataBResult &result) {
  std::string out;
  for (const DataBWord &dw : result.words) {
    for (const DataBCandidate &c : dw.candidates) {
      std::string origin = c.from_g2p && c.from_decoder ? "g2p+decoder" : c.from_g2p ? "g2p" : "decoder";
      out += dw.word + '\t' + PhonemesToString(c.phonemes) + '\t' + origin + '\t' +
             FormatDouble(c.score) + '\n';
    }
  }
  for (const std::string &w : result.omitted) out += w + "\tomitted:no-candidates\n";
  return out;
}

}  // namespace csasr
