// include/csasr/pipeline.h
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

#ifndef CSASR_PIPELINE_H_
#define CSASR_PIPELINE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csasr/confnet.h"
#include "csasr/g2p.h"
#include "csasr/lexicon.h"
#include "csasr/pronunciation.h"

namespace csasr {

// Time span of one word inside an utterance, in seconds.
struct Segment {
  std::string word;
  double start = 0.0;
  double end = 0.0;
  bool operator==(const Segment &) const = default;
};

struct Utterance {
  std::string id;
  std::vector<std::string> transcript;
  std::optional<std::vector<Segment>> segments;
};

// Throws ConfigError unless spans are ordered, nonoverlapping and start <= end.
void ValidateSegments(const std::vector<Segment> &segments);

// Opaque handle for a stretch of audio: `utt_id@start-end`.
std::string SegmentRef(std::string_view utt_id, const Segment &segment);

class PhoneDecoderInterface {
 public:
  virtual ~PhoneDecoderInterface() = default;
  // Same reference, same answer. Throws ConfigError for unknown references.
  virtual PhonemeSequence Decode(const std::string &segment_ref) const = 0;
  virtual bool ThreadSafe() const { return true; }
};

struct AlignmentOutput {
  std::vector<Segment> segments;
  std::vector<std::string> unaligned;  // transcript words without a segment
};

class ForcedAlignerInterface {
 public:
  virtual ~ForcedAlignerInterface() = default;
  // A null lexicon means the aligner's own recognizer lexicon.
  virtual AlignmentOutput Align(const Utterance &utt, const Lexicon *lexicon) const = 0;
  virtual bool ThreadSafe() const { return true; }
};

class AcousticScorerInterface {
 public:
  virtual ~AcousticScorerInterface() = default;
  // Higher is better.
  virtual double Score(const std::string &segment_ref, const PhonemeSequence &pron) const = 0;
  virtual bool ThreadSafe() const { return true; }
};

// `utt_id<TAB>transcript` per line.
std::vector<Utterance> ParseCorpus(std::string_view text);

// Replays `segment_ref<TAB>phonemes` lines.
class ScriptedDecoder : public PhoneDecoderInterface {
 public:
  explicit ScriptedDecoder(std::map<std::string, PhonemeSequence> script, bool thread_safe = true)
      : script_(std::move(script)), thread_safe_(thread_safe) {}
  static ScriptedDecoder FromTsv(std::string_view text);
  PhonemeSequence Decode(const std::string &segment_ref) const override;
  bool ThreadSafe() const override { return thread_safe_; }

 private:
  std::map<std::string, PhonemeSequence> script_;
  bool thread_safe_;
};

// Reads segments from a manifest (`utt_id<TAB>word<TAB>start<TAB>end`). A
// segment is returned only when its word is in the transcript and, given a
// lexicon, has a pronunciation there.
class ManifestAligner : public ForcedAlignerInterface {
 public:
  explicit ManifestAligner(std::map<std::string, std::vector<Segment>> manifest,
                           bool thread_safe = true);
  static ManifestAligner FromTsv(std::string_view text);
  AlignmentOutput Align(const Utterance &utt, const Lexicon *lexicon) const override;
  bool ThreadSafe() const override { return thread_safe_; }

 private:
  std::map<std::string, std::vector<Segment>> manifest_;
  bool thread_safe_;
};

// Fixed scores from `segment_ref<TAB>phonemes<TAB>score` lines. Pairs not
// listed score minus the phoneme edit distance to the fallback decoder's
// output; without a fallback they are a ConfigError.
class ScriptedScorer : public AcousticScorerInterface {
 public:
  ScriptedScorer(std::map<std::pair<std::string, PhonemeSequence>, double> table,
                 const PhoneDecoderInterface *fallback)
      : table_(std::move(table)), fallback_(fallback) {}
  static ScriptedScorer FromTsv(std::string_view text, const PhoneDecoderInterface *fallback);
  double Score(const std::string &segment_ref, const PhonemeSequence &pron) const override;

 private:
  std::map<std::pair<std::string, PhonemeSequence>, double> table_;
  const PhoneDecoderInterface *fallback_;
};

struct HarvestOptions {
  std::size_t nbest = 4;
  int jobs = 1;
};

struct WordHarvest {
  std::string word;
  std::vector<std::string> segment_refs;  // corpus order
  std::vector<PhonemeSequence> decoded;   // one per segment
  ConfusionNetwork cn;
  std::vector<ScoredPronunciation> prons;
};

struct UnalignedWord {
  std::string utt_id;
  std::string word;
  bool operator==(const UnalignedWord &) const = default;
};

struct HarvestResult {
  Lexicon lexicon;
  std::vector<WordHarvest> words;     // target words with segments, sorted
  std::vector<std::string> omitted;   // target words without segments, sorted
  std::vector<UnalignedWord> unaligned;
};

// Phone decoding of foreign words spoken by foreign speakers: align the
// corpus, decode every segment of each target word, vote in a confusion
// network, keep the top nbest as L2f entries scored by votes.
HarvestResult Pdff(const std::vector<Utterance> &fl_corpus, const std::set<std::string> &target_words,
                   const ForcedAlignerInterface &aligner,
                   const PhoneDecoderInterface &decoder, const HarvestOptions &opts = {});

// Same harvest over native speech; the aligner sees the native lexicon
// merged with `initial_lexicon`, and entries are tagged L2n.
HarvestResult Pdfn(const std::vector<Utterance> &nl_corpus, const Lexicon &nl_lexicon,
                   const Lexicon &initial_lexicon, const std::set<std::string> &target_words,
                   const ForcedAlignerInterface &aligner, const PhoneDecoderInterface &decoder,
                   const HarvestOptions &opts = {});

// `word<TAB>segments<TAB>n` or `word<TAB>omitted:no-segments`, then
// `unaligned<TAB>utt_id<TAB>word` lines.
std::string FormatHarvestReport(const HarvestResult &result);

struct DataBOptions {
  std::size_t k = 4;
  PredictOptions predict;
  int jobs = 1;
};

struct DataBCandidate {
  PhonemeSequence phonemes;
  bool from_g2p = false;
  bool from_decoder = false;
  double score = 0.0;  // summed over the word's recordings
};

struct DataBWord {
  std::string word;
  std::vector<DataBCandidate> candidates;  // distinct, G2P ones first
  std::vector<PronEntry> kept;
  std::string g2p_error;
};

struct DataBResult {
  std::vector<PronEntry> entries;
  std::vector<DataBWord> words;
  std::vector<std::string> omitted;
};

// Up to k G2P candidates and k decoded candidates per word, deduplicated,
// rescored on the word's recordings, top k kept as L3ab entries.
DataBResult BuildG2pDataB(const std::vector<std::string> &words,
                          const std::map<std::string, std::vector<std::string>> &recordings,
                          const G2pModel &g2p_a, const PhoneDecoderInterface &decoder,
                          const AcousticScorerInterface &scorer, const DataBOptions &opts = {});

// `word<TAB>segment_ref` per line.
std::map<std::string, std::vector<std::string>> ParseRecordings(std::string_view text);

std::string FormatDataBReport(const DataBResult &result);

}  // namespace csasr

#endif  // CSASR_PIPELINE_H_
