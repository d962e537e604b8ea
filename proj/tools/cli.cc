// tools/cli.cc
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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "csasr/arpa.h"
#include "csasr/confnet.h"
#include "csasr/enrich.h"
#include "csasr/error.h"
#include "csasr/fst.h"
#include "csasr/g2p.h"
#include "csasr/lexicon.h"
#include "csasr/parallel.h"
#include "csasr/pipeline.h"
#include "csasr/recognizer.h"
#include "csasr/scoring.h"
#include "csasr/util.h"

namespace csasr {

namespace {

// Everything a subcommand produces. Nothing touches the file system until
// the subcommand has finished without error.
class Outputs {
 public:
  void Emit(const std::string &path, std::string text) {
    if (path.empty() || path == "-")
      stdout_ += text;
    else
      files_.emplace_back(path, std::move(text));
  }
  void Flush(std::ostream &out) const {
    for (const auto &[path, text] : files_) WriteFile(path, text);
    out << stdout_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
  std::string stdout_;
};

struct Globals {
  long seed = 0;
  bool verbose = false;
  int jobs = 1;
};

std::vector<std::string> ReadList(const std::string &path) {
  std::vector<std::string> out;
  for (const std::string &line : SplitLines(ReadFile(path))) {
    if (IsBlankOrComment(line)) continue;
    std::vector<std::string> f = SplitWhitespace(line);
    out.push_back(Join(f, " "));
  }
  return out;
}

// Phoneme inventory: whitespace-separated symbols, '#' comments allowed.
SymbolTablePtr LoadPhones(const std::string &path) {
  auto table = std::make_shared<SymbolTable>();
  if (path.empty()) return table;
  for (const std::string &line : ReadList(path))
    for (const std::string &p : SplitWhitespace(line)) {
      if (p == kEpsilonSymbol) throw ConfigError("phoneme inventory lists " + p);
      table->AddSymbol(p);
    }
  return table;
}

Lexicon LoadLexicon(const std::string &path) { return Lexicon::LoadTsv(ReadFile(path)); }

Wfst LoadFst(const std::string &path, const FstReadOptions &opts = {}) {
  return ReadFstText(ReadFile(path), opts);
}

std::string FormatEntries(const std::vector<PronEntry> &entries) {
  Lexicon lex;
  for (const PronEntry &e : entries) lex.Add(e);
  return lex.SaveTsv();
}

void CheckPositive(std::size_t value, const char *flag) {
  if (value == 0) throw ConfigError(std::string(flag) + " must be >= 1");
}

constexpr const char *kLexiconFormat =
    "Lexicon TSV: word<TAB>phonemes<TAB>source<TAB>score (score optional),\n"
    "  e.g. 篮球\tL AN Q IU\tL0\n"
    "  sources: L0 L1 L2f L2n L3a L3ab";
constexpr const char *kFstFormat =
    "FST text (AT&T): src<TAB>dst<TAB>isym<TAB>osym<TAB>cost and final<TAB>cost,\n"
    "  e.g. 0\t1\t我们\t我们\t0.693147";

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Code-switching lexicon and language-model toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized utilities (all subcommands are deterministic)");
  app.add_flag("--verbose", g.verbose, "Print timing to stderr");
  app.add_option("--jobs", g.jobs, "Worker threads for per-word parallel sections")
      ->check(CLI::PositiveNumber);

  std::map<CLI::App *, std::function<void(Outputs &)>> runners;
  auto add = [&](const char *name, const char *desc, const std::string &formats) {
    CLI::App *sub = app.add_subcommand(name, desc);
    sub->footer(formats);
    return sub;
  };

  // arpa2fst
  std::string a2f_arpa, a2f_out;
  {
    CLI::App *sub = add("arpa2fst", "Convert an ARPA backoff model to a G acceptor",
                        "ARPA: standard \\data\\ / \\N-grams: / \\end\\ text,\n"
                        "  e.g. -0.30103\t我们 打\t-0.1\n" + std::string(kFstFormat));
    sub->add_option("--arpa", a2f_arpa, "ARPA file")->required();
    sub->add_option("--out", a2f_out, "Output FST text (default stdout)");
    runners[sub] = [&](Outputs &o) {
      o.Emit(a2f_out, WriteFstText(BuildG(ArpaModel::Parse(ReadFile(a2f_arpa)))));
    };
  }

  // enrich
  std::string en_g, en_pairs, en_out, en_report;
  double en_scale = 1.0;
  bool en_strict = false;
  {
    CLI::App *sub = add("enrich", "Copy native-word arcs to paired foreign words",
                        "Pairs: nl_word<TAB>fl_word, e.g. 篮球\tbasketball\n"
                        "Report: fl_word<TAB>nl_word<TAB>arcs_added<TAB>status\n" +
                            std::string(kFstFormat));
    sub->add_option("--g", en_g, "Input G FST text")->required();
    sub->add_option("--pairs", en_pairs, "Translation pairs TSV")->required();
    sub->add_option("--scale", en_scale, "Probability multiplier for copied arcs")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", en_strict, "Fail when a native word has no arcs");
    sub->add_option("--out", en_out, "Output FST text (default stdout)");
    sub->add_option("--report", en_report, "Per-pair report TSV");
    runners[sub] = [&](Outputs &o) {
      EnrichConfig cfg;
      cfg.scale = en_scale;
      cfg.strict = en_strict;
      cfg.jobs = g.jobs;
      EnrichResult r = Enrich(LoadFst(en_g), ParseWordPairs(ReadFile(en_pairs)), cfg);
      o.Emit(en_out, WriteFstText(r.graph));
      if (!en_report.empty()) o.Emit(en_report, FormatEnrichReport(r.report));
    };
  }

  // cn-build
  std::vector<std::string> cn_in;
  std::string cn_out, cn_report, cn_lex_out, cn_source = "L2f";
  std::size_t cn_nbest = 4;
  {
    CLI::App *sub = add("cn-build", "Vote decoded phoneme sequences into confusion networks",
                        "Input: one file per word (word = file name without extension), one\n"
                        "  phoneme sequence per line, e.g. OU W EI Z; lines are sorted before merging\n"
                        "Output: word<TAB>rank<TAB>score<TAB>phonemes\n"
                        "Report: '# word' then index: phoneme(count) ..., e.g. 2: EI(2) I(1)\n" +
                            std::string(kLexiconFormat));
    sub->add_option("--in", cn_in, "Input file per word")->required();
    sub->add_option("--nbest", cn_nbest, "Pronunciations per word");
    sub->add_option("--out", cn_out, "N-best TSV (default stdout)");
    sub->add_option("--report", cn_report, "Confusion network report");
    sub->add_option("--lex-out", cn_lex_out, "Also write the n-best as lexicon entries");
    sub->add_option("--source", cn_source, "Source tag for --lex-out");
    runners[sub] = [&](Outputs &o) {
      CheckPositive(cn_nbest, "--nbest");
      auto source = ParseSource(cn_source);
      if (!source) throw ConfigError("unknown source '" + cn_source + "'");
      struct WordCn {
        std::string word;
        std::vector<PhonemeSequence> seqs;
        ConfusionNetwork cn;
        std::vector<ScoredPronunciation> best;
      };
      std::vector<WordCn> items;
      std::set<std::string> seen;
      for (const std::string &path : cn_in) {
        WordCn w;
        w.word = std::filesystem::path(path).stem().string();
        if (!seen.insert(w.word).second) throw ConfigError("two inputs for word '" + w.word + "'");
        for (const std::string &line : ReadList(path)) w.seqs.push_back(ParsePhonemes(line));
        std::sort(w.seqs.begin(), w.seqs.end());
        items.push_back(std::move(w));
      }
      ForEachIndex(items.size(), g.jobs, [&](std::size_t k) {
        items[k].cn = ConfusionNetwork::Build(items[k].seqs);
        items[k].best = NBest(items[k].cn, cn_nbest);
      });
      std::string table, report;
      std::vector<PronEntry> entries;
      for (const WordCn &w : items) {
        for (std::size_t r = 0; r < w.best.size(); ++r) {
          table += w.word + '\t' + std::to_string(r + 1) + '\t' + FormatDouble(w.best[r].score) +
                   '\t' + PhonemesToString(w.best[r].phonemes) + '\n';
          entries.push_back({w.word, w.best[r].phonemes, *source, w.best[r].score});
        }
        report += "# " + w.word + '\n' + w.cn.Report();
      }
      o.Emit(cn_out, table);
      if (!cn_report.empty()) o.Emit(cn_report, report);
      if (!cn_lex_out.empty()) o.Emit(cn_lex_out, FormatEntries(entries));
    };
  }

  // merge-lex
  std::vector<std::string> ml_lex;
  std::string ml_out;
  {
    CLI::App *sub = add("merge-lex", "Union of lexicons in the order given", kLexiconFormat);
    sub->add_option("--lex", ml_lex, "Lexicon TSV (repeatable)")->required();
    sub->add_option("--out", ml_out, "Output lexicon (default stdout)");
    runners[sub] = [&](Outputs &o) {
      std::vector<Lexicon> lexicons;
      for (const std::string &path : ml_lex) lexicons.push_back(LoadLexicon(path));
      o.Emit(ml_out, Merge(lexicons).SaveTsv());
    };
  }

  // lex2fst
  std::string lf_lex, lf_g, lf_pairs, lf_phones, lf_out;
  bool lf_score_costs = false;
  {
    CLI::App *sub = add("lex2fst", "Build the phoneme-to-word lexicon transducer L",
                        std::string(kLexiconFormat) + "\n" + kFstFormat);
    sub->add_option("--lex", lf_lex, "Lexicon TSV")->required();
    sub->add_option("--g", lf_g, "G FST whose words L must cover")->required();
    sub->add_option("--pairs", lf_pairs, "Pairs used to enrich G (adds the foreign words)");
    sub->add_option("--phones", lf_phones, "Phoneme inventory; lexicon phonemes must be listed");
    sub->add_flag("--score-costs", lf_score_costs, "Cost -ln(score / best score of the word)");
    sub->add_option("--out", lf_out, "Output FST text (default stdout)");
    runners[sub] = [&](Outputs &o) {
      Wfst gf = LoadFst(lf_g);
      SymbolTablePtr words = gf.OutputSymbolsPtr();
      if (!lf_pairs.empty()) words = Enrich(gf, ParseWordPairs(ReadFile(lf_pairs))).graph.OutputSymbolsPtr();
      LexiconFstOptions opts;
      opts.score_costs = lf_score_costs;
      Lexicon lex = LoadLexicon(lf_lex);
      if (!lf_phones.empty()) {
        SymbolTablePtr phones = LoadPhones(lf_phones);
        for (const PronEntry &e : lex.Entries())
          for (const std::string &p : e.phonemes)
            if (phones->Find(p) == kNoLabel)
              throw ConfigError("phoneme '" + p + "' of '" + e.word + "' is not in the inventory");
        o.Emit(lf_out, WriteFstText(BuildLexiconFst(lex, *phones, words, opts)));
      } else {
        o.Emit(lf_out, WriteFstText(BuildLexiconFst(lex, SymbolTable(), words, opts)));
      }
    };
  }

  // g2p-train
  std::string gt_a, gt_b, gt_out, gt_align;
  G2pTrainOptions gt_opts;
  {
    CLI::App *sub = add("g2p-train", "Train a joint-sequence G2P model",
                        std::string(kLexiconFormat) +
                            "\nModel: text, header 'csasr-g2p 1'\n"
                            "Alignments: word<TAB>letters:phonemes | ...");
    sub->add_option("--lex-a", gt_a, "Training lexicon (set a)")->required();
    sub->add_option("--lex-b", gt_b, "Additional decoded pronunciations (set b)");
    sub->add_option("--order", gt_opts.order, "Graphone n-gram order")->check(CLI::PositiveNumber);
    sub->add_option("--b-weight", gt_opts.b_weight, "Repetitions of set b")->check(CLI::NonNegativeNumber);
    sub->add_option("--em-iters", gt_opts.align.em_iters, "EM iterations")->check(CLI::PositiveNumber);
    sub->add_option("--size-penalty", gt_opts.align.size_penalty, "Per-extra-symbol graphone weight");
    sub->add_flag("--allow-insertions", gt_opts.align.allow_insertions, "Allow letterless graphones");
    sub->add_option("--out", gt_out, "Model path (default stdout)");
    sub->add_option("--alignments", gt_align, "Write the Viterbi segmentations");
    runners[sub] = [&](Outputs &o) {
      Lexicon a = LoadLexicon(gt_a);
      Lexicon b = gt_b.empty() ? Lexicon() : LoadLexicon(gt_b);
      G2pTrainResult r = TrainG2p(a.Entries(), b.Entries(), gt_opts);
      o.Emit(gt_out, r.model.Serialize());
      if (!gt_align.empty()) {
        std::vector<PronEntry> all(a.Entries().begin(), a.Entries().end());
        for (int w = 0; w < gt_opts.b_weight; ++w)
          all.insert(all.end(), b.Entries().begin(), b.Entries().end());
        std::string text;
        for (std::size_t k = 0; k < r.alignment.alignments.size(); ++k) {
          std::vector<std::string> parts;
          for (const Graphone &gp : r.alignment.alignments[k])
            parts.push_back(gp.letters + ':' + PhonemesToString(gp.phonemes));
          text += all[r.alignment.aligned[k]].word + '\t' + Join(parts, " | ") + '\n';
        }
        for (std::size_t idx : r.alignment.skipped) text += all[idx].word + "\tskipped\n";
        o.Emit(gt_align, text);
      }
    };
  }

  // g2p-apply
  std::string ga_model, ga_words, ga_out, ga_report, ga_source = "L3a";
  std::size_t ga_nbest = 4, ga_beam = 10;
  {
    CLI::App *sub = add("g2p-apply", "Predict pronunciations for a word list",
                        "Words: one word per line\n" + std::string(kLexiconFormat) +
                            "\nScores are log posteriors.\nReport: word<TAB>error");
    sub->add_option("--model", ga_model, "G2P model")->required();
    sub->add_option("--words", ga_words, "Word list")->required();
    sub->add_option("--nbest", ga_nbest, "Pronunciations per word");
    sub->add_option("--beam", ga_beam, "Search beam");
    sub->add_option("--source", ga_source, "Source tag");
    sub->add_option("--out", ga_out, "Output lexicon (default stdout)");
    sub->add_option("--report", ga_report, "Rejected words");
    runners[sub] = [&](Outputs &o) {
      CheckPositive(ga_nbest, "--nbest");
      CheckPositive(ga_beam, "--beam");
      auto source = ParseSource(ga_source);
      if (!source) throw ConfigError("unknown source '" + ga_source + "'");
      G2pModel model = G2pModel::Deserialize(ReadFile(ga_model));
      PredictOptions popts;
      popts.beam = ga_beam;
      std::vector<PronEntry> entries;
      std::string report;
      for (const PredictOutcome &po : PredictBatch(model, ReadList(ga_words), ga_nbest, popts, g.jobs)) {
        if (!po.error.empty()) report += po.word + '\t' + po.error + '\n';
        for (const ScoredPronunciation &p : po.prons) entries.push_back({po.word, p.phonemes, *source, p.score});
      }
      o.Emit(ga_out, FormatEntries(entries));
      if (!ga_report.empty()) o.Emit(ga_report, report);
    };
  }

  // pdff / pdfn
  struct HarvestFlags {
    std::string corpus, segments, decoder, words, nl_lex, initial_lex, out, report;
    std::size_t nbest = 4;
  };
  HarvestFlags pf, pn;
  const std::string harvest_formats =
      "Corpus: utt_id<TAB>transcript\n"
      "Segments: utt_id<TAB>word<TAB>start<TAB>end (seconds)\n"
      "Decoder script: segment_ref<TAB>phonemes, segment_ref = utt_id@start-end,\n"
      "  e.g. u1@0.5-1.25\tOU W EI Z\n"
      "Words: one target word per line\n" +
      std::string(kLexiconFormat) +
      "\nReport: word<TAB>segments<TAB>n | word<TAB>omitted:no-segments | "
      "unaligned<TAB>utt_id<TAB>word";
  auto harvest_flags = [&](CLI::App *sub, HarvestFlags &f) {
    sub->add_option("--corpus", f.corpus, "Corpus manifest")->required();
    sub->add_option("--segments", f.segments, "Segment manifest")->required();
    sub->add_option("--decoder", f.decoder, "Phone decoder script")->required();
    sub->add_option("--words", f.words, "Target words")->required();
    sub->add_option("--nbest", f.nbest, "Pronunciations per word");
    sub->add_option("--out", f.out, "Output lexicon (default stdout)");
    sub->add_option("--report", f.report, "Harvest report");
  };
  auto run_harvest = [&](Outputs &o, const HarvestFlags &f, bool native) {
    CheckPositive(f.nbest, "--nbest");
    std::vector<Utterance> corpus = ParseCorpus(ReadFile(f.corpus));
    ManifestAligner aligner = ManifestAligner::FromTsv(ReadFile(f.segments));
    ScriptedDecoder decoder = ScriptedDecoder::FromTsv(ReadFile(f.decoder));
    std::vector<std::string> list = ReadList(f.words);
    std::set<std::string> targets(list.begin(), list.end());
    HarvestOptions opts;
    opts.nbest = f.nbest;
    opts.jobs = g.jobs;
    HarvestResult r = native ? Pdfn(corpus, LoadLexicon(f.nl_lex), LoadLexicon(f.initial_lex),
                                    targets, aligner, decoder, opts)
                             : Pdff(corpus, targets, aligner, decoder, opts);
    o.Emit(f.out, r.lexicon.SaveTsv());
    if (!f.report.empty()) o.Emit(f.report, FormatHarvestReport(r));
  };
  {
    CLI::App *sub = add("pdff", "Harvest pronunciations from foreign speakers", harvest_formats);
    harvest_flags(sub, pf);
    runners[sub] = [&](Outputs &o) { run_harvest(o, pf, false); };
  }
  {
    CLI::App *sub = add("pdfn", "Harvest accented pronunciations from native speakers", harvest_formats);
    harvest_flags(sub, pn);
    sub->add_option("--nl-lex", pn.nl_lex, "Native lexicon")->required();
    sub->add_option("--initial-lex", pn.initial_lex, "Initial foreign-word lexicon")->required();
    runners[sub] = [&](Outputs &o) { run_harvest(o, pn, true); };
  }

  // g2p-data-b
  std::string db_words, db_rec, db_model, db_decoder, db_scores, db_out, db_report;
  std::size_t db_k = 4, db_beam = 10;
  {
    CLI::App *sub = add("g2p-data-b", "Build rescored G2P training data from recordings",
                        "Words: one word per line\n"
                        "Recordings: word<TAB>segment_ref\n"
                        "Decoder script: segment_ref<TAB>phonemes\n"
                        "Scores: segment_ref<TAB>phonemes<TAB>score (missing pairs score\n"
                        "  minus the edit distance to the decoded sequence)\n" +
                            std::string(kLexiconFormat) +
                            "\nReport: word<TAB>phonemes<TAB>origin<TAB>score");
    sub->add_option("--words", db_words, "Word list")->required();
    sub->add_option("--recordings", db_rec, "Recordings per word")->required();
    sub->add_option("--model", db_model, "G2P model trained on set a")->required();
    sub->add_option("--decoder", db_decoder, "Phone decoder script")->required();
    sub->add_option("--scores", db_scores, "Acoustic score table");
    sub->add_option("--k", db_k, "Candidates from each source and entries kept");
    sub->add_option("--beam", db_beam, "G2P search beam");
    sub->add_option("--out", db_out, "Output lexicon (default stdout)");
    sub->add_option("--report", db_report, "Candidate report");
    runners[sub] = [&](Outputs &o) {
      CheckPositive(db_k, "--k");
      CheckPositive(db_beam, "--beam");
      G2pModel model = G2pModel::Deserialize(ReadFile(db_model));
      ScriptedDecoder decoder = ScriptedDecoder::FromTsv(ReadFile(db_decoder));
      ScriptedScorer scorer = ScriptedScorer::FromTsv(db_scores.empty() ? "" : ReadFile(db_scores), &decoder);
      DataBOptions opts;
      opts.k = db_k;
      opts.predict.beam = db_beam;
      opts.jobs = g.jobs;
      DataBResult r = BuildG2pDataB(ReadList(db_words), ParseRecordings(ReadFile(db_rec)), model,
                                    decoder, scorer, opts);
      o.Emit(db_out, FormatEntries(r.entries));
      if (!db_report.empty()) o.Emit(db_report, FormatDataBReport(r));
    };
  }

  // decode
  std::string dc_phonemes, dc_l, dc_g, dc_phones, dc_out;
  std::size_t dc_nbest = 1;
  {
    CLI::App *sub = add("decode", "Decode a phoneme string through L and G",
                        std::string(kFstFormat) +
                            "\nOutput: rank<TAB>cost<TAB>words, or '# status: no_path'");
    sub->add_option("--phonemes", dc_phonemes, "Space-separated phonemes")->required();
    sub->add_option("--l", dc_l, "Lexicon FST")->required();
    sub->add_option("--g", dc_g, "Grammar FST")->required();
    sub->add_option("--nbest", dc_nbest, "Distinct word sequences");
    sub->add_option("--phones", dc_phones, "Phoneme inventory accepted as input");
    sub->add_option("--out", dc_out, "Output path (default stdout)");
    runners[sub] = [&](Outputs &o) {
      CheckPositive(dc_nbest, "--nbest");
      Wfst gf = LoadFst(dc_g);
      FstReadOptions lopts;
      lopts.isyms = LoadPhones(dc_phones);
      lopts.osyms = gf.InputSymbolsPtr();
      Wfst lf = LoadFst(dc_l, lopts);
      o.Emit(dc_out, FormatDecodeResults(Decode(ParsePhonemes(dc_phonemes), lf, gf, dc_nbest)));
    };
  }

  // compare-scales
  std::string cs_phonemes, cs_l, cs_g, cs_pairs, cs_phones, cs_out;
  std::vector<double> cs_scales{0.667, 1.0, 1.5};
  {
    CLI::App *sub = add("compare-scales", "Decode against G enriched at several scales",
                        std::string(kFstFormat) +
                            "\nPairs: nl_word<TAB>fl_word\n"
                            "Output: scale<TAB>status<TAB>cost<TAB>words");
    sub->add_option("--phonemes", cs_phonemes, "Space-separated phonemes")->required();
    sub->add_option("--l", cs_l, "Lexicon FST covering the foreign words")->required();
    sub->add_option("--g", cs_g, "Un-enriched grammar FST")->required();
    sub->add_option("--pairs", cs_pairs, "Translation pairs")->required();
    sub->add_option("--phones", cs_phones, "Phoneme inventory accepted as input");
    sub->add_option("--scales", cs_scales, "Scales to compare")->delimiter(',')->check(CLI::PositiveNumber);
    sub->add_option("--out", cs_out, "Output path (default stdout)");
    runners[sub] = [&](Outputs &o) {
      Wfst gf = LoadFst(cs_g);
      std::vector<WordPair> pairs = ParseWordPairs(ReadFile(cs_pairs));
      FstReadOptions lopts;
      lopts.isyms = LoadPhones(cs_phones);
      lopts.osyms = Enrich(gf, pairs).graph.InputSymbolsPtr();
      Wfst lf = LoadFst(cs_l, lopts);
      o.Emit(cs_out, FormatScaleRows(CompareScales(ParsePhonemes(cs_phonemes), lf, gf, pairs, cs_scales)));
    };
  }

  // score-wer
  std::string sw_ref, sw_hyp, sw_out;
  bool sw_fold = false, sw_keep_punct = false;
  {
    CLI::App *sub = add("score-wer", "Code-switching WER (each CJK character is a word)",
                        "Ref/hyp: parallel text files, one utterance per line,\n"
                        "  e.g. 我们打basketball\n"
                        "Output: line<TAB>S<TAB>I<TAB>D<TAB>ref_len<TAB>wer% and a total row");
    sub->add_option("--ref", sw_ref, "Reference text")->required();
    sub->add_option("--hyp", sw_hyp, "Hypothesis text")->required();
    sub->add_flag("--fold-case", sw_fold, "Lowercase non-CJK tokens");
    sub->add_flag("--keep-punctuation", sw_keep_punct, "Do not strip punctuation");
    sub->add_option("--out", sw_out, "Output path (default stdout)");
    runners[sub] = [&](Outputs &o) {
      TokenizeOptions opts;
      opts.fold_case = sw_fold;
      opts.strip_punctuation = !sw_keep_punct;
      o.Emit(sw_out, FormatCorpusWer(ScoreLines(SplitLines(ReadFile(sw_ref)),
                                                SplitLines(ReadFile(sw_hyp)), opts, g.jobs)));
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitInvalid;
  }

  for (auto &[sub, run] : runners) {
    if (!sub->parsed()) continue;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outputs outputs;
      run(outputs);
      outputs.Flush(out);
    } catch (const IoError &e) {
      err << "error: " << e.what() << '\n';
      return kExitIo;
    } catch (const Error &e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalid;
    }
    if (g.verbose) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);
      err << sub->get_name() << ": " << ms.count() << " ms\n";
    }
    return kExitOk;
  }
  err << app.help();
  return kExitInvalid;
}

}  // namespace csasr
