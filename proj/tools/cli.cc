// tools/cli.cc

// Copyright 2026  wordisc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <omp.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "CLI11.hpp"
#include "wordisc/alignment-matrix.h"
#include "wordisc/corpus.h"
#include "wordisc/error.h"
#include "wordisc/eval.h"
#include "wordisc/ibm1-aligner.h"
#include "wordisc/multilingual.h"
#include "wordisc/pipeline.h"
#include "wordisc/segmenter.h"
#include "wordisc/synth.h"
#include "wordisc/text-util.h"

namespace wordisc {

namespace {

struct Options {
  int jobs = 0;
  std::string format;
  bool no_lowercase = false;

  std::string corpus;
  std::vector<std::string> langs;
  std::string output;

  int iters = 30;
  double epsilon = 1e-6;
  double floor = 1e-12;
  bool no_null = false;

  std::vector<std::string> inputs;
  double threshold = 0.5;
  std::vector<std::string> priority;
  std::string gold;
  std::size_t top = 10;
  std::string gold_lexicon;

  SyntheticSpec synth;
  std::string lexicon_out;
  std::vector<std::string> synthetic;
  std::string langs_arg;
};

// Writes to `path`, or to `fallback` when the path is empty or "-".
class Sink {
 public:
  Sink(const std::string &path, std::ostream &fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream &get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream *stream_;
};

Corpus OpenCorpus(const Options &o, const std::string &path) {
  CorpusFormat fmt = o.format.empty() ? GuessCorpusFormat(path)
                                      : ParseCorpusFormat(o.format);
  return LoadCorpus(path, fmt, TokenizePolicy{!o.no_lowercase});
}

AlignerConfig MakeAlignerConfig(const Options &o) {
  AlignerConfig c;
  c.iterations = o.iters;
  c.convergence_epsilon = o.epsilon;
  c.prob_floor = o.floor;
  c.use_null = !o.no_null;
  return c;
}

std::vector<std::string> SplitCommas(const std::vector<std::string> &items) {
  std::vector<std::string> out;
  for (const auto &item : items)
    for (auto &part : SplitOn(item, ','))
      if (!part.empty()) out.push_back(part);
  return out;
}

// The language label of a per-language segmentation file.
std::string FileLanguage(const std::vector<SegmentationRecord> &records,
                         const std::string &path) {
  if (records.empty()) throw DataError(path + ": no segmentations");
  const std::string &lang = records.front().segmentation.language;
  for (const auto &r : records)
    if (r.segmentation.language != lang)
      throw DataError(path + ": mixes languages '" + lang + "' and '" +
                      r.segmentation.language + "'");
  return lang;
}

int DoStats(const Options &o, std::ostream &out) {
  Corpus corpus = OpenCorpus(o, o.corpus);
  std::vector<std::string> langs =
      o.langs.empty() ? corpus.languages() : SplitCommas(o.langs);
  WriteStatsHeader(out);
  for (const auto &l : langs) WriteStatsRow(CorpusStats(corpus, l), out);
  return 0;
}

int DoAlign(const Options &o, std::ostream &out, std::ostream &err) {
  Corpus corpus = OpenCorpus(o, o.corpus);
  AlignerConfig config = MakeAlignerConfig(o);
  auto langs = SplitCommas(o.langs);
  if (langs.size() != 1) throw CLI::ValidationError("--lang", "exactly one language expected");
  TrainingTrace trace = TrainIbm1Traced(corpus, langs[0], config);
  err << "align: " << trace.iterations_run << " iterations, log-likelihood "
      << FormatReal(trace.log_likelihood.back(), 10)
      << (trace.converged ? " (converged)" : "") << '\n';
  auto matrices = PosteriorMatrices(trace.table, corpus, langs[0], config);
  Sink sink(o.output, out);
  WriteMatrices(matrices, sink.get());
  return 0;
}

int DoSegment(const Options &o, std::ostream &out, std::ostream &err) {
  MatrixReadReport report;
  auto matrices = ReadMatrices(o.inputs.at(0), &report);
  if (report.rows_renormalized)
    err << "segment: renormalized " << report.rows_renormalized
        << " rows deviating from 1 by more than 1e-4\n";
  auto runs = SegmentCorpus(matrices);
  if (o.output.empty() || o.output == "-") {
    for (const auto &r : runs) WriteSegmentationLine(r.segmentation, out);
  } else {
    WriteSegmentations(std::span<const SegmentationRun>(runs), o.output);
  }
  return 0;
}

void EmitSegmentations(const std::vector<Segmentation> &segs,
                       const std::vector<std::optional<double>> &ane,
                       const std::string &path, std::ostream &out) {
  if (path.empty() || path == "-") {
    for (const auto &s : segs) WriteSegmentationLine(s, out);
    return;
  }
  std::ofstream tsv(path), side(SidecarPath(path));
  if (!tsv || !side) throw DataError("cannot write '" + path + "'");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    WriteSegmentationLine(segs[i], tsv);
    WriteSidecarLine(segs[i], ane[i], side);
  }
}

int DoVote(const Options &o, std::ostream &out) {
  if (o.inputs.size() < 2)
    throw CLI::ValidationError("vote", "needs at least two segmentation files");
  std::map<std::string, std::vector<SegmentationRun>> runs;
  std::vector<std::string> langs;
  for (const auto &path : o.inputs) {
    auto records = ReadSegmentations(path);
    std::string lang = FileLanguage(records, path);
    std::vector<SegmentationRun> r;
    for (auto &rec : records)
      r.push_back({std::move(rec.segmentation),
                   {"", lang, rec.ane.value_or(0.0)}});
    if (!runs.emplace(lang, std::move(r)).second)
      throw DataError("vote: two inputs carry language '" + lang + "'");
    langs.push_back(lang);
  }
  auto voted = CombineCorpus(runs, {CombineMode::kVote, o.threshold, langs, true});
  EmitSegmentations(voted, std::vector<std::optional<double>>(voted.size()),
                    o.output, out);
  return 0;
}

int DoSelect(const Options &o, std::ostream &out) {
  if (o.inputs.empty()) throw CLI::ValidationError("select", "no inputs");
  std::map<std::string, std::vector<SegmentationRun>> runs;
  std::vector<std::string> file_langs;
  for (const auto &path : o.inputs) {
    auto records = ReadSegmentations(path);
    std::string lang = FileLanguage(records, path);
    if (!runs.emplace(lang, RequireAne(std::move(records), path)).second)
      throw DataError("select: two inputs carry language '" + lang + "'");
    file_langs.push_back(lang);
  }
  std::vector<std::string> priority =
      o.priority.empty() ? file_langs : SplitCommas(o.priority);
  // Languages named in the priority list but not supplied are skipped.
  std::vector<std::string> used;
  for (const auto &l : priority)
    if (runs.count(l)) used.push_back(l);
  for (const auto &l : file_langs)
    if (std::find(used.begin(), used.end(), l) == used.end())
      throw DataError("select: language '" + l + "' is not in --priority");
  auto selected = SelectCorpus(runs, used);
  std::vector<Segmentation> segs;
  std::vector<std::optional<double>> ane;
  for (auto &s : selected) {
    s.segmentation.language = kSelectLabel;
    ane.push_back(s.ane_values.at(s.chosen_language));
    segs.push_back(std::move(s.segmentation));
  }
  EmitSegmentations(segs, ane, o.output, out);
  return 0;
}

int DoEval(const Options &o, std::ostream &out) {
  Corpus gold = OpenCorpus(o, o.gold);
  std::vector<Segmentation> hyp;
  for (auto &r : ReadSegmentations(o.inputs.at(0)))
    hyp.push_back(std::move(r.segmentation));
  Sink sink(o.output, out);
  WriteScoreHeader(sink.get());
  WriteScoreRow("boundary", BoundaryPrf(hyp, gold), sink.get());
  WriteScoreRow("token", TokenPrf(hyp, gold), sink.get());
  WriteScoreRow("type", TypePrf(hyp, gold), sink.get());
  return 0;
}

int DoLexicon(const Options &o, std::ostream &out) {
  auto runs = RequireAne(ReadSegmentations(o.inputs.at(0)), o.inputs.at(0));
  auto lexicon = ExtractLexicon(runs);
  std::set<PhonemeSeq> gold;
  if (!o.gold_lexicon.empty()) gold = ReadGoldLexicon(o.gold_lexicon);
  Sink sink(o.output, out);
  WriteLexiconReport(lexicon, o.top, o.gold_lexicon.empty() ? nullptr : &gold,
                     sink.get());
  return 0;
}

int DoSynth(const Options &o, std::ostream &out) {
  SyntheticCorpus syn = GenerateSynthetic(o.synth);
  CorpusFormat fmt = !o.format.empty()        ? ParseCorpusFormat(o.format)
                     : o.output.empty()       ? CorpusFormat::kTsv
                                              : GuessCorpusFormat(o.output);
  Sink sink(o.output, out);
  WriteCorpus(syn.corpus, sink.get(), fmt);
  if (!o.lexicon_out.empty()) WriteGoldLexicon(syn.lexicon, o.lexicon_out);
  return 0;
}

int DoPipeline(const Options &o, std::ostream &out) {
  PipelineConfig config;
  config.aligner = MakeAlignerConfig(o);
  config.vote_threshold = o.threshold;
  config.lexicon_top = o.top;
  config.output_dir = o.output;

  Corpus corpus;
  std::set<PhonemeSeq> gold_types;
  if (!o.synthetic.empty() || o.corpus.empty()) {
    if (!o.corpus.empty())
      throw CLI::ValidationError("pipeline", "give a corpus or --synthetic, not both");
    SyntheticSpec spec;
    for (const auto &kv : o.synthetic) spec.Set(kv);
    if (!o.langs_arg.empty()) spec.Set("langs=" + o.langs_arg);
    SyntheticCorpus syn = GenerateSynthetic(spec);
    corpus = std::move(syn.corpus);
    gold_types.insert(syn.lexicon.begin(), syn.lexicon.end());
    if (!config.output_dir.empty()) {
      std::filesystem::create_directories(config.output_dir);
      SaveCorpus(corpus, (std::filesystem::path(config.output_dir) / "corpus.tsv").string(),
                 CorpusFormat::kTsv);
      WriteGoldLexicon(syn.lexicon,
                       (std::filesystem::path(config.output_dir) / "gold-lexicon.txt").string());
    }
  } else {
    corpus = OpenCorpus(o, o.corpus);
    if (!o.langs_arg.empty()) config.languages = SplitCommas({o.langs_arg});
    if (!o.gold_lexicon.empty()) {
      gold_types = ReadGoldLexicon(o.gold_lexicon);
    } else {
      auto types = GoldTypes(corpus);
      gold_types.insert(types.begin(), types.end());
    }
  }
  PipelineResult result =
      RunPipeline(corpus, config, gold_types.empty() ? nullptr : &gold_types);
  WriteScoreHeader(out);
  for (const auto &s : result.scores)
    WriteScoreRow("boundary:" + s.system, s.boundary, out);
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Word discovery from phoneme sequences aligned to translations",
               "wordisc"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--jobs", o.jobs, "Worker threads (0 = OpenMP default)");

  auto add_corpus_flags = [&](CLI::App *sub) {
    sub->add_option("--format", o.format, "Corpus format: tsv or jsonl")
        ->check(CLI::IsMember({"tsv", "jsonl"}));
    sub->add_flag("--no-lowercase", o.no_lowercase,
                  "Keep translation case when tokenizing");
  };
  auto add_aligner_flags = [&](CLI::App *sub) {
    sub->add_option("--iters", o.iters, "Maximum EM iterations")
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", o.epsilon,
                    "Per-token log-likelihood convergence threshold");
    sub->add_option("--floor", o.floor, "Probability floor")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_flag("--no-null", o.no_null, "Disable the NULL source word");
  };

  auto *stats = app.add_subcommand("stats", "Corpus statistics per language");
  stats->add_option("corpus", o.corpus, "Corpus file")->required();
  stats->add_option("--lang", o.langs, "Language code(s); default all");
  add_corpus_flags(stats);

  auto *align = app.add_subcommand("align", "Train IBM-1 and write posterior matrices");
  align->add_option("corpus", o.corpus, "Corpus file")->required();
  align->add_option("--lang", o.langs, "Translation language")->required();
  align->add_option("-o,--output", o.output, "Matrix file (JSON-Lines)");
  add_corpus_flags(align);
  add_aligner_flags(align);

  auto *segment = app.add_subcommand("segment", "Segment from alignment matrices");
  segment->add_option("matrices", o.inputs, "Matrix file")->required()->expected(1);
  segment->add_option("-o,--output", o.output, "Segmentation file");

  auto *vote = app.add_subcommand("vote", "Boundary voting across languages");
  vote->add_option("inputs", o.inputs, "Per-language segmentation files")
      ->required();
  vote->add_option("--threshold", o.threshold, "Agreement threshold T")
      ->check(CLI::Range(0.0, 1.0));
  vote->add_option("-o,--output", o.output, "Voted segmentation file");

  auto *select = app.add_subcommand("select", "Per-utterance lowest-ANE selection");
  select->add_option("inputs", o.inputs, "Per-language segmentation files")
      ->required();
  select->add_option("--priority", o.priority, "Tie-break order, e.g. fr,en,pt");
  select->add_option("-o,--output", o.output, "Selected segmentation file");

  auto *eval = app.add_subcommand("eval", "Score a segmentation against gold");
  eval->add_option("hyp", o.inputs, "Hypothesis segmentation file")
      ->required()
      ->expected(1);
  eval->add_option("--gold", o.gold, "Gold corpus")->required();
  eval->add_option("-o,--output", o.output, "Score report");
  add_corpus_flags(eval);

  auto *lexicon = app.add_subcommand("lexicon", "Rank discovered (type, word) pairs");
  lexicon->add_option("segs", o.inputs, "Bilingual or selected segmentation file")
      ->required()
      ->expected(1);
  lexicon->add_option("--top", o.top, "Entries to report (0 = all)");
  lexicon->add_option("--gold-lexicon", o.gold_lexicon,
                      "Gold types, one per line, phonemes space-separated");
  lexicon->add_option("-o,--output", o.output, "Lexicon report");

  auto *synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--seed", o.synth.seed, "Random seed");
  synth->add_option("--vocab", o.synth.vocab, "Vocabulary size");
  synth->add_option("--sentences", o.synth.sentences, "Sentence count");
  synth->add_option("--langs", o.synth.langs, "Translation languages");
  synth->add_option("--phonemes", o.synth.phonemes,
                    "Phoneme inventory size (0 = 4 x vocab)");
  synth->add_option("--lexicon-out", o.lexicon_out, "Write the true lexicon here");
  synth->add_option("--format", o.format, "Output format: tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  synth->add_option("-o,--output", o.output, "Corpus file");

  auto *pipeline = app.add_subcommand("pipeline", "Run every stage end to end");
  pipeline->add_option("corpus", o.corpus, "Corpus file");
  pipeline->add_option("--synthetic", o.synthetic,
                       "Synthetic corpus spec as key=value pairs")
      ->expected(0, -1);
  pipeline->add_option("--langs", o.langs_arg,
                       "Languages (comma list), or a count with --synthetic");
  pipeline->add_option("--vote", o.threshold, "Voting threshold T")
      ->check(CLI::Range(0.0, 1.0));
  pipeline->add_option("--top", o.top, "Lexicon entries compared across languages");
  pipeline->add_option("--gold-lexicon", o.gold_lexicon, "Gold types file");
  pipeline->add_option("-o,--output", o.output, "Output directory");
  add_corpus_flags(pipeline);
  add_aligner_flags(pipeline);

  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "wordisc: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  // `--synthetic` with no values still selects the synthetic corpus.
  if (pipeline->parsed() && pipeline->count("--synthetic") && o.synthetic.empty())
    o.synthetic.push_back("seed=7");
  if (o.jobs > 0) omp_set_num_threads(o.jobs);

  try {
    if (stats->parsed()) return DoStats(o, out);
    if (align->parsed()) return DoAlign(o, out, err);
    if (segment->parsed()) return DoSegment(o, out, err);
    if (vote->parsed()) return DoVote(o, out);
    if (select->parsed()) return DoSelect(o, out);
    if (eval->parsed()) return DoEval(o, out);
    if (lexicon->parsed()) return DoLexicon(o, out);
    if (synth->parsed()) return DoSynth(o, out);
    if (pipeline->parsed()) {
      if (o.corpus.empty() && !pipeline->count("--synthetic"))
        throw CLI::ValidationError("pipeline", "give a corpus file or --synthetic");
      return DoPipeline(o, out);
    }
  } catch (const CLI::Error &e) {
    err << "wordisc: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    err << "wordisc: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace wordisc
