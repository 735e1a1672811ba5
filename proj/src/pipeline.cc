// src/pipeline.cc

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

#include "wordisc/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "wordisc/error.h"
#include "wordisc/multilingual.h"
#include "wordisc/segmenter.h"

namespace wordisc {

namespace {

std::string OutPath(const PipelineConfig &config, const std::string &name) {
  return (std::filesystem::path(config.output_dir) / name).string();
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

}  // namespace

const SystemScore &PipelineResult::Score(const std::string &system) const {
  for (const auto &s : scores)
    if (s.system == system) return s;
  throw DataError("no score for system '" + system + "'");
}

PipelineResult RunPipeline(const Corpus &corpus, const PipelineConfig &config,
                           const std::set<PhonemeSeq> *gold_types) {
  std::vector<std::string> languages =
      config.languages.empty() ? corpus.languages() : config.languages;
  if (languages.empty()) throw DataError("pipeline: corpus has no languages");
  for (const auto &l : languages)
    if (!corpus.HasLanguage(l))
      throw DataError("pipeline: language '" + l + "' is not in the corpus");
  const bool write = !config.output_dir.empty();
  if (write) std::filesystem::create_directories(config.output_dir);

  PipelineResult result;
  auto score = [&](const std::string &system,
                   const std::vector<Segmentation> &segs) {
    result.scores.push_back({system, BoundaryPrf(segs, corpus),
                             TokenPrf(segs, corpus), TypePrf(segs, corpus)});
  };

  std::map<std::string, std::vector<SegmentationRun>> runs;
  for (const auto &lang : languages) {
    TranslationTable table = TrainIbm1(corpus, lang, config.aligner);
    std::vector<AlignmentMatrix> matrices =
        PosteriorMatrices(table, corpus, lang, config.aligner);
    std::vector<SegmentationRun> segmented =
        SegmentCorpus(matrices, config.aligner.parallel);
    if (write) {
      WriteMatrices(matrices, OutPath(config, "matrices." + lang + ".jsonl"));
      WriteSegmentations(std::span<const SegmentationRun>(segmented),
                         OutPath(config, "segs." + lang + ".tsv"));
    }
    std::vector<Segmentation> segs;
    for (const auto &r : segmented) segs.push_back(r.segmentation);
    score(lang, segs);
    result.lexicons.emplace(lang, ExtractLexicon(segmented));
    runs.emplace(lang, std::move(segmented));
  }

  if (languages.size() >= 2) {
    std::vector<double> thresholds{0.0, config.vote_threshold, 1.0};
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    for (double t : thresholds) {
      CombineConfig cc{CombineMode::kVote, t, languages, config.aligner.parallel};
      std::vector<Segmentation> voted = CombineCorpus(runs, cc);
      if (write && t == config.vote_threshold)
        WriteSegmentations(std::span<const Segmentation>(voted),
                           OutPath(config, "voted.tsv"));
      score(VoteLabel(t), voted);
    }
  }

  std::vector<SelectionResult> selected =
      SelectCorpus(runs, languages, config.aligner.parallel);
  std::vector<SegmentationRun> selected_runs;
  std::vector<Segmentation> selected_segs;
  for (auto &s : selected) {
    s.segmentation.language = kSelectLabel;
    selected_segs.push_back(s.segmentation);
    selected_runs.push_back(
        {s.segmentation,
         {s.utterance_id, kSelectLabel, s.ane_values.at(s.chosen_language)}});
  }
  score(kSelectLabel, selected_segs);

  result.overlap = CrossModelOverlap(result.lexicons, config.lexicon_top);

  if (write) {
    WriteSegmentations(std::span<const SegmentationRun>(selected_runs),
                       OutPath(config, "selected.tsv"));
    auto report = OpenOut(OutPath(config, "report.tsv"));
    WriteScoreHeader(report);
    for (const auto &s : result.scores) {
      WriteScoreRow("boundary:" + s.system, s.boundary, report);
      WriteScoreRow("token:" + s.system, s.token, report);
      WriteScoreRow("type:" + s.system, s.type, report);
    }
    for (const auto &[lang, lex] : result.lexicons) {
      auto out = OpenOut(OutPath(config, "lexicon." + lang + ".tsv"));
      WriteLexiconReport(lex, config.lexicon_top, gold_types, out);
    }
    auto overlap = OpenOut(OutPath(config, "overlap.tsv"));
    WriteOverlapReport(result.overlap, overlap);
  }
  return result;
}

}  // namespace wordisc
