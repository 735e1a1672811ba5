// include/wordisc/pipeline.h

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

#ifndef WORDISC_PIPELINE_H_
#define WORDISC_PIPELINE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wordisc/corpus.h"
#include "wordisc/eval.h"
#include "wordisc/ibm1-aligner.h"

namespace wordisc {

struct PipelineConfig {
  std::vector<std::string> languages;  // empty: every corpus language
  AlignerConfig aligner;
  double vote_threshold = 0.5;
  std::size_t lexicon_top = 50;
  std::string output_dir;  // empty: nothing written
};

struct SystemScore {
  std::string system;  // language code, vote(T=...) or select
  PrfScore boundary;
  PrfScore token;
  PrfScore type;
};

struct PipelineResult {
  std::vector<SystemScore> scores;  // bilingual runs, votes, then select
  std::map<std::string, std::vector<LexiconEntry>> lexicons;
  OverlapReport overlap;

  const SystemScore &Score(const std::string &system) const;
};

/// Full run: per language, train IBM-1, build posterior matrices, segment and
/// score; then vote at T=0, the configured T and T=1, ANE selection, lexicon
/// extraction and the cross-language overlap of the top entries. With an
/// output directory every intermediate file is written there as well.
PipelineResult RunPipeline(const Corpus &corpus, const PipelineConfig &config,
                           const std::set<PhonemeSeq> *gold_types = nullptr);

}  // namespace wordisc

#endif  // WORDISC_PIPELINE_H_
