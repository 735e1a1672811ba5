// include/wordisc/multilingual.h

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

#ifndef WORDISC_MULTILINGUAL_H_
#define WORDISC_MULTILINGUAL_H_

#include <map>
#include <string>
#include <vector>

#include "wordisc/segmenter.h"

namespace wordisc {

struct VoteConfig {
  double threshold = 0.5;              // agreement T in [0, 1]
  std::vector<std::string> languages;  // at least two, distinct
};

// Language label carried by voted output, e.g. "vote(T=0.5)".
std::string VoteLabel(double threshold);
bool IsVoteLabel(const std::string &language);
inline const char *const kSelectLabel = "select";

/// Keeps boundary b iff at least max(1, T*N) of the N configured languages
/// propose it, so T=0 is the union and T=1 the intersection. Segments of the
/// result carry the NULL marker.
Segmentation Vote(const std::map<std::string, Segmentation> &per_language,
                  const VoteConfig &config);

struct SelectionResult {
  std::string utterance_id;
  std::string chosen_language;
  Segmentation segmentation;
  std::map<std::string, double> ane_values;
};

// Picks the language with the lowest ANE, ties going to the language listed
// first in `priority`. The chosen segmentation is returned unchanged.
SelectionResult AneSelect(const std::map<std::string, SegmentationRun> &per_language,
                          const std::vector<std::string> &priority);

enum class CombineMode { kVote, kSelect };

struct CombineConfig {
  CombineMode mode = CombineMode::kVote;
  double threshold = 0.5;
  // Languages to combine (vote) or their priority order (select). Runs for
  // languages outside this list are ignored.
  std::vector<std::string> languages;
  bool parallel = true;
};

// AneSelect over every utterance, in the utterance order of priority[0].
std::vector<SelectionResult> SelectCorpus(
    const std::map<std::string, std::vector<SegmentationRun>> &per_language_runs,
    const std::vector<std::string> &priority, bool parallel = true);

// Applies Vote or AneSelect per utterance. Output follows the utterance order
// of the first configured language.
std::vector<Segmentation> CombineCorpus(
    const std::map<std::string, std::vector<SegmentationRun>> &per_language_runs,
    const CombineConfig &config);

}  // namespace wordisc

#endif  // WORDISC_MULTILINGUAL_H_
