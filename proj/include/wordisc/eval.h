// include/wordisc/eval.h

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

#ifndef WORDISC_EVAL_H_
#define WORDISC_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wordisc/corpus.h"
#include "wordisc/segmenter.h"

namespace wordisc {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t hits = 0;
  std::size_t hyp_count = 0;
  std::size_t gold_count = 0;
};

// P = hits/hyp and R = hits/gold, with 0 for an empty denominator, except
// that an empty hypothesis against an empty gold scores (1, 1, 1).
PrfScore MakePrf(std::size_t hits, std::size_t hyp_count, std::size_t gold_count);

// Corpus-level (micro-averaged) scores over internal boundaries. Every
// hypothesis must have a gold segmentation over the same phonemes.
PrfScore BoundaryPrf(std::span<const Segmentation> hyp, const Corpus &gold);
// Exact-span word tokens.
PrfScore TokenPrf(std::span<const Segmentation> hyp, const Corpus &gold);
// Distinct word types (phoneme sequences) over the scored utterances.
PrfScore TypePrf(std::span<const Segmentation> hyp, const Corpus &gold);

void WriteScoreHeader(std::ostream &out);
void WriteScoreRow(const std::string &metric, const PrfScore &score,
                   std::ostream &out);

struct LexiconEntry {
  PhonemeSeq phonemes;
  std::string discovered_type;  // phoneme symbols concatenated
  std::string translation_word;
  double best_ane = 0.0;
  std::size_t frequency = 0;
};

/// Groups aligned segments into (discovered type, translation word) pairs.
/// best_ane is the lowest sentence ANE among the pair's occurrences; output is
/// sorted by best_ane, then descending frequency, then type and translation.
/// Segments carrying the NULL marker are skipped. Voted runs are rejected.
std::vector<LexiconEntry> ExtractLexicon(std::span<const SegmentationRun> runs);

enum class ConcatStatus { kExact, kConcat2, kNone };
const char *ConcatStatusName(ConcatStatus status);

// kExact if the type is a gold type, kConcat2 if it splits (at a phoneme
// boundary) into two gold types, kNone otherwise.
ConcatStatus ConcatCheck(const PhonemeSeq &discovered,
                         const std::set<PhonemeSeq> &gold_types);

// One type per line, phoneme symbols separated by spaces.
std::set<PhonemeSeq> ReadGoldLexicon(const std::string &path);
void WriteGoldLexicon(const std::vector<PhonemeSeq> &types,
                      const std::string &path);

// rank, type, translation, best_ane, freq, concat_status. `top` of 0 writes
// every entry.
void WriteLexiconReport(std::span<const LexiconEntry> entries, std::size_t top,
                        const std::set<PhonemeSeq> *gold_types,
                        std::ostream &out);

struct OverlapReport {
  std::size_t k = 0;
  std::vector<std::string> in_all;
  // type -> languages whose top-k contains it (2 or more, not all)
  std::vector<std::pair<std::string, std::vector<std::string>>> in_some;
  std::vector<std::pair<std::string, std::string>> in_one;
};

// Compares the discovered types of every language's top-k entries.
OverlapReport CrossModelOverlap(
    const std::map<std::string, std::vector<LexiconEntry>> &lexicons,
    std::size_t k);
void WriteOverlapReport(const OverlapReport &report, std::ostream &out);

}  // namespace wordisc

#endif  // WORDISC_EVAL_H_
