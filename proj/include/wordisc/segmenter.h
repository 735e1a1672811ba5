// include/wordisc/segmenter.h

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

#ifndef WORDISC_SEGMENTER_H_
#define WORDISC_SEGMENTER_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordisc/alignment-matrix.h"
#include "wordisc/corpus.h"

namespace wordisc {

// Half-open phoneme span [begin, end), 0-based. `word` is the aligned source
// token; nullopt is the NULL marker (no single aligned word).
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<std::string> word;

  bool operator==(const Segment &) const = default;
};

struct Segmentation {
  std::string utterance_id;
  std::string language;
  PhonemeSeq phonemes;
  BoundarySet boundaries;
  std::vector<Segment> segments;

  std::size_t length() const { return phonemes.size(); }
  PhonemeSeq SegmentPhonemes(std::size_t i) const {
    return {phonemes.begin() + segments[i].begin,
            phonemes.begin() + segments[i].end};
  }

  bool operator==(const Segmentation &) const = default;
};

// Builds the segmentation implied by `boundaries`; every segment carries the
// NULL marker. Throws DataError on out-of-range or unsorted boundaries.
Segmentation SegmentationFromBoundaries(std::string utterance_id,
                                        std::string language,
                                        PhonemeSeq phonemes,
                                        BoundarySet boundaries);

// Throws DataError if the segments do not partition the phonemes in order or
// disagree with the boundary set.
void CheckSegmentation(const Segmentation &seg);

struct AneScore {
  std::string utterance_id;
  std::string language;
  double value = 0.0;
};

struct SegmentationRun {
  Segmentation segmentation;
  AneScore ane;
};

/// Groups neighbouring phonemes aligned to the same source position.
///
/// Each phoneme takes the argmax source position of its row (lowest index on
/// ties). A phoneme whose argmax is the NULL column inherits the position of
/// the previous phoneme; a leading NULL takes the first non-NULL position of
/// the sentence. A boundary is placed wherever consecutive positions differ.
Segmentation SegmentFromMatrix(const AlignmentMatrix &m);

// Average over rows of H(row) / ln S, in [0, 1]. Zero when S == 1.
AneScore Ane(const AlignmentMatrix &m);

// Applies SegmentFromMatrix and Ane to every matrix, keeping input order.
// Duplicate utterance ids within one language are rejected.
std::vector<SegmentationRun> SegmentCorpus(std::span<const AlignmentMatrix> matrices,
                                           bool parallel = true);

// Text output: `id<TAB>lang<TAB>p1 p2 | p3 ...`, plus a JSON-Lines sidecar at
// SidecarPath(path) holding per-segment aligned words and the ANE value.
std::string SidecarPath(const std::string &path);

struct SegmentationRecord {
  Segmentation segmentation;
  std::optional<double> ane;
};

void WriteSegmentations(std::span<const SegmentationRun> runs,
                        const std::string &path);
void WriteSegmentations(std::span<const Segmentation> segs,
                        const std::string &path);
void WriteSegmentationLine(const Segmentation &seg, std::ostream &out);
void WriteSidecarLine(const Segmentation &seg, std::optional<double> ane,
                      std::ostream &out);

// Reads a segmentation file and, when present, its sidecar.
std::vector<SegmentationRecord> ReadSegmentations(const std::string &path);

// Converts records that carry an ANE value into runs; throws otherwise.
std::vector<SegmentationRun> RequireAne(std::vector<SegmentationRecord> records,
                                        const std::string &source_name);

}  // namespace wordisc

#endif  // WORDISC_SEGMENTER_H_
