// src/segmenter.cc

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

#include "wordisc/segmenter.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <utility>

#include "json.hpp"
#include "wordisc/error.h"
#include "wordisc/text-util.h"

namespace wordisc {

namespace {

std::size_t ArgmaxLowest(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t s = 1; s < row.size(); ++s)
    if (row[s] > row[best]) best = s;
  return best;
}

}  // namespace

Segmentation SegmentationFromBoundaries(std::string utterance_id,
                                        std::string language,
                                        PhonemeSeq phonemes,
                                        BoundarySet boundaries) {
  Segmentation seg{std::move(utterance_id), std::move(language),
                   std::move(phonemes), std::move(boundaries), {}};
  const std::size_t L = seg.phonemes.size();
  if (L == 0)
    throw DataError("segmentation of '" + seg.utterance_id +
                    "' has no phonemes");
  std::size_t start = 0;
  for (std::size_t i = 0; i < seg.boundaries.size(); ++i) {
    const int b = seg.boundaries[i];
    if (b < 1 || static_cast<std::size_t>(b) >= L ||
        (i > 0 && b <= seg.boundaries[i - 1]))
      throw DataError("segmentation of '" + seg.utterance_id +
                      "': invalid boundary " + std::to_string(b));
    seg.segments.push_back({start, static_cast<std::size_t>(b), std::nullopt});
    start = static_cast<std::size_t>(b);
  }
  seg.segments.push_back({start, L, std::nullopt});
  return seg;
}

void CheckSegmentation(const Segmentation &seg) {
  const std::string where = "segmentation of '" + seg.utterance_id + "'";
  if (seg.phonemes.empty()) throw DataError(where + ": no phonemes");
  if (seg.segments.empty()) throw DataError(where + ": no segments");
  std::size_t pos = 0;
  BoundarySet ends;
  for (const auto &s : seg.segments) {
    if (s.begin != pos || s.end <= s.begin)
      throw DataError(where + ": segments do not partition the phonemes");
    pos = s.end;
    if (pos < seg.phonemes.size()) ends.push_back(static_cast<int>(pos));
  }
  if (pos != seg.phonemes.size())
    throw DataError(where + ": segments do not cover every phoneme");
  if (ends != seg.boundaries)
    throw DataError(where + ": boundaries disagree with segment spans");
}

Segmentation SegmentFromMatrix(const AlignmentMatrix &m) {
  const std::size_t L = m.num_rows();
  std::vector<std::size_t> aligned(L);
  for (std::size_t t = 0; t < L; ++t) aligned[t] = ArgmaxLowest(m.row(t));

  Segmentation seg;
  seg.utterance_id = m.utterance_id();
  seg.language = m.language();
  seg.phonemes = m.target();

  if (m.has_null()) {
    auto first = std::find_if(aligned.begin(), aligned.end(),
                              [](std::size_t a) { return a != 0; });
    if (first == aligned.end()) {
      seg.segments.push_back({0, L, std::nullopt});
      return seg;
    }
    std::size_t previous = *first;
    for (auto &a : aligned) {
      if (a == 0) a = previous;
      previous = a;
    }
  }

  std::size_t start = 0;
  for (std::size_t t = 1; t <= L; ++t) {
    if (t == L || aligned[t] != aligned[t - 1]) {
      seg.segments.push_back({start, t, m.source()[aligned[start]]});
      if (t < L) seg.boundaries.push_back(static_cast<int>(t));
      start = t;
    }
  }
  return seg;
}

AneScore Ane(const AlignmentMatrix &m) {
  AneScore score{m.utterance_id(), m.language(), 0.0};
  const std::size_t S = m.num_cols();
  if (S < 2) return score;
  const double ceiling = std::log(static_cast<double>(S));
  double total = 0.0;
  for (std::size_t t = 0; t < m.num_rows(); ++t) {
    double h = 0.0;
    for (double p : m.row(t))
      if (p > 0.0) h -= p * std::log(p);
    total += h / ceiling;
  }
  score.value = std::clamp(total / static_cast<double>(m.num_rows()), 0.0, 1.0);
  return score;
}

std::vector<SegmentationRun> SegmentCorpus(std::span<const AlignmentMatrix> matrices,
                                           bool parallel) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &m : matrices)
    if (!seen.emplace(m.language(), m.utterance_id()).second)
      throw DataError("duplicate utterance id '" + m.utterance_id() +
                      "' for language '" + m.language() + "'");
  std::vector<SegmentationRun> out(matrices.size());
  const auto n = static_cast<std::int64_t>(matrices.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i].segmentation = SegmentFromMatrix(matrices[i]);
    out[i].ane = Ane(matrices[i]);
  }
  return out;
}

std::string SidecarPath(const std::string &path) { return path + ".align.jsonl"; }

void WriteSegmentationLine(const Segmentation &seg, std::ostream &out) {
  out << seg.utterance_id << '\t' << seg.language << '\t'
      << FormatSegmented(seg.phonemes, seg.boundaries) << '\n';
}

void WriteSidecarLine(const Segmentation &seg, std::optional<double> ane,
                      std::ostream &out) {
  nlohmann::ordered_json obj;
  obj["id"] = seg.utterance_id;
  obj["lang"] = seg.language;
  obj["ane"] = ane ? nlohmann::ordered_json(*ane) : nlohmann::ordered_json();
  nlohmann::ordered_json words = nlohmann::ordered_json::array();
  for (const auto &s : seg.segments)
    words.push_back(s.word ? nlohmann::ordered_json(*s.word)
                           : nlohmann::ordered_json());
  obj["words"] = std::move(words);
  out << obj.dump() << '\n';
}

namespace {

template <typename Item, typename SegOf, typename AneOf>
void WriteBoth(std::span<const Item> items, const std::string &path, SegOf seg_of,
               AneOf ane_of) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write segmentation file '" + path + "'");
  std::ofstream side(SidecarPath(path));
  if (!side) throw DataError("cannot write '" + SidecarPath(path) + "'");
  for (const auto &item : items) {
    WriteSegmentationLine(seg_of(item), out);
    WriteSidecarLine(seg_of(item), ane_of(item), side);
  }
}

}  // namespace

void WriteSegmentations(std::span<const SegmentationRun> runs,
                        const std::string &path) {
  WriteBoth(
      runs, path, [](const SegmentationRun &r) -> const Segmentation & {
        return r.segmentation;
      },
      [](const SegmentationRun &r) { return std::optional<double>(r.ane.value); });
}

void WriteSegmentations(std::span<const Segmentation> segs,
                        const std::string &path) {
  WriteBoth(
      segs, path, [](const Segmentation &s) -> const Segmentation & { return s; },
      [](const Segmentation &) { return std::optional<double>(); });
}

std::vector<SegmentationRecord> ReadSegmentations(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open segmentation file '" + path + "'");
  std::vector<SegmentationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitOn(line, '\t');
    const std::string where = path + ": line " + std::to_string(line_no);
    if (fields.size() != 3)
      throw DataError(where + ": expected 3 tab-separated fields");
    try {
      auto [phonemes, boundaries] = GoldBoundariesFromSegmented(fields[2]);
      records.push_back({SegmentationFromBoundaries(fields[0], fields[1],
                                                    std::move(phonemes),
                                                    std::move(boundaries)),
                         std::nullopt});
    } catch (const DataError &e) {
      throw DataError(where + ": " + e.what());
    }
  }

  std::ifstream side(SidecarPath(path));
  if (!side) return records;
  std::size_t k = 0;
  line_no = 0;
  while (std::getline(side, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = SidecarPath(path) + ": line " + std::to_string(line_no);
    if (k >= records.size()) throw DataError(where + ": more records than segmentations");
    Segmentation &seg = records[k].segmentation;
    try {
      auto obj = nlohmann::json::parse(line);
      if (obj.at("id").get<std::string>() != seg.utterance_id ||
          obj.at("lang").get<std::string>() != seg.language)
        throw DataError("record does not match segmentation '" +
                        seg.utterance_id + "'");
      if (!obj.at("ane").is_null()) records[k].ane = obj.at("ane").get<double>();
      const auto &words = obj.at("words");
      if (!words.is_array() || words.size() != seg.segments.size())
        throw DataError("word count does not match segment count");
      for (std::size_t i = 0; i < words.size(); ++i)
        if (!words[i].is_null()) seg.segments[i].word = words[i].get<std::string>();
    } catch (const nlohmann::json::exception &e) {
      throw DataError(where + ": " + e.what());
    } catch (const DataError &e) {
      throw DataError(where + ": " + e.what());
    }
    ++k;
  }
  if (k != records.size())
    throw DataError(SidecarPath(path) + ": fewer records than segmentations");
  return records;
}

std::vector<SegmentationRun> RequireAne(std::vector<SegmentationRecord> records,
                                        const std::string &source_name) {
  std::vector<SegmentationRun> runs;
  runs.reserve(records.size());
  for (auto &r : records) {
    if (!r.ane)
      throw DataError(source_name + ": no ANE value for utterance '" +
                      r.segmentation.utterance_id +
                      "' (missing sidecar or combined output)");
    AneScore score{r.segmentation.utterance_id, r.segmentation.language, *r.ane};
    runs.push_back({std::move(r.segmentation), std::move(score)});
  }
  return runs;
}

}  // namespace wordisc
