// src/multilingual.cc

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

#include "wordisc/multilingual.h"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>

#include "wordisc/error.h"
#include "wordisc/text-util.h"

namespace wordisc {

namespace {

// Slack for T*N products such as 0.7*10 that land just above the integer.
constexpr double kCountSlack = 1e-9;

void CheckDistinct(const std::vector<std::string> &languages,
                   const char *what) {
  std::set<std::string> seen;
  for (const auto &l : languages)
    if (!seen.insert(l).second)
      throw DataError(std::string(what) + ": language '" + l +
                      "' listed twice");
}

}  // namespace

std::string VoteLabel(double threshold) {
  return "vote(T=" + FormatReal(threshold, 6) + ")";
}

bool IsVoteLabel(const std::string &language) {
  return language.rfind("vote(", 0) == 0;
}

Segmentation Vote(const std::map<std::string, Segmentation> &per_language,
                  const VoteConfig &config) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0))
    throw DataError("vote threshold must lie in [0, 1]");
  if (config.languages.size() < 2)
    throw DataError("voting needs at least two languages");
  CheckDistinct(config.languages, "vote");

  const Segmentation *first = nullptr;
  std::map<int, std::size_t> votes;
  for (const auto &lang : config.languages) {
    auto it = per_language.find(lang);
    if (it == per_language.end())
      throw DataError("vote: missing segmentation for language '" + lang + "'" +
                      (first ? " in utterance '" + first->utterance_id + "'"
                             : std::string()));
    const Segmentation &seg = it->second;
    if (first == nullptr) {
      first = &seg;
    } else if (seg.utterance_id != first->utterance_id ||
               seg.phonemes != first->phonemes) {
      throw DataError("vote: phoneme sequences differ across languages for "
                      "utterance '" + first->utterance_id + "'");
    }
    for (int b : seg.boundaries) ++votes[b];
  }

  const double n = static_cast<double>(config.languages.size());
  const double needed = std::max(1.0, config.threshold * n) - kCountSlack;
  BoundarySet kept;
  for (const auto &[b, c] : votes)
    if (static_cast<double>(c) >= needed) kept.push_back(b);
  return SegmentationFromBoundaries(first->utterance_id,
                                    VoteLabel(config.threshold),
                                    first->phonemes, std::move(kept));
}

SelectionResult AneSelect(const std::map<std::string, SegmentationRun> &per_language,
                          const std::vector<std::string> &priority) {
  if (per_language.empty()) throw DataError("ane_select: no languages given");
  CheckDistinct(priority, "ane_select");
  std::unordered_map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < priority.size(); ++i) rank.emplace(priority[i], i);

  SelectionResult result;
  const SegmentationRun *best = nullptr;
  std::size_t best_rank = 0;
  for (const auto &[lang, run] : per_language) {
    auto r = rank.find(lang);
    if (r == rank.end())
      throw DataError("ane_select: language '" + lang +
                      "' is missing from the priority list");
    if (best && run.segmentation.utterance_id != best->segmentation.utterance_id)
      throw DataError("ane_select: inputs mix utterances '" +
                      best->segmentation.utterance_id + "' and '" +
                      run.segmentation.utterance_id + "'");
    result.ane_values.emplace(lang, run.ane.value);
    if (best == nullptr || run.ane.value < best->ane.value ||
        (run.ane.value == best->ane.value && r->second < best_rank)) {
      best = &run;
      best_rank = r->second;
      result.chosen_language = lang;
    }
  }
  result.utterance_id = best->segmentation.utterance_id;
  result.segmentation = best->segmentation;
  return result;
}

namespace {

// Runs of the configured languages, checked to cover the same utterances.
struct AlignedRuns {
  std::vector<const std::vector<SegmentationRun> *> runs;
  std::vector<std::unordered_map<std::string, std::size_t>> index;

  const SegmentationRun &Get(std::size_t k, const std::string &id) const {
    return (*runs[k])[index[k].at(id)];
  }
  const std::vector<SegmentationRun> &reference() const { return *runs.front(); }
};

AlignedRuns AlignRuns(
    const std::map<std::string, std::vector<SegmentationRun>> &per_language_runs,
    const std::vector<std::string> &languages) {
  if (languages.empty()) throw DataError("combine: no languages configured");
  CheckDistinct(languages, "combine");
  AlignedRuns aligned;
  for (const auto &lang : languages) {
    auto it = per_language_runs.find(lang);
    if (it == per_language_runs.end())
      throw DataError("combine: no runs for language '" + lang + "'");
    aligned.runs.push_back(&it->second);
    auto &idx = aligned.index.emplace_back();
    for (std::size_t i = 0; i < it->second.size(); ++i)
      if (!idx.emplace(it->second[i].segmentation.utterance_id, i).second)
        throw DataError("combine: duplicate utterance '" +
                        it->second[i].segmentation.utterance_id +
                        "' for language '" + lang + "'");
  }
  for (std::size_t k = 1; k < aligned.runs.size(); ++k) {
    std::vector<std::string> missing;
    for (const auto &r : aligned.reference())
      if (!aligned.index[k].count(r.segmentation.utterance_id))
        missing.push_back(r.segmentation.utterance_id);
    for (const auto &r : *aligned.runs[k])
      if (!aligned.index[0].count(r.segmentation.utterance_id))
        missing.push_back(r.segmentation.utterance_id);
    if (!missing.empty()) {
      if (missing.size() > 10) {
        missing.resize(10);
        missing.push_back("...");
      }
      throw DataError("combine: languages '" + languages[0] + "' and '" +
                      languages[k] +
                      "' cover different utterances; mismatched ids: " +
                      Join(missing, " "));
    }
  }
  return aligned;
}

void RethrowFirst(const std::vector<std::string> &errors) {
  for (const auto &e : errors)
    if (!e.empty()) throw DataError(e);
}

}  // namespace

std::vector<SelectionResult> SelectCorpus(
    const std::map<std::string, std::vector<SegmentationRun>> &per_language_runs,
    const std::vector<std::string> &priority, bool parallel) {
  AlignedRuns aligned = AlignRuns(per_language_runs, priority);
  const auto &reference = aligned.reference();
  const auto n = static_cast<std::int64_t>(reference.size());
  std::vector<SelectionResult> out(reference.size());
  std::vector<std::string> errors(reference.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string &id = reference[i].segmentation.utterance_id;
    try {
      std::map<std::string, SegmentationRun> per;
      for (std::size_t k = 0; k < priority.size(); ++k)
        per.emplace(priority[k], aligned.Get(k, id));
      out[i] = AneSelect(per, priority);
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  RethrowFirst(errors);
  return out;
}

std::vector<Segmentation> CombineCorpus(
    const std::map<std::string, std::vector<SegmentationRun>> &per_language_runs,
    const CombineConfig &config) {
  std::vector<Segmentation> out;
  if (config.mode == CombineMode::kSelect) {
    for (auto &r : SelectCorpus(per_language_runs, config.languages, config.parallel))
      out.push_back(std::move(r.segmentation));
    return out;
  }
  AlignedRuns aligned = AlignRuns(per_language_runs, config.languages);
  const auto &reference = aligned.reference();
  const auto n = static_cast<std::int64_t>(reference.size());
  out.resize(reference.size());
  std::vector<std::string> errors(reference.size());
  const VoteConfig vote{config.threshold, config.languages};
#pragma omp parallel for schedule(dynamic, 64) if (config.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string &id = reference[i].segmentation.utterance_id;
    try {
      std::map<std::string, Segmentation> per;
      for (std::size_t k = 0; k < config.languages.size(); ++k)
        per.emplace(config.languages[k], aligned.Get(k, id).segmentation);
      out[i] = Vote(per, vote);
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  RethrowFirst(errors);
  return out;
}

}  // namespace wordisc
