// src/eval.cc

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

#include "wordisc/eval.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <tuple>
#include <unordered_set>

#include "wordisc/error.h"
#include "wordisc/multilingual.h"
#include "wordisc/text-util.h"

namespace wordisc {

namespace {

std::string Concat(const PhonemeSeq &phonemes) {
  std::string out;
  for (const auto &p : phonemes) out += p;
  return out;
}

// Gold boundaries of the utterance matching `hyp`, after checking that the
// phoneme sequences agree.
const BoundarySet &GoldFor(const Segmentation &hyp, const Corpus &gold) {
  const Utterance *u = gold.Find(hyp.utterance_id);
  if (u == nullptr)
    throw DataError("utterance '" + hyp.utterance_id +
                    "' is not in the gold corpus");
  if (!u->gold_boundaries)
    throw DataError("utterance '" + hyp.utterance_id +
                    "' has no gold segmentation");
  if (u->phonemes != hyp.phonemes)
    throw DataError("utterance '" + hyp.utterance_id +
                    "': hypothesis phonemes differ from the gold corpus");
  return *u->gold_boundaries;
}

void CheckDistinctIds(std::span<const Segmentation> hyp) {
  std::unordered_set<std::string> seen;
  for (const auto &h : hyp)
    if (!seen.insert(h.utterance_id).second)
      throw DataError("utterance '" + h.utterance_id +
                      "' appears twice in the hypothesis");
}

std::vector<std::pair<std::size_t, std::size_t>> Spans(const BoundarySet &b,
                                                       std::size_t length) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t start = 0;
  for (int x : b) {
    spans.emplace_back(start, static_cast<std::size_t>(x));
    start = static_cast<std::size_t>(x);
  }
  spans.emplace_back(start, length);
  return spans;
}

}  // namespace

PrfScore MakePrf(std::size_t hits, std::size_t hyp_count,
                 std::size_t gold_count) {
  PrfScore s;
  s.hits = hits;
  s.hyp_count = hyp_count;
  s.gold_count = gold_count;
  if (hyp_count == 0 && gold_count == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  s.precision = hyp_count ? static_cast<double>(hits) / hyp_count : 0.0;
  s.recall = gold_count ? static_cast<double>(hits) / gold_count : 0.0;
  s.f1 = s.precision + s.recall > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

PrfScore BoundaryPrf(std::span<const Segmentation> hyp, const Corpus &gold) {
  CheckDistinctIds(hyp);
  std::size_t hits = 0, hyp_count = 0, gold_count = 0;
  for (const auto &h : hyp) {
    const BoundarySet &g = GoldFor(h, gold);
    BoundarySet common;
    std::set_intersection(h.boundaries.begin(), h.boundaries.end(), g.begin(),
                          g.end(), std::back_inserter(common));
    hits += common.size();
    hyp_count += h.boundaries.size();
    gold_count += g.size();
  }
  return MakePrf(hits, hyp_count, gold_count);
}

PrfScore TokenPrf(std::span<const Segmentation> hyp, const Corpus &gold) {
  CheckDistinctIds(hyp);
  std::size_t hits = 0, hyp_count = 0, gold_count = 0;
  for (const auto &h : hyp) {
    auto g = Spans(GoldFor(h, gold), h.length());
    auto p = Spans(h.boundaries, h.length());
    decltype(g) common;
    std::set_intersection(p.begin(), p.end(), g.begin(), g.end(),
                          std::back_inserter(common));
    hits += common.size();
    hyp_count += p.size();
    gold_count += g.size();
  }
  return MakePrf(hits, hyp_count, gold_count);
}

PrfScore TypePrf(std::span<const Segmentation> hyp, const Corpus &gold) {
  CheckDistinctIds(hyp);
  std::set<PhonemeSeq> hyp_types, gold_types;
  for (const auto &h : hyp) {
    const BoundarySet &g = GoldFor(h, gold);
    for (auto [b, e] : Spans(h.boundaries, h.length()))
      hyp_types.emplace(h.phonemes.begin() + b, h.phonemes.begin() + e);
    for (auto [b, e] : Spans(g, h.length()))
      gold_types.emplace(h.phonemes.begin() + b, h.phonemes.begin() + e);
  }
  std::vector<PhonemeSeq> common;
  std::set_intersection(hyp_types.begin(), hyp_types.end(), gold_types.begin(),
                        gold_types.end(), std::back_inserter(common));
  return MakePrf(common.size(), hyp_types.size(), gold_types.size());
}

void WriteScoreHeader(std::ostream &out) {
  out << "metric\tprecision\trecall\tf1\thits\thyp\tgold\n";
}

void WriteScoreRow(const std::string &metric, const PrfScore &s,
                   std::ostream &out) {
  out << metric << '\t' << FormatFixed(s.precision, 6) << '\t'
      << FormatFixed(s.recall, 6) << '\t' << FormatFixed(s.f1, 6) << '\t'
      << s.hits << '\t' << s.hyp_count << '\t' << s.gold_count << '\n';
}

std::vector<LexiconEntry> ExtractLexicon(std::span<const SegmentationRun> runs) {
  std::map<std::pair<PhonemeSeq, std::string>, LexiconEntry> groups;
  for (const auto &run : runs) {
    const Segmentation &seg = run.segmentation;
    if (IsVoteLabel(seg.language))
      throw DataError("lexicon extraction needs aligned words; '" +
                      seg.language +
                      "' output has none. Use bilingual or ANE-selected runs.");
    for (std::size_t i = 0; i < seg.segments.size(); ++i) {
      const auto &word = seg.segments[i].word;
      if (!word) continue;
      PhonemeSeq phonemes = seg.SegmentPhonemes(i);
      auto key = std::make_pair(phonemes, *word);
      auto it = groups.find(key);
      if (it == groups.end()) {
        std::string type = Concat(phonemes);
        groups.emplace(std::move(key),
                       LexiconEntry{std::move(phonemes), std::move(type), *word,
                                    run.ane.value, 1});
      } else {
        it->second.best_ane = std::min(it->second.best_ane, run.ane.value);
        ++it->second.frequency;
      }
    }
  }
  std::vector<LexiconEntry> out;
  out.reserve(groups.size());
  for (auto &[key, entry] : groups) out.push_back(std::move(entry));
  std::sort(out.begin(), out.end(), [](const LexiconEntry &a, const LexiconEntry &b) {
    return std::forward_as_tuple(a.best_ane, b.frequency, a.discovered_type,
                                 a.phonemes, a.translation_word) <
           std::forward_as_tuple(b.best_ane, a.frequency, b.discovered_type,
                                 b.phonemes, b.translation_word);
  });
  return out;
}

const char *ConcatStatusName(ConcatStatus status) {
  switch (status) {
    case ConcatStatus::kExact: return "exact";
    case ConcatStatus::kConcat2: return "concat2";
    case ConcatStatus::kNone: return "none";
  }
  return "none";
}

ConcatStatus ConcatCheck(const PhonemeSeq &discovered,
                         const std::set<PhonemeSeq> &gold_types) {
  if (discovered.empty()) throw DataError("concat_check: empty discovered type");
  if (gold_types.count(discovered)) return ConcatStatus::kExact;
  for (std::size_t split = 1; split < discovered.size(); ++split) {
    PhonemeSeq head(discovered.begin(), discovered.begin() + split);
    if (!gold_types.count(head)) continue;
    PhonemeSeq tail(discovered.begin() + split, discovered.end());
    if (gold_types.count(tail)) return ConcatStatus::kConcat2;
  }
  return ConcatStatus::kNone;
}

std::set<PhonemeSeq> ReadGoldLexicon(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold lexicon '" + path + "'");
  std::set<PhonemeSeq> types;
  std::string line;
  while (std::getline(in, line)) {
    PhonemeSeq seq = SplitAsciiWhitespace(line);
    if (!seq.empty()) types.insert(std::move(seq));
  }
  if (types.empty()) throw DataError("gold lexicon '" + path + "' is empty");
  return types;
}

void WriteGoldLexicon(const std::vector<PhonemeSeq> &types,
                      const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write gold lexicon '" + path + "'");
  for (const auto &t : types) out << Join(t, " ") << '\n';
}

void WriteLexiconReport(std::span<const LexiconEntry> entries, std::size_t top,
                        const std::set<PhonemeSeq> *gold_types,
                        std::ostream &out) {
  out << "rank\ttype\ttranslation\tbest_ane\tfreq\tconcat_status\n";
  const std::size_t n = top == 0 ? entries.size() : std::min(top, entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    const LexiconEntry &e = entries[i];
    out << (i + 1) << '\t' << e.discovered_type << '\t' << e.translation_word
        << '\t' << FormatFixed(e.best_ane, 6) << '\t' << e.frequency << '\t';
    if (gold_types) out << ConcatStatusName(ConcatCheck(e.phonemes, *gold_types));
    out << '\n';
  }
}

OverlapReport CrossModelOverlap(
    const std::map<std::string, std::vector<LexiconEntry>> &lexicons,
    std::size_t k) {
  if (k == 0) throw DataError("cross_model_overlap: k must be >= 1");
  OverlapReport report;
  report.k = k;
  std::map<std::pair<std::string, PhonemeSeq>, std::vector<std::string>> found;
  for (const auto &[lang, entries] : lexicons) {
    std::set<PhonemeSeq> mine;
    for (std::size_t i = 0; i < std::min(k, entries.size()); ++i) {
      if (mine.insert(entries[i].phonemes).second)
        found[{entries[i].discovered_type, entries[i].phonemes}].push_back(lang);
    }
  }
  const std::size_t n = lexicons.size();
  for (auto &[key, langs] : found) {
    if (langs.size() == n)
      report.in_all.push_back(key.first);
    else if (langs.size() == 1)
      report.in_one.emplace_back(key.first, langs.front());
    else
      report.in_some.emplace_back(key.first, langs);
  }
  return report;
}

void WriteOverlapReport(const OverlapReport &report, std::ostream &out) {
  out << "bucket\ttype\tlanguages\n";
  for (const auto &t : report.in_all) out << "all\t" << t << "\t*\n";
  for (const auto &[t, langs] : report.in_some)
    out << "some\t" << t << '\t' << Join(langs, ",") << '\n';
  for (const auto &[t, lang] : report.in_one)
    out << "one\t" << t << '\t' << lang << '\n';
}

}  // namespace wordisc
