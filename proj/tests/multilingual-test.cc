// tests/multilingual-test.cc

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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "wordisc/error.h"
#include "wordisc/multilingual.h"

using namespace wordisc;

namespace {

const PhonemeSeq kPhones{"a", "b", "c", "d", "e", "f"};

Segmentation Seg(const std::string &lang, BoundarySet b, const std::string &id = "u1") {
  return SegmentationFromBoundaries(id, lang, kPhones, std::move(b));
}

SegmentationRun Run(const std::string &lang, BoundarySet b, double ane,
                    const std::string &id = "u1") {
  return {Seg(lang, std::move(b), id), {id, lang, ane}};
}

BoundarySet RandomBoundaries(std::mt19937_64 &rng, std::size_t length) {
  BoundarySet b;
  std::bernoulli_distribution coin(0.4);
  for (std::size_t i = 1; i < length; ++i)
    if (coin(rng)) b.push_back(static_cast<int>(i));
  return b;
}

}  // namespace

TEST_CASE("vote worked examples") {
  std::map<std::string, Segmentation> in{
      {"fr", Seg("fr", {2, 4})}, {"en", Seg("en", {2})}, {"pt", Seg("pt", {2, 5})}};
  VoteConfig cfg{0.5, {"fr", "en", "pt"}};
  Segmentation half = Vote(in, cfg);
  CHECK(half.boundaries == BoundarySet{2});
  CHECK(half.language == VoteLabel(0.5));
  for (const auto &s : half.segments) CHECK_FALSE(s.word.has_value());
  cfg.threshold = 0.0;
  CHECK(Vote(in, cfg).boundaries == BoundarySet{2, 4, 5});
  cfg.threshold = 1.0;
  CHECK(Vote(in, cfg).boundaries == BoundarySet{2});
  CHECK(IsVoteLabel(VoteLabel(0.25)));
  CHECK_FALSE(IsVoteLabel("fr"));
}

TEST_CASE("vote with a three-language subset needs two votes") {
  std::map<std::string, Segmentation> in{{"fr", Seg("fr", {1, 3})},
                                         {"en", Seg("en", {3, 4})},
                                         {"pt", Seg("pt", {1})},
                                         {"de", Seg("de", {2, 4})},
                                         {"es", Seg("es", {2})}};
  Segmentation v = Vote(in, {0.5, {"fr", "en", "pt"}});
  CHECK(v.boundaries == BoundarySet{1, 3});
}

TEST_CASE("vote errors") {
  std::map<std::string, Segmentation> in{{"fr", Seg("fr", {2})}, {"en", Seg("en", {3})}};
  CHECK_THROWS_AS(Vote(in, {0.5, {"fr"}}), DataError);
  CHECK_THROWS_AS(Vote(in, {0.5, {"fr", "de"}}), DataError);
  CHECK_THROWS_AS(Vote(in, {1.5, {"fr", "en"}}), DataError);
  in["en"] = SegmentationFromBoundaries("u1", "en", {"a", "b", "x", "d", "e", "f"}, {3});
  try {
    Vote(in, {0.5, {"fr", "en"}});
    FAIL("expected an error");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("u1") != std::string::npos);
  }
}

TEST_CASE("vote properties on random fixtures") {
  std::mt19937_64 rng(17);
  const std::vector<double> grid{0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0};
  const std::vector<std::string> langs{"l0", "l1", "l2", "l3", "l4"};
  for (int trial = 0; trial < 300; ++trial) {
    std::map<std::string, Segmentation> in;
    for (const auto &l : langs) in[l] = Seg(l, RandomBoundaries(rng, kPhones.size()));
    BoundarySet prev;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      BoundarySet cur = Vote(in, {grid[g], langs}).boundaries;
      if (g > 0) CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
      prev = cur;
    }
    // Language order in the config does not matter.
    std::vector<std::string> shuffled = langs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(Vote(in, {0.5, langs}).boundaries == Vote(in, {0.5, shuffled}).boundaries);
  }
}

TEST_CASE("ane_select") {
  std::map<std::string, SegmentationRun> in{{"fr", Run("fr", {2}, 0.30)},
                                            {"de", Run("de", {3}, 0.70)}};
  SelectionResult r = AneSelect(in, {"de", "fr"});
  CHECK(r.chosen_language == "fr");
  CHECK(r.segmentation == in["fr"].segmentation);
  CHECK(r.ane_values.at("de") == 0.70);

  std::map<std::string, SegmentationRun> tie{{"fr", Run("fr", {2}, 0.5)},
                                             {"en", Run("en", {3}, 0.5)}};
  CHECK(AneSelect(tie, {"fr", "en", "pt"}).chosen_language == "fr");
  CHECK(AneSelect(tie, {"en", "fr"}).chosen_language == "en");

  std::map<std::string, SegmentationRun> one{{"pt", Run("pt", {1}, 0.9)}};
  CHECK(AneSelect(one, {"pt"}).chosen_language == "pt");
  CHECK_THROWS_AS(AneSelect({}, {"fr"}), DataError);
}

TEST_CASE("ane_select returns an input verbatim") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> ane(0, 4);
  const std::vector<std::string> langs{"fr", "en", "pt", "es", "de"};
  for (int trial = 0; trial < 500; ++trial) {
    std::map<std::string, SegmentationRun> in;
    for (const auto &l : langs)
      in[l] = Run(l, RandomBoundaries(rng, kPhones.size()), ane(rng) / 4.0);
    std::vector<std::string> priority = langs;
    std::shuffle(priority.begin(), priority.end(), rng);
    SelectionResult r = AneSelect(in, priority);
    std::string expected = priority[0];
    for (const auto &l : priority)
      if (in[l].ane.value < in[expected].ane.value) expected = l;
    CHECK(r.chosen_language == expected);
    CHECK(r.segmentation == in[expected].segmentation);
  }
}

TEST_CASE("combine_corpus") {
  std::map<std::string, std::vector<SegmentationRun>> runs{
      {"fr", {Run("fr", {2}, 0.1, "u1"), Run("fr", {1}, 0.9, "u2")}},
      {"en", {Run("en", {3}, 0.5, "u2"), Run("en", {4}, 0.5, "u1")}}};
  auto selected = CombineCorpus(runs, {CombineMode::kSelect, 0.5, {"fr", "en"}, true});
  REQUIRE(selected.size() == 2);
  CHECK(selected[0].utterance_id == "u1");
  CHECK(selected[0].boundaries == BoundarySet{2});
  CHECK(selected[1].boundaries == BoundarySet{3});

  auto voted = CombineCorpus(runs, {CombineMode::kVote, 0.0, {"fr", "en"}, false});
  CHECK(voted[0].boundaries == BoundarySet{2, 4});
  CHECK(voted[1].boundaries == BoundarySet{1, 3});

  // Output follows the utterance order of the first priority language.
  auto sel = SelectCorpus(runs, {"en", "fr"}, false);
  CHECK(sel[0].utterance_id == "u2");
  CHECK(sel[0].chosen_language == "en");
  CHECK(sel[1].chosen_language == "fr");

  runs["en"].pop_back();
  try {
    CombineCorpus(runs, {CombineMode::kVote, 0.5, {"fr", "en"}, true});
    FAIL("expected a coverage error");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("u1") != std::string::npos);
  }
}
