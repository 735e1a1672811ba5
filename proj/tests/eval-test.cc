// tests/eval-test.cc

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

#include <random>
#include <sstream>

#include "doctest.h"
#include "test-util.h"
#include "wordisc/error.h"
#include "wordisc/eval.h"
#include "wordisc/multilingual.h"

using namespace wordisc;

namespace {

Corpus Gold() {
  return testutil::MakeCorpus({"fr"}, {{"u1", "a b | c | d e", {{"fr", "x"}}},
                                       {"u2", "c | a b", {{"fr", "y"}}}});
}

Segmentation Hyp(const Corpus &gold, const std::string &id, BoundarySet b) {
  return SegmentationFromBoundaries(id, "fr", gold.Find(id)->phonemes, std::move(b));
}

SegmentationRun Labeled(const std::string &id, PhonemeSeq phones, BoundarySet b,
                        std::vector<std::string> words, double ane) {
  SegmentationRun r{SegmentationFromBoundaries(id, "mb", std::move(phones), std::move(b)),
                    {id, "mb", ane}};
  for (std::size_t i = 0; i < words.size(); ++i) r.segmentation.segments[i].word = words[i];
  return r;
}

}  // namespace

TEST_CASE("boundary_prf worked examples") {
  Corpus gold = testutil::MakeCorpus({"fr"}, {{"u1", "a b | c | d e", {{"fr", "x"}}}});
  std::vector<Segmentation> hyp{Hyp(gold, "u1", {2, 4})};
  PrfScore s = BoundaryPrf(hyp, gold);
  CHECK(s.precision == 0.5);
  CHECK(s.recall == 0.5);
  CHECK(s.f1 == 0.5);
  CHECK(s.hits == 1);

  hyp[0] = Hyp(gold, "u1", {2, 3});
  s = BoundaryPrf(hyp, gold);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(s.f1 == 1.0);

  Corpus one = testutil::MakeCorpus({"fr"}, {{"u1", "a | b", {{"fr", "x"}}}});
  std::vector<Segmentation> empty{Hyp(one, "u1", {})};
  s = BoundaryPrf(empty, one);
  CHECK(s.precision == 0.0);
  CHECK(s.recall == 0.0);
  CHECK(s.f1 == 0.0);

  CHECK(MakePrf(0, 0, 0).f1 == 1.0);
}

TEST_CASE("boundary_prf errors") {
  Corpus gold = Gold();
  std::vector<Segmentation> bad{
      SegmentationFromBoundaries("u1", "fr", {"a", "b", "c"}, {1})};
  CHECK_THROWS_AS(BoundaryPrf(bad, gold), DataError);
  std::vector<Segmentation> missing{
      SegmentationFromBoundaries("zz", "fr", {"a"}, {})};
  CHECK_THROWS_AS(BoundaryPrf(missing, gold), DataError);
  Corpus no_gold = testutil::MakeCorpus({"fr"}, {{"u1", "a b", {{"fr", "x"}}}});
  std::vector<Segmentation> h{SegmentationFromBoundaries("u1", "fr", {"a", "b"}, {})};
  CHECK_THROWS_AS(BoundaryPrf(h, no_gold), DataError);
  std::vector<Segmentation> dup{Hyp(gold, "u2", {1}), Hyp(gold, "u2", {1})};
  CHECK_THROWS_AS(BoundaryPrf(dup, gold), DataError);
}

TEST_CASE("boundary_prf properties") {
  Corpus gold = Gold();
  std::mt19937_64 rng(12);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Segmentation> hyp, as_gold_hyp;
    std::vector<Utterance> swapped;
    for (const auto &u : gold.utterances()) {
      BoundarySet b;
      for (std::size_t i = 1; i < u.phonemes.size(); ++i)
        if (coin(rng)) b.push_back(static_cast<int>(i));
      hyp.push_back(Hyp(gold, u.id, b));
      as_gold_hyp.push_back(Hyp(gold, u.id, *u.gold_boundaries));
      Utterance v = u;
      v.gold_boundaries = b;
      swapped.push_back(v);
    }
    PrfScore s = BoundaryPrf(hyp, gold);
    CHECK(s.precision >= 0.0);
    CHECK(s.precision <= 1.0);
    CHECK(s.recall >= 0.0);
    CHECK(s.recall <= 1.0);
    // Swapping hypothesis and gold swaps precision and recall.
    PrfScore t = BoundaryPrf(as_gold_hyp, Corpus(gold.languages(), swapped));
    CHECK(t.precision == s.recall);
    CHECK(t.recall == s.precision);
    CHECK(t.f1 == s.f1);
    CHECK(BoundaryPrf(as_gold_hyp, gold).f1 == 1.0);
  }
}

TEST_CASE("token and type scores") {
  Corpus gold = Gold();
  std::vector<Segmentation> hyp{Hyp(gold, "u1", {2}), Hyp(gold, "u2", {1})};
  // Tokens: u1 gold {ab, c, de}, hyp {ab, cde}; u2 exact {c, ab}.
  PrfScore tok = TokenPrf(hyp, gold);
  CHECK(tok.hits == 3);
  CHECK(tok.hyp_count == 4);
  CHECK(tok.gold_count == 5);
  // Types: gold {ab, c, de}, hyp {ab, cde, c}.
  PrfScore typ = TypePrf(hyp, gold);
  CHECK(typ.hits == 2);
  CHECK(typ.hyp_count == 3);
  CHECK(typ.gold_count == 3);

  std::ostringstream out;
  WriteScoreHeader(out);
  WriteScoreRow("boundary", MakePrf(1, 2, 2), out);
  CHECK(out.str() ==
        "metric\tprecision\trecall\tf1\thits\thyp\tgold\n"
        "boundary\t0.500000\t0.500000\t0.500000\t1\t2\t2\n");
}

TEST_CASE("extract_lexicon") {
  const PhonemeSeq village{"i", "t", "u", "a"};
  PhonemeSeq s1 = village;
  s1.insert(s1.end(), {"k", "o"});
  PhonemeSeq s2{"o", "b"};
  s2.insert(s2.end(), village.begin(), village.end());
  std::vector<SegmentationRun> runs{
      Labeled("a", s1, {4}, {"village", "big"}, 0.2),
      Labeled("b", s2, {2}, {"the", "village"}, 0.4)};
  auto lex = ExtractLexicon(runs);
  REQUIRE(lex.size() == 3);
  CHECK(lex[0].discovered_type == "itua");
  CHECK(lex[0].translation_word == "village");
  CHECK(lex[0].best_ane == 0.2);
  CHECK(lex[0].frequency == 2);
  CHECK(lex[1].discovered_type == "ko");
  CHECK(lex[2].best_ane == 0.4);

  // Input order does not change the result.
  std::vector<SegmentationRun> reversed{runs[1], runs[0]};
  auto again = ExtractLexicon(reversed);
  for (std::size_t i = 0; i < lex.size(); ++i) {
    CHECK(again[i].discovered_type == lex[i].discovered_type);
    CHECK(again[i].frequency == lex[i].frequency);
  }

  CHECK(ExtractLexicon(std::vector<SegmentationRun>{}).empty());

  SegmentationRun voted{SegmentationFromBoundaries("v", VoteLabel(0.5), s1, {4}),
                        {"v", VoteLabel(0.5), 0.0}};
  CHECK_THROWS_AS(ExtractLexicon(std::vector<SegmentationRun>{voted}), DataError);
}

TEST_CASE("concat_check") {
  std::set<PhonemeSeq> gold{{"o", "b", "o", "á"}, {"ng", "á"}, {"i", "t", "u", "a"}};
  CHECK(ConcatCheck({"o", "b", "o", "á", "ng", "á"}, gold) == ConcatStatus::kConcat2);
  CHECK(ConcatCheck({"i", "t", "u", "a"}, gold) == ConcatStatus::kExact);
  CHECK(ConcatCheck({"x", "y", "z"}, {{"a"}, {"b"}}) == ConcatStatus::kNone);
  // Splits happen at symbol boundaries only: "n"+"gá" is not "ng"+"á".
  CHECK(ConcatCheck({"o", "b", "o", "á", "n", "g", "á"}, gold) == ConcatStatus::kNone);
  CHECK_THROWS_AS(ConcatCheck({}, gold), DataError);
  CHECK(std::string(ConcatStatusName(ConcatStatus::kConcat2)) == "concat2");
}

TEST_CASE("gold lexicon file and lexicon report") {
  auto dir = testutil::TempDir("eval");
  const std::string path = (dir / "gold.txt").string();
  WriteGoldLexicon({{"i", "t", "u", "a"}, {"k", "o"}}, path);
  auto gold = ReadGoldLexicon(path);
  CHECK(gold.size() == 2);
  CHECK(gold.count({"k", "o"}) == 1);

  std::vector<LexiconEntry> entries{{{"i", "t", "u", "a"}, "itua", "village", 0.2, 2},
                                    {{"x"}, "x", "big", 0.5, 1}};
  std::ostringstream out;
  WriteLexiconReport(entries, 1, &gold, out);
  CHECK(out.str() ==
        "rank\ttype\ttranslation\tbest_ane\tfreq\tconcat_status\n"
        "1\titua\tvillage\t0.200000\t2\texact\n");
}

TEST_CASE("cross_model_overlap") {
  std::vector<LexiconEntry> lex;
  for (int i = 0; i < 5; ++i)
    lex.push_back({{"t" + std::to_string(i)}, "t" + std::to_string(i), "w", 0.1 * i, 1});
  OverlapReport same = CrossModelOverlap({{"fr", lex}, {"en", lex}}, 5);
  CHECK(same.in_all.size() == 5);
  CHECK(same.in_some.empty());
  CHECK(same.in_one.empty());

  std::vector<LexiconEntry> other;
  for (int i = 0; i < 5; ++i)
    other.push_back({{"u" + std::to_string(i)}, "u" + std::to_string(i), "w", 0.1 * i, 1});
  OverlapReport disjoint = CrossModelOverlap({{"fr", lex}, {"en", other}}, 5);
  CHECK(disjoint.in_all.empty());
  CHECK(disjoint.in_one.size() == 10);

  // Only the top k of each lexicon count.
  OverlapReport top2 = CrossModelOverlap({{"fr", lex}, {"en", lex}}, 2);
  CHECK(top2.in_all.size() == 2);
  CHECK_THROWS_AS(CrossModelOverlap({{"fr", lex}}, 0), DataError);
}
