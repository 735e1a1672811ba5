// tests/aligner-test.cc

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
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.h"
#include "test-util.h"
#include "wordisc/em-kernels.h"
#include "wordisc/error.h"
#include "wordisc/ibm1-aligner.h"
#include "wordisc/synth.h"

using namespace wordisc;

namespace {

Corpus Crib() {
  return testutil::MakeCorpus({"src"}, {{"s1", "x", {{"src", "a"}}},
                                        {"s2", "x y", {{"src", "a b"}}}});
}

AlignerConfig NoNull(int iterations) {
  AlignerConfig c;
  c.use_null = false;
  c.iterations = iterations;
  return c;
}

std::vector<oracle::Pair> Pairs(const Corpus &c, const std::string &lang,
                                bool use_null) {
  std::vector<oracle::Pair> out;
  for (const auto &u : c.utterances()) {
    oracle::Pair p;
    if (use_null) p.source.push_back("NULL");
    for (const auto &w : u.translations.at(lang)) p.source.push_back(w);
    p.target = u.phonemes;
    out.push_back(p);
  }
  return out;
}

oracle::Table AsOracleTable(const TranslationTable &t) {
  oracle::Table out;
  for (std::size_t e = 0; e < t.source_vocab().size(); ++e)
    for (std::size_t f = 0; f < t.target_vocab().size(); ++f)
      out[t.source_vocab()[e]][t.target_vocab()[f]] = t(e, f);
  return out;
}

// Small random bitext: every sentence has at most 4 source and 4 target
// symbols so the alignment enumeration stays cheap.
Corpus RandomSmallCorpus(std::mt19937_64 &rng, std::size_t n) {
  std::uniform_int_distribution<int> len(1, 4), word(0, 4), sym(0, 5);
  std::vector<testutil::Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::string src, tgt;
    for (int k = len(rng); k > 0; --k) src += "w" + std::to_string(word(rng)) + " ";
    for (int k = len(rng); k > 0; --k) tgt += "p" + std::to_string(sym(rng)) + " ";
    rows.push_back({"r" + std::to_string(i), tgt, {{"src", src}}});
  }
  return testutil::MakeCorpus({"src"}, rows);
}

}  // namespace

TEST_CASE("crib corpus converges to the one-to-one table") {
  AlignerConfig config = NoNull(2000);
  config.convergence_epsilon = 0.0;
  TranslationTable t = TrainIbm1(Crib(), "src", config);
  CHECK(t.Prob("a", "x", 0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(t.Prob("b", "y", 0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(t.source_vocab().front() == "NULL");
}

TEST_CASE("symmetric single pair stays uniform at every iteration") {
  Corpus c = testutil::MakeCorpus({"src"}, {{"s1", "x y", {{"src", "a"}}}});
  for (int it : {1, 2, 5, 30}) {
    TranslationTable t = TrainIbm1(c, "src", NoNull(it));
    CHECK(t.Prob("a", "x", 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.Prob("a", "y", 0) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("one EM iteration equals the enumeration oracle step") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Corpus c = RandomSmallCorpus(rng, 6);
    for (bool use_null : {false, true}) {
      AlignerConfig config = NoNull(1);
      config.use_null = use_null;
      TranslationTable t = TrainIbm1(c, "src", config);

      auto pairs = Pairs(c, "src", use_null);
      std::set<std::string> sources{"NULL"}, targets;
      for (const auto &p : pairs) {
        sources.insert(p.source.begin(), p.source.end());
        targets.insert(p.target.begin(), p.target.end());
      }
      oracle::Table uniform;
      for (const auto &e : sources)
        for (const auto &f : targets) uniform[e][f] = 1.0 / targets.size();
      oracle::Table expected = oracle::Normalize(
          oracle::BruteExpectedCounts(pairs, uniform), sources, targets,
          config.prob_floor);
      for (const auto &e : sources)
        for (const auto &f : targets)
          CHECK(t.Prob(e, f, -1) == doctest::Approx(expected[e][f]).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_likelihood") {
  // One pair, src=[NULL, a], t(x|NULL)=t(x|a)=0.5 -> log 0.5.
  TranslationTable t({"NULL", "a"}, {"x", "y"}, {0.5, 0.5, 0.5, 0.5});
  Corpus c = testutil::MakeCorpus({"src"}, {{"s1", "x", {{"src", "a"}}}});
  AlignerConfig config;
  CHECK(LogLikelihood(t, c, "src", config) == doctest::Approx(std::log(0.5)).epsilon(1e-15));

  // Unknown words score the floor.
  Corpus unk = testutil::MakeCorpus({"src"}, {{"s1", "z", {{"src", "q"}}}});
  config.use_null = false;
  CHECK(LogLikelihood(t, unk, "src", config) ==
        doctest::Approx(std::log(config.prob_floor)));
}

TEST_CASE("log_likelihood matches alignment enumeration") {
  AlignerConfig config = NoNull(200);
  config.convergence_epsilon = 0.0;
  Corpus crib = Crib();
  TranslationTable t = TrainIbm1(crib, "src", config);
  double brute = oracle::BruteLogLikelihood(Pairs(crib, "src", false),
                                            AsOracleTable(t), config.prob_floor);
  CHECK(std::abs(LogLikelihood(t, crib, "src", config) - brute) < 1e-9);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Corpus c = RandomSmallCorpus(rng, 8);
    AlignerConfig cfg;
    cfg.iterations = 7;
    TranslationTable tt = TrainIbm1(c, "src", cfg);
    double b = oracle::BruteLogLikelihood(Pairs(c, "src", true), AsOracleTable(tt),
                                          cfg.prob_floor);
    CHECK(std::abs(LogLikelihood(tt, c, "src", cfg) - b) < 1e-9);
  }
}

TEST_CASE("EM log-likelihood never decreases") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    Corpus c = RandomSmallCorpus(rng, 12);
    AlignerConfig config;
    config.iterations = 40;
    config.convergence_epsilon = 0.0;
    config.use_null = trial % 2 == 0;
    TrainingTrace trace = TrainIbm1Traced(c, "src", config);
    for (std::size_t k = 1; k < trace.log_likelihood.size(); ++k)
      CHECK(trace.log_likelihood[k] >= trace.log_likelihood[k - 1] - 1e-12);
    // The traced value is the likelihood of the returned table.
    CHECK(trace.log_likelihood.back() ==
          doctest::Approx(LogLikelihood(trace.table, c, "src", config)).epsilon(1e-12));
  }
}

TEST_CASE("convergence stops early and iteration cap is honoured") {
  SyntheticSpec spec;
  spec.sentences = 50;
  Corpus c = GenerateSynthetic(spec).corpus;
  AlignerConfig config;
  config.iterations = 500;
  config.convergence_epsilon = 1e-4;
  TrainingTrace trace = TrainIbm1Traced(c, "syn0", config);
  CHECK(trace.converged);
  CHECK(trace.iterations_run < 500);
  config.iterations = 3;
  config.convergence_epsilon = 0.0;
  trace = TrainIbm1Traced(c, "syn0", config);
  CHECK(trace.iterations_run == 3);
  CHECK(trace.log_likelihood.size() == 4);
}

TEST_CASE("table rows are distributions within 1e-9") {
  SyntheticSpec spec;
  spec.sentences = 80;
  Corpus c = GenerateSynthetic(spec).corpus;
  TranslationTable t = TrainIbm1(c, "syn1", AlignerConfig{});
  const std::size_t V = t.target_vocab().size();
  for (std::size_t e = 0; e < t.source_vocab().size(); ++e) {
    double sum = 0;
    for (std::size_t f = 0; f < V; ++f) {
      CHECK(t(e, f) >= 0.0);
      CHECK(t(e, f) <= 1.0);
      sum += t(e, f);
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("permuting sentences gives a bit-identical table") {
  SyntheticSpec spec;
  spec.sentences = 120;
  Corpus c = GenerateSynthetic(spec).corpus;
  std::vector<Utterance> utts = c.utterances();
  std::mt19937_64 rng(9);
  std::shuffle(utts.begin(), utts.end(), rng);
  Corpus shuffled(c.languages(), utts);
  AlignerConfig config;
  for (const auto &lang : c.languages())
    CHECK(TrainIbm1(c, lang, config) == TrainIbm1(shuffled, lang, config));
}

TEST_CASE("renaming a source word renames the table") {
  SyntheticSpec spec;
  spec.sentences = 60;
  Corpus c = GenerateSynthetic(spec).corpus;
  const std::string from = c[0].translations.at("syn0").front(), to = "zz-renamed";
  std::vector<Utterance> utts = c.utterances();
  for (auto &u : utts)
    for (auto &w : u.translations.at("syn0"))
      if (w == from) w = to;
  Corpus renamed(c.languages(), utts);
  AlignerConfig config;
  TranslationTable a = TrainIbm1(c, "syn0", config);
  TranslationTable b = TrainIbm1(renamed, "syn0", config);
  REQUIRE(a.target_vocab() == b.target_vocab());
  for (const auto &e : a.source_vocab()) {
    const std::string mapped = e == from ? to : e;
    for (const auto &f : a.target_vocab())
      CHECK(std::abs(a.Prob(e, f, -1) - b.Prob(mapped, f, -1)) < 1e-12);
  }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  SyntheticSpec spec;
  spec.sentences = 300;
  Corpus c = GenerateSynthetic(spec).corpus;
  AlignerConfig serial;
  serial.parallel = false;
  AlignerConfig parallel;
  parallel.parallel = true;
  for (const auto &lang : c.languages()) {
    TrainingTrace a = TrainIbm1Traced(c, lang, serial);
    TrainingTrace b = TrainIbm1Traced(c, lang, parallel);
    CHECK(a.table == b.table);
    CHECK(a.log_likelihood == b.log_likelihood);
  }

  // Direct kernel comparison on a hand-made bitext.
  kernels::IndexedBitext bitext;
  bitext.source_vocab_size = 3;
  bitext.target_vocab_size = 4;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> src(0, 2), tgt(0, 3), len(1, 6);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::uint32_t> s(len(rng)), t(len(rng));
    for (auto &x : s) x = src(rng);
    for (auto &x : t) x = tgt(rng);
    bitext.AddSentence(s, t);
  }
  std::vector<double> table(12);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (auto &v : table) v = u(rng);
  std::vector<double> c1(12), c2(12), scratch;
  double ll1 = kernels::ExpectedCountsSerial(bitext, table, c1);
  double ll2 = kernels::ExpectedCountsParallel(bitext, table, c2, &scratch);
  CHECK(ll1 == ll2);
  CHECK(c1 == c2);
  std::vector<double> m1(12), m2(12);
  kernels::MaximizeSerial(c1, 4, 1e-12, m1);
  kernels::MaximizeParallel(c1, 4, 1e-12, m2);
  CHECK(m1 == m2);
}

TEST_CASE("posterior_matrix") {
  AlignerConfig config;
  config.use_null = false;
  // Uniform table over two source words -> rows [0.5, 0.5].
  TranslationTable uniform({"NULL", "a", "b"}, {"x", "y"},
                           {0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  Corpus c = testutil::MakeCorpus({"src"}, {{"s1", "x y x", {{"src", "a b"}}}});
  AlignmentMatrix m = PosteriorMatrix(uniform, c[0], "src", config);
  CHECK(m.num_rows() == 3);
  CHECK(m.num_cols() == 2);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(m(t, 0) == 0.5);
    CHECK(m(t, 1) == 0.5);
  }
  // t(x|a)=1, t(x|b)=floor -> [1, 0].
  const double fl = config.prob_floor;
  TranslationTable peaked({"NULL", "a", "b"}, {"x", "y"},
                          {0.5, 0.5, 1.0 - fl, fl, fl, 1.0 - fl});
  Corpus one = testutil::MakeCorpus({"src"}, {{"s1", "x", {{"src", "a b"}}}});
  AlignmentMatrix p = PosteriorMatrix(peaked, one[0], "src", config);
  CHECK(p(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(p(0, 1) < 1e-6);

  config.use_null = true;
  AlignmentMatrix with_null = PosteriorMatrix(peaked, one[0], "src", config);
  CHECK(with_null.source() == TokenList{"NULL", "a", "b"});
  CHECK(with_null.has_null());

  // With flooring disabled an unknown phoneme has an all-zero row.
  AlignerConfig no_floor;
  no_floor.prob_floor = 0.0;
  Corpus unknown = testutil::MakeCorpus({"src"}, {{"s1", "q", {{"src", "a"}}}});
  CHECK_THROWS_AS(PosteriorMatrix(peaked, unknown[0], "src", no_floor), DataError);
}

TEST_CASE("crib posteriors approach the identity pattern") {
  AlignerConfig config = NoNull(2000);
  config.convergence_epsilon = 0.0;
  Corpus crib = Crib();
  TranslationTable t = TrainIbm1(crib, "src", config);
  AlignmentMatrix m = PosteriorMatrix(t, crib[1], "src", config);
  CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(m(0, 1) < 1e-3);
  CHECK(m(1, 0) < 1e-3);
  CHECK(m(1, 1) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("posterior rows sum to one on random tables") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus c = RandomSmallCorpus(rng, 3);
    AlignerConfig config;
    config.iterations = 1 + trial % 5;
    TranslationTable t = TrainIbm1(c, "src", config);
    for (const auto &m : PosteriorMatrices(t, c, "src", config))
      for (std::size_t r = 0; r < m.num_rows(); ++r) {
        double sum = 0;
        for (double v : m.row(r)) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-9);
      }
  }
}

TEST_CASE("aligner errors") {
  AlignerConfig config;
  CHECK_THROWS_AS(TrainIbm1(Corpus(), "src", config), DataError);
  CHECK_THROWS_AS(TrainIbm1(Crib(), "fr", config), DataError);
  config.iterations = 0;
  CHECK_THROWS_AS(TrainIbm1(Crib(), "src", config), DataError);
  config.iterations = 5;
  config.prob_floor = 0.0;
  CHECK_THROWS_AS(TrainIbm1(Crib(), "src", config), DataError);
  Corpus reserved = testutil::MakeCorpus({"src"}, {{"s1", "x", {{"src", "NULL"}}}});
  CHECK_THROWS_AS(TrainIbm1(reserved, "src", AlignerConfig{}), DataError);
  CHECK_THROWS_AS(TranslationTable({"a"}, {"x"}, {1.0}), DataError);
  CHECK_THROWS_AS(TranslationTable({"NULL"}, {"x", "y"}, {0.7, 0.7}), DataError);
}
