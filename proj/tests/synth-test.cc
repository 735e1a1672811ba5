// tests/synth-test.cc

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

#include <set>
#include <sstream>

#include "doctest.h"
#include "wordisc/error.h"
#include "wordisc/synth.h"

using namespace wordisc;

TEST_CASE("generation is deterministic") {
  SyntheticSpec spec;
  std::ostringstream a, b;
  WriteCorpus(GenerateSynthetic(spec).corpus, a, CorpusFormat::kTsv);
  WriteCorpus(GenerateSynthetic(spec).corpus, b, CorpusFormat::kTsv);
  CHECK(a.str() == b.str());
  spec.seed = 8;
  std::ostringstream c;
  WriteCorpus(GenerateSynthetic(spec).corpus, c, CorpusFormat::kTsv);
  CHECK(c.str() != a.str());
}

TEST_CASE("generated corpus follows the spec") {
  SyntheticSpec spec;
  spec.sentences = 150;
  spec.langs = 4;
  SyntheticCorpus syn = GenerateSynthetic(spec);
  CHECK(syn.corpus.size() == 150);
  CHECK(syn.corpus.languages() ==
        std::vector<std::string>{"syn0", "syn1", "syn2", "syn3"});
  CHECK(syn.lexicon.size() == spec.vocab);
  std::set<PhonemeSeq> types(syn.lexicon.begin(), syn.lexicon.end());
  CHECK(types.size() == spec.vocab);
  for (const auto &w : syn.lexicon) {
    CHECK(w.size() >= spec.min_word_len);
    CHECK(w.size() <= spec.max_word_len);
  }
  for (const auto &u : syn.corpus.utterances()) {
    REQUIRE(u.gold_boundaries);
    const std::size_t words = u.gold_boundaries->size() + 1;
    CHECK(words >= spec.min_sentence_words);
    CHECK(words <= spec.max_sentence_words);
    // The relabel-only language has one token per word.
    CHECK(u.translations.at("syn0").size() == words);
    // Every gold word is a lexicon type.
    std::size_t begin = 0;
    BoundarySet ends = *u.gold_boundaries;
    ends.push_back(static_cast<int>(u.phonemes.size()));
    for (int end : ends) {
      PhonemeSeq w(u.phonemes.begin() + begin, u.phonemes.begin() + end);
      CHECK(types.count(w) == 1);
      begin = end;
    }
  }
}

TEST_CASE("relabel-only language is a bijection of words") {
  SyntheticCorpus syn = GenerateSynthetic(SyntheticSpec{});
  std::map<PhonemeSeq, std::set<std::string>> word_to_token;
  std::map<std::string, std::set<PhonemeSeq>> token_to_word;
  for (const auto &u : syn.corpus.utterances()) {
    std::size_t begin = 0, k = 0;
    BoundarySet ends = *u.gold_boundaries;
    ends.push_back(static_cast<int>(u.phonemes.size()));
    for (int end : ends) {
      PhonemeSeq w(u.phonemes.begin() + begin, u.phonemes.begin() + end);
      const std::string &tok = u.translations.at("syn0")[k++];
      word_to_token[w].insert(tok);
      token_to_word[tok].insert(w);
      begin = end;
    }
  }
  for (const auto &[w, toks] : word_to_token) CHECK(toks.size() == 1);
  for (const auto &[t, ws] : token_to_word) CHECK(ws.size() == 1);
}

TEST_CASE("spec validation and key=value settings") {
  SyntheticSpec spec;
  spec.vocab = 1;
  CHECK_THROWS_AS(GenerateSynthetic(spec), DataError);
  spec = SyntheticSpec{};
  spec.Set("vocab=30");
  spec.Set("seed=99");
  CHECK(spec.vocab == 30);
  CHECK(spec.seed == 99);
  CHECK_THROWS_AS(spec.Set("colour=blue"), DataError);
  CHECK_THROWS_AS(spec.Set("vocab"), DataError);
  CHECK_THROWS_AS(spec.Set("vocab=abc"), DataError);
  spec.min_word_len = 6;
  CHECK_THROWS_AS(spec.Validate(), DataError);
}
