// include/wordisc/synth.h

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

#ifndef WORDISC_SYNTH_H_
#define WORDISC_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wordisc/corpus.h"

namespace wordisc {

struct SyntheticSpec {
  std::uint64_t seed = 7;
  std::size_t vocab = 20;
  std::size_t sentences = 200;
  std::size_t langs = 3;
  // Word length in phonemes, uniform in [min_word_len, max_word_len].
  std::size_t min_word_len = 2;
  std::size_t max_word_len = 5;
  // Sentence length in words, uniform in [min_sentence_words, max_sentence_words].
  std::size_t min_sentence_words = 3;
  std::size_t max_sentence_words = 7;
  // Phoneme inventory size; 0 picks 4 * vocab.
  std::size_t phonemes = 0;

  // Throws DataError on a degenerate spec.
  void Validate() const;
  // Applies "key=value" overrides (seed, vocab, sentences, langs, phonemes,
  // minlen, maxlen, minwords, maxwords).
  void Set(std::string_view assignment);
};

/// Synthetic parallel corpus with known segmentation.
///
/// Language "syn0" is a pure relabelling of the word sequence. Each further
/// language k shuffles word order, merges a growing share of the vocabulary
/// into shared tokens (25% per step, capped at 75%) and drops tokens with
/// probability 0.1 * k (capped at 0.3), so later languages are harder to
/// align.
struct SyntheticCorpus {
  Corpus corpus;
  std::vector<PhonemeSeq> lexicon;  // true word types, sorted
};

SyntheticCorpus GenerateSynthetic(const SyntheticSpec &spec);

std::string SyntheticLanguage(std::size_t k);

}  // namespace wordisc

#endif  // WORDISC_SYNTH_H_
