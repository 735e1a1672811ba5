// src/synth.cc

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

#include "wordisc/synth.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <set>

#include "wordisc/error.h"

namespace wordisc {

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps the
// generated bytes identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n).
  std::size_t Below(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }
  std::size_t Between(std::size_t lo, std::size_t hi) {
    return lo + Below(hi - lo + 1);
  }
  double Unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  template <typename T>
  void Shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::string> Inventory(std::size_t size) {
  static const char *const kConsonants[] = {
      "b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v",
      "w", "y", "z", "ng", "mb", "nd", "ts", "dz", "gb", "kp", "ny", "h"};
  static const char *const kVowels[] = {"a", "e", "i", "o", "u", "ɛ", "ɔ"};
  static const char *const kTones[] = {"", "\xCC\x81", "\xCC\x80"};  // acute, grave
  std::vector<std::string> out;
  for (const char *c : kConsonants) out.emplace_back(c);
  for (const char *v : kVowels)
    for (const char *t : kTones) out.push_back(std::string(v) + t);
  for (const char *v : kVowels)
    for (const char *t : kTones) out.push_back(std::string(v) + v + t);
  for (const char *c : kConsonants) out.push_back(std::string(c) + "w");
  for (std::size_t i = 0; out.size() < size; ++i)
    out.push_back("x" + std::to_string(i));
  out.resize(size);
  return out;
}

// Draws words symbol by symbol from the least-used part of the inventory, so
// that words share as few symbols as the inventory allows.
std::vector<PhonemeSeq> MakeLexicon(const SyntheticSpec &spec,
                                    const std::vector<std::string> &inventory,
                                    Rng &rng) {
  std::vector<std::size_t> used(inventory.size(), 0);
  std::set<PhonemeSeq> seen;
  std::vector<PhonemeSeq> words;
  std::size_t attempts = 0;
  while (words.size() < spec.vocab) {
    if (++attempts > 1000 * spec.vocab)
      throw DataError("synthetic: inventory too small for the requested vocabulary");
    const std::size_t len = rng.Between(spec.min_word_len, spec.max_word_len);
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t least = SIZE_MAX;
      for (std::size_t s = 0; s < inventory.size(); ++s)
        if (std::find(picked.begin(), picked.end(), s) == picked.end())
          least = std::min(least, used[s]);
      std::vector<std::size_t> candidates;
      for (std::size_t s = 0; s < inventory.size(); ++s)
        if (used[s] == least &&
            std::find(picked.begin(), picked.end(), s) == picked.end())
          candidates.push_back(s);
      if (candidates.empty()) break;
      picked.push_back(candidates[rng.Below(candidates.size())]);
    }
    PhonemeSeq word;
    for (std::size_t s : picked) word.push_back(inventory[s]);
    if (word.size() < spec.min_word_len || !seen.insert(word).second) continue;
    for (std::size_t s : picked) ++used[s];
    words.push_back(std::move(word));
  }
  return words;
}

std::size_t ParseCount(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw DataError("synthetic: bad value '" + std::string(value) + "' for '" +
                    std::string(key) + "'");
  return out;
}

}  // namespace

void SyntheticSpec::Validate() const {
  if (vocab < 2) throw DataError("synthetic: vocabulary size must be >= 2");
  if (sentences < 1) throw DataError("synthetic: sentence count must be >= 1");
  if (langs < 1) throw DataError("synthetic: need at least one language");
  if (min_word_len < 1 || max_word_len < min_word_len)
    throw DataError("synthetic: bad word length range");
  if (min_sentence_words < 1 || max_sentence_words < min_sentence_words)
    throw DataError("synthetic: bad sentence length range");
  const std::size_t inventory = phonemes ? phonemes : 4 * vocab;
  if (inventory < max_word_len)
    throw DataError("synthetic: phoneme inventory smaller than the longest word");
}

void SyntheticSpec::Set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw DataError("synthetic: expected key=value, got '" +
                    std::string(assignment) + "'");
  const std::string_view key = assignment.substr(0, eq);
  const std::string_view value = assignment.substr(eq + 1);
  const std::size_t n = ParseCount(key, value);
  if (key == "seed") seed = n;
  else if (key == "vocab") vocab = n;
  else if (key == "sentences") sentences = n;
  else if (key == "langs") langs = n;
  else if (key == "phonemes") phonemes = n;
  else if (key == "minlen") min_word_len = n;
  else if (key == "maxlen") max_word_len = n;
  else if (key == "minwords") min_sentence_words = n;
  else if (key == "maxwords") max_sentence_words = n;
  else throw DataError("synthetic: unknown key '" + std::string(key) + "'");
}

std::string SyntheticLanguage(std::size_t k) { return "syn" + std::to_string(k); }

SyntheticCorpus GenerateSynthetic(const SyntheticSpec &spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const auto inventory = Inventory(spec.phonemes ? spec.phonemes : 4 * spec.vocab);
  std::vector<PhonemeSeq> words = MakeLexicon(spec, inventory, rng);

  // Per-language word -> token maps.
  std::vector<std::vector<std::string>> labels(spec.langs);
  std::vector<double> drop(spec.langs, 0.0);
  for (std::size_t k = 0; k < spec.langs; ++k) {
    std::vector<std::size_t> perm(spec.vocab);
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(perm);
    const std::string prefix(1, static_cast<char>('a' + k % 26));
    auto &lab = labels[k];
    lab.resize(spec.vocab);
    for (std::size_t w = 0; w < spec.vocab; ++w)
      lab[w] = prefix + std::to_string(perm[w]);
    if (k > 0) {
      const double share = std::min(0.75, 0.25 * static_cast<double>(k));
      const std::size_t pairs =
          static_cast<std::size_t>(share * static_cast<double>(spec.vocab) / 2.0);
      for (std::size_t p = 0; p < pairs; ++p) lab[perm[2 * p + 1]] = lab[perm[2 * p]];
      drop[k] = std::min(0.3, 0.1 * static_cast<double>(k));
    }
  }

  std::vector<std::string> languages;
  for (std::size_t k = 0; k < spec.langs; ++k) languages.push_back(SyntheticLanguage(k));

  std::vector<Utterance> utterances;
  utterances.reserve(spec.sentences);
  const int width = static_cast<int>(std::to_string(spec.sentences).size());
  for (std::size_t i = 0; i < spec.sentences; ++i) {
    const std::size_t n =
        rng.Between(spec.min_sentence_words, spec.max_sentence_words);
    std::vector<std::size_t> sentence;
    while (sentence.size() < n) {
      std::size_t w = rng.Below(spec.vocab);
      if (!sentence.empty() && w == sentence.back()) continue;
      sentence.push_back(w);
    }
    Utterance u;
    std::string num = std::to_string(i + 1);
    u.id = "syn" + std::string(width - num.size(), '0') + num;
    BoundarySet gold;
    for (std::size_t w : sentence) {
      if (!u.phonemes.empty()) gold.push_back(static_cast<int>(u.phonemes.size()));
      u.phonemes.insert(u.phonemes.end(), words[w].begin(), words[w].end());
    }
    u.gold_boundaries = std::move(gold);
    for (std::size_t k = 0; k < spec.langs; ++k) {
      std::vector<std::size_t> order = sentence;
      if (k > 0) rng.Shuffle(order);
      TokenList tokens;
      for (std::size_t w : order)
        if (k == 0 || rng.Unit() >= drop[k]) tokens.push_back(labels[k][w]);
      if (tokens.empty()) tokens.push_back(labels[k][order.front()]);
      u.translations.emplace(languages[k], std::move(tokens));
    }
    utterances.push_back(std::move(u));
  }

  SyntheticCorpus out{Corpus(std::move(languages), std::move(utterances)),
                      std::move(words)};
  std::sort(out.lexicon.begin(), out.lexicon.end());
  return out;
}

}  // namespace wordisc
