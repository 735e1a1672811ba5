// src/ibm1-aligner.cc

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

#include "wordisc/ibm1-aligner.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>

#include "wordisc/em-kernels.h"
#include "wordisc/error.h"

namespace wordisc {

namespace {

constexpr double kTableSumTolerance = 1e-9;

const TokenList &TranslationOf(const Utterance &u, std::string_view language) {
  auto it = u.translations.find(std::string(language));
  if (it == u.translations.end())
    throw DataError("utterance '" + u.id + "' has no translation in '" +
                    std::string(language) + "'");
  return it->second;
}

// Integer-coded copy of the corpus in a canonical sentence order, so that the
// floating-point reduction order does not depend on the order of the input.
struct CodedCorpus {
  std::vector<std::string> source_vocab;
  std::vector<std::string> target_vocab;
  kernels::IndexedBitext bitext;
};

CodedCorpus Encode(const Corpus &corpus, std::string_view language,
                   const AlignerConfig &config) {
  std::set<std::string> source_words, target_symbols;
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Utterance &u = corpus[i];
    const TokenList &tokens = TranslationOf(u, language);
    if (tokens.empty() && !config.use_null)
      throw DataError("utterance '" + u.id +
                      "' has an empty source sentence and NULL is disabled");
    for (const auto &w : tokens) {
      if (w == kNullToken)
        throw DataError("utterance '" + u.id + "': source token '" +
                        std::string(kNullToken) + "' is reserved");
      source_words.insert(w);
    }
    target_symbols.insert(u.phonemes.begin(), u.phonemes.end());
    order[i] = i;
  }
  const std::string lang(language);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto &ta = corpus[a].translations.at(lang);
    const auto &tb = corpus[b].translations.at(lang);
    if (ta != tb) return ta < tb;
    return corpus[a].phonemes < corpus[b].phonemes;
  });

  CodedCorpus coded;
  coded.source_vocab.push_back(std::string(kNullToken));
  coded.source_vocab.insert(coded.source_vocab.end(), source_words.begin(),
                            source_words.end());
  coded.target_vocab.assign(target_symbols.begin(), target_symbols.end());
  std::unordered_map<std::string, std::uint32_t> src_id, tgt_id;
  for (std::size_t i = 0; i < coded.source_vocab.size(); ++i)
    src_id.emplace(coded.source_vocab[i], static_cast<std::uint32_t>(i));
  for (std::size_t i = 0; i < coded.target_vocab.size(); ++i)
    tgt_id.emplace(coded.target_vocab[i], static_cast<std::uint32_t>(i));
  coded.bitext.source_vocab_size = coded.source_vocab.size();
  coded.bitext.target_vocab_size = coded.target_vocab.size();

  std::vector<std::uint32_t> src, tgt;
  for (std::size_t i : order) {
    const Utterance &u = corpus[i];
    src.clear();
    tgt.clear();
    if (config.use_null) src.push_back(0);
    for (const auto &w : u.translations.at(lang)) src.push_back(src_id.at(w));
    for (const auto &p : u.phonemes) tgt.push_back(tgt_id.at(p));
    coded.bitext.AddSentence(src, tgt);
  }
  return coded;
}

}  // namespace

void AlignerConfig::Validate() const {
  if (iterations < 1) throw DataError("aligner iterations must be >= 1");
  if (!(prob_floor > 0.0 && prob_floor < 1.0))
    throw DataError("aligner prob_floor must lie in (0, 1)");
  if (!(convergence_epsilon >= 0.0))
    throw DataError("aligner convergence_epsilon must be >= 0");
}

TranslationTable::TranslationTable(std::vector<std::string> source_vocab,
                                   std::vector<std::string> target_vocab,
                                   std::vector<double> probs)
    : source_vocab_(std::move(source_vocab)),
      target_vocab_(std::move(target_vocab)),
      probs_(std::move(probs)) {
  if (source_vocab_.empty() || source_vocab_[0] != kNullToken)
    throw DataError("translation table must list NULL as its first source word");
  if (target_vocab_.empty())
    throw DataError("translation table has an empty target vocabulary");
  const std::size_t V = target_vocab_.size();
  if (probs_.size() != source_vocab_.size() * V)
    throw DataError("translation table size does not match its vocabularies");
  for (std::size_t e = 0; e < source_vocab_.size(); ++e) {
    if (!source_index_.emplace(source_vocab_[e], e).second)
      throw DataError("duplicate source word '" + source_vocab_[e] + "'");
    double sum = 0.0;
    for (std::size_t f = 0; f < V; ++f) {
      double p = probs_[e * V + f];
      if (!(p >= 0.0 && p <= 1.0))
        throw DataError("translation probability outside [0,1] for '" +
                        source_vocab_[e] + "'");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kTableSumTolerance)
      throw DataError("distribution for '" + source_vocab_[e] +
                      "' does not sum to 1");
  }
  for (std::size_t f = 0; f < V; ++f)
    if (!target_index_.emplace(target_vocab_[f], f).second)
      throw DataError("duplicate target symbol '" + target_vocab_[f] + "'");
}

std::optional<std::size_t> TranslationTable::SourceIndex(
    std::string_view word) const {
  auto it = source_index_.find(std::string(word));
  if (it == source_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TranslationTable::TargetIndex(
    std::string_view phoneme) const {
  auto it = target_index_.find(std::string(phoneme));
  if (it == target_index_.end()) return std::nullopt;
  return it->second;
}

double TranslationTable::Prob(std::string_view word, std::string_view phoneme,
                              double unknown) const {
  auto e = SourceIndex(word);
  auto f = TargetIndex(phoneme);
  if (!e || !f) return unknown;
  return (*this)(*e, *f);
}

TrainingTrace TrainIbm1Traced(const Corpus &corpus, std::string_view language,
                              const AlignerConfig &config) {
  config.Validate();
  if (corpus.empty()) throw DataError("cannot train an aligner on an empty corpus");
  if (!corpus.HasLanguage(language))
    throw DataError("language '" + std::string(language) +
                    "' is not present in the corpus");
  CodedCorpus coded = Encode(corpus, language, config);
  const std::size_t E = coded.source_vocab.size();
  const std::size_t V = coded.target_vocab.size();
  const double tokens = static_cast<double>(coded.bitext.num_target_tokens());

  std::vector<double> table(E * V, 1.0 / static_cast<double>(V));
  std::vector<double> counts(E * V);
  std::vector<double> scratch;
  auto estep = [&]() {
    return config.parallel
               ? kernels::ExpectedCountsParallel(coded.bitext, table, counts,
                                                 &scratch)
               : kernels::ExpectedCountsSerial(coded.bitext, table, counts);
  };

  TrainingTrace trace{TranslationTable(coded.source_vocab, coded.target_vocab,
                                       table),
                      {},
                      0,
                      false};
  trace.log_likelihood.push_back(estep());
  for (int it = 1; it <= config.iterations; ++it) {
    if (config.parallel)
      kernels::MaximizeParallel(counts, V, config.prob_floor, table);
    else
      kernels::MaximizeSerial(counts, V, config.prob_floor, table);
    trace.log_likelihood.push_back(estep());
    trace.iterations_run = it;
    const double gain =
        (trace.log_likelihood[it] - trace.log_likelihood[it - 1]) / tokens;
    if (gain < config.convergence_epsilon) {
      trace.converged = true;
      break;
    }
  }
  trace.table = TranslationTable(std::move(coded.source_vocab),
                                 std::move(coded.target_vocab), std::move(table));
  return trace;
}

TranslationTable TrainIbm1(const Corpus &corpus, std::string_view language,
                           const AlignerConfig &config) {
  return TrainIbm1Traced(corpus, language, config).table;
}

TokenList AlignerSource(const Utterance &utterance, std::string_view language,
                        const AlignerConfig &config) {
  const TokenList &tokens = TranslationOf(utterance, language);
  TokenList source;
  source.reserve(tokens.size() + 1);
  if (config.use_null) source.push_back(std::string(kNullToken));
  source.insert(source.end(), tokens.begin(), tokens.end());
  if (source.empty())
    throw DataError("utterance '" + utterance.id +
                    "' has an empty source sentence and NULL is disabled");
  return source;
}

double LogLikelihood(const TranslationTable &table, const Corpus &corpus,
                     std::string_view language, const AlignerConfig &config) {
  double ll = 0.0;
  for (const auto &u : corpus.utterances()) {
    TokenList source = AlignerSource(u, language, config);
    const double S = static_cast<double>(source.size());
    ll -= static_cast<double>(u.phonemes.size()) * std::log(S);
    for (const auto &f : u.phonemes) {
      double z = 0.0;
      for (const auto &e : source) z += table.Prob(e, f, config.prob_floor);
      ll += std::log(z);
    }
  }
  return ll;
}

AlignmentMatrix PosteriorMatrix(const TranslationTable &table,
                                const Utterance &utterance,
                                std::string_view language,
                                const AlignerConfig &config) {
  TokenList source = AlignerSource(utterance, language, config);
  const std::size_t S = source.size();
  const std::size_t L = utterance.phonemes.size();
  std::vector<double> cells(L * S);
  for (std::size_t t = 0; t < L; ++t) {
    double z = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      cells[t * S + s] =
          table.Prob(source[s], utterance.phonemes[t], config.prob_floor);
      z += cells[t * S + s];
    }
    if (!(z > 0.0))
      throw DataError("utterance '" + utterance.id + "': phoneme " +
                      std::to_string(t + 1) +
                      " has zero probability under every source word");
    for (std::size_t s = 0; s < S; ++s) cells[t * S + s] /= z;
  }
  return AlignmentMatrix(utterance.id, std::string(language), std::move(source),
                         utterance.phonemes, std::move(cells), 1e-9);
}

std::vector<AlignmentMatrix> PosteriorMatrices(const TranslationTable &table,
                                               const Corpus &corpus,
                                               std::string_view language,
                                               const AlignerConfig &config) {
  const auto n = static_cast<std::int64_t>(corpus.size());
  std::vector<std::optional<AlignmentMatrix>> slots(corpus.size());
  std::vector<std::string> errors(corpus.size());
#pragma omp parallel for schedule(dynamic, 32) if (config.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      slots[i].emplace(PosteriorMatrix(table, corpus[i], language, config));
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  std::vector<AlignmentMatrix> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw DataError(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace wordisc
