// include/wordisc/ibm1-aligner.h

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

#ifndef WORDISC_IBM1_ALIGNER_H_
#define WORDISC_IBM1_ALIGNER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wordisc/alignment-matrix.h"
#include "wordisc/corpus.h"

namespace wordisc {

struct AlignerConfig {
  int iterations = 30;
  // Stop once the per-target-token log-likelihood gains less than this.
  double convergence_epsilon = 1e-6;
  double prob_floor = 1e-12;
  bool use_null = true;
  std::uint64_t seed = 0;  // reserved; EM is deterministic
  bool parallel = true;

  // Throws DataError unless iterations >= 1 and 0 < prob_floor < 1.
  void Validate() const;
};

/// Lexical translation probabilities t(phoneme | source word). The source
/// vocabulary always starts with kNullToken; every row is a distribution over
/// the full target vocabulary.
class TranslationTable {
 public:
  TranslationTable(std::vector<std::string> source_vocab,
                   std::vector<std::string> target_vocab,
                   std::vector<double> probs);

  const std::vector<std::string> &source_vocab() const { return source_vocab_; }
  const std::vector<std::string> &target_vocab() const { return target_vocab_; }
  std::span<const double> probs() const { return probs_; }

  std::optional<std::size_t> SourceIndex(std::string_view word) const;
  std::optional<std::size_t> TargetIndex(std::string_view phoneme) const;

  double operator()(std::size_t source, std::size_t target) const {
    return probs_[source * target_vocab_.size() + target];
  }
  // t(phoneme | word), or `unknown` when either side is out of vocabulary.
  double Prob(std::string_view word, std::string_view phoneme,
              double unknown) const;

  bool operator==(const TranslationTable &o) const {
    return source_vocab_ == o.source_vocab_ &&
           target_vocab_ == o.target_vocab_ && probs_ == o.probs_;
  }

 private:
  std::vector<std::string> source_vocab_;
  std::vector<std::string> target_vocab_;
  std::vector<double> probs_;
  std::unordered_map<std::string, std::size_t> source_index_;
  std::unordered_map<std::string, std::size_t> target_index_;
};

struct TrainingTrace {
  TranslationTable table;
  // log_likelihood[k] is the corpus log-likelihood after k EM iterations.
  std::vector<double> log_likelihood;
  int iterations_run = 0;
  bool converged = false;
};

TrainingTrace TrainIbm1Traced(const Corpus &corpus, std::string_view language,
                              const AlignerConfig &config);
TranslationTable TrainIbm1(const Corpus &corpus, std::string_view language,
                           const AlignerConfig &config);

// Source side of `utterance` as seen by the aligner (NULL first if enabled).
TokenList AlignerSource(const Utterance &utterance, std::string_view language,
                        const AlignerConfig &config);

// Natural-log corpus likelihood with the uniform 1/S^L alignment prior.
// Unknown words score config.prob_floor.
double LogLikelihood(const TranslationTable &table, const Corpus &corpus,
                     std::string_view language, const AlignerConfig &config);

// Row t is the IBM-1 alignment posterior of phoneme t over source positions.
AlignmentMatrix PosteriorMatrix(const TranslationTable &table,
                                const Utterance &utterance,
                                std::string_view language,
                                const AlignerConfig &config);

// One matrix per utterance in corpus order.
std::vector<AlignmentMatrix> PosteriorMatrices(const TranslationTable &table,
                                               const Corpus &corpus,
                                               std::string_view language,
                                               const AlignerConfig &config);

}  // namespace wordisc

#endif  // WORDISC_IBM1_ALIGNER_H_
