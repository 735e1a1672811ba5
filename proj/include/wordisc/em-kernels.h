// include/wordisc/em-kernels.h

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

#ifndef WORDISC_EM_KERNELS_H_
#define WORDISC_EM_KERNELS_H_

// Inner loops of IBM-1 EM. Each kernel has a serial reference and an OpenMP
// version; the two produce bit-identical results for any thread count because
// the parallel E-step only evaluates posteriors concurrently and then applies
// them to the count table in the serial order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wordisc {
namespace kernels {

/// Integer-coded sentence pairs stored back to back. Sentence i owns
/// source_ids[source_offsets[i] .. source_offsets[i+1]) and likewise for the
/// target side; cell_offsets is the running sum of L*S.
struct IndexedBitext {
  std::size_t source_vocab_size = 0;
  std::size_t target_vocab_size = 0;
  std::vector<std::uint32_t> source_ids;
  std::vector<std::uint32_t> target_ids;
  std::vector<std::size_t> source_offsets{0};
  std::vector<std::size_t> target_offsets{0};
  std::vector<std::size_t> cell_offsets{0};

  void AddSentence(std::span<const std::uint32_t> source,
                   std::span<const std::uint32_t> target);
  std::size_t num_sentences() const { return source_offsets.size() - 1; }
  std::size_t num_target_tokens() const { return target_ids.size(); }
};

// Accumulates expected counts (row-major, source x target) for the
// translation table `table`, zeroing `counts` first. Returns the corpus
// log-likelihood sum_sentences [ -L log S + sum_t log sum_s t(f_t|e_s) ].
double ExpectedCountsSerial(const IndexedBitext &bitext,
                            std::span<const double> table,
                            std::span<double> counts);

// Same result bit for bit. `scratch` holds one posterior per cell.
double ExpectedCountsParallel(const IndexedBitext &bitext,
                              std::span<const double> table,
                              std::span<double> counts,
                              std::vector<double> *scratch);

// M-step: row-normalizes counts into `table`, floors every entry at
// `prob_floor` and renormalizes. Rows with no mass become uniform.
void MaximizeSerial(std::span<const double> counts, std::size_t num_cols,
                    double prob_floor, std::span<double> table);
void MaximizeParallel(std::span<const double> counts, std::size_t num_cols,
                      double prob_floor, std::span<double> table);

}  // namespace kernels
}  // namespace wordisc

#endif  // WORDISC_EM_KERNELS_H_
