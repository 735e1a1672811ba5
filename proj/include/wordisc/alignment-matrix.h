// include/wordisc/alignment-matrix.h

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

#ifndef WORDISC_ALIGNMENT_MATRIX_H_
#define WORDISC_ALIGNMENT_MATRIX_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordisc/corpus.h"

namespace wordisc {

// Source token occupying column 0 when a matrix carries a NULL column.
inline constexpr std::string_view kNullToken = "NULL";

/// Row-stochastic target-phoneme x source-token soft alignment for one
/// sentence pair. Rows are stored densely in row-major order.
class AlignmentMatrix {
 public:
  // Row sums must lie within `row_sum_tolerance` of 1.
  AlignmentMatrix(std::string utterance_id, std::string language,
                  TokenList source, PhonemeSeq target, std::vector<double> cells,
                  double row_sum_tolerance = 1e-6);

  const std::string &utterance_id() const { return utterance_id_; }
  const std::string &language() const { return language_; }
  const TokenList &source() const { return source_; }
  const PhonemeSeq &target() const { return target_; }
  std::size_t num_rows() const { return target_.size(); }
  std::size_t num_cols() const { return source_.size(); }

  std::span<const double> row(std::size_t t) const {
    return {cells_.data() + t * num_cols(), num_cols()};
  }
  double operator()(std::size_t t, std::size_t s) const {
    return cells_[t * num_cols() + s];
  }
  const std::vector<double> &cells() const { return cells_; }

  bool has_null() const { return !source_.empty() && source_[0] == kNullToken; }

 private:
  std::string utterance_id_;
  std::string language_;
  TokenList source_;
  PhonemeSeq target_;
  std::vector<double> cells_;
};

struct MatrixReadReport {
  std::size_t matrices = 0;
  // Rows whose sum deviated from 1 by more than 1e-4 (but at most 5%).
  std::size_t rows_renormalized = 0;
};

// JSON-Lines interchange: {"id","lang","source","target","rows"} per line.
void WriteMatrices(std::span<const AlignmentMatrix> matrices, std::ostream &out);
void WriteMatrices(std::span<const AlignmentMatrix> matrices,
                   const std::string &path);

// Validates dimensions and row sums. Rows within 5% of 1 are renormalized
// exactly; anything further off is rejected.
std::vector<AlignmentMatrix> ReadMatrices(std::istream &in,
                                          MatrixReadReport *report = nullptr);
std::vector<AlignmentMatrix> ReadMatrices(const std::string &path,
                                          MatrixReadReport *report = nullptr);

}  // namespace wordisc

#endif  // WORDISC_ALIGNMENT_MATRIX_H_
