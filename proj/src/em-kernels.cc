// src/em-kernels.cc

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

#include "wordisc/em-kernels.h"

#include <algorithm>
#include <cmath>

namespace wordisc {
namespace kernels {

namespace {

// Posteriors of one sentence written to `post` (L*S, row-major); returns the
// sentence log-likelihood.
inline double SentencePosteriors(const IndexedBitext &b, std::size_t i,
                                 std::span<const double> table, double *post) {
  const std::uint32_t *src = b.source_ids.data() + b.source_offsets[i];
  const std::uint32_t *tgt = b.target_ids.data() + b.target_offsets[i];
  const std::size_t S = b.source_offsets[i + 1] - b.source_offsets[i];
  const std::size_t L = b.target_offsets[i + 1] - b.target_offsets[i];
  const std::size_t V = b.target_vocab_size;
  double ll = -static_cast<double>(L) * std::log(static_cast<double>(S));
  for (std::size_t t = 0; t < L; ++t) {
    double z = 0.0;
    for (std::size_t s = 0; s < S; ++s) z += table[src[s] * V + tgt[t]];
    ll += std::log(z);
    for (std::size_t s = 0; s < S; ++s)
      post[t * S + s] = table[src[s] * V + tgt[t]] / z;
  }
  return ll;
}

inline void ApplyPosteriors(const IndexedBitext &b, std::size_t i,
                            const double *post, std::span<double> counts) {
  const std::uint32_t *src = b.source_ids.data() + b.source_offsets[i];
  const std::uint32_t *tgt = b.target_ids.data() + b.target_offsets[i];
  const std::size_t S = b.source_offsets[i + 1] - b.source_offsets[i];
  const std::size_t L = b.target_offsets[i + 1] - b.target_offsets[i];
  const std::size_t V = b.target_vocab_size;
  for (std::size_t t = 0; t < L; ++t)
    for (std::size_t s = 0; s < S; ++s)
      counts[src[s] * V + tgt[t]] += post[t * S + s];
}

inline void MaximizeRow(const double *counts, std::size_t num_cols,
                        double prob_floor, double *row) {
  double total = 0.0;
  for (std::size_t f = 0; f < num_cols; ++f) total += counts[f];
  if (total > 0.0) {
    for (std::size_t f = 0; f < num_cols; ++f) row[f] = counts[f] / total;
  } else {
    std::fill(row, row + num_cols, 1.0 / static_cast<double>(num_cols));
  }
  double floored = 0.0;
  for (std::size_t f = 0; f < num_cols; ++f) {
    row[f] = std::max(row[f], prob_floor);
    floored += row[f];
  }
  for (std::size_t f = 0; f < num_cols; ++f) row[f] /= floored;
}

}  // namespace

void IndexedBitext::AddSentence(std::span<const std::uint32_t> source,
                                std::span<const std::uint32_t> target) {
  source_ids.insert(source_ids.end(), source.begin(), source.end());
  target_ids.insert(target_ids.end(), target.begin(), target.end());
  source_offsets.push_back(source_ids.size());
  target_offsets.push_back(target_ids.size());
  cell_offsets.push_back(cell_offsets.back() + source.size() * target.size());
}

double ExpectedCountsSerial(const IndexedBitext &bitext,
                            std::span<const double> table,
                            std::span<double> counts) {
  std::fill(counts.begin(), counts.end(), 0.0);
  std::vector<double> post;
  double ll = 0.0;
  for (std::size_t i = 0; i < bitext.num_sentences(); ++i) {
    post.resize(bitext.cell_offsets[i + 1] - bitext.cell_offsets[i]);
    ll += SentencePosteriors(bitext, i, table, post.data());
    ApplyPosteriors(bitext, i, post.data(), counts);
  }
  return ll;
}

double ExpectedCountsParallel(const IndexedBitext &bitext,
                              std::span<const double> table,
                              std::span<double> counts,
                              std::vector<double> *scratch) {
  const std::size_t n = bitext.num_sentences();
  scratch->resize(bitext.cell_offsets.back());
  std::vector<double> sentence_ll(n);
  double *post = scratch->data();
  const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    sentence_ll[k] =
        SentencePosteriors(bitext, k, table, post + bitext.cell_offsets[k]);
  }
  std::fill(counts.begin(), counts.end(), 0.0);
  double ll = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ll += sentence_ll[i];
    ApplyPosteriors(bitext, i, post + bitext.cell_offsets[i], counts);
  }
  return ll;
}

void MaximizeSerial(std::span<const double> counts, std::size_t num_cols,
                    double prob_floor, std::span<double> table) {
  const std::size_t rows = counts.size() / num_cols;
  for (std::size_t e = 0; e < rows; ++e)
    MaximizeRow(counts.data() + e * num_cols, num_cols, prob_floor,
                table.data() + e * num_cols);
}

void MaximizeParallel(std::span<const double> counts, std::size_t num_cols,
                      double prob_floor, std::span<double> table) {
  const auto rows = static_cast<std::int64_t>(counts.size() / num_cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < rows; ++e)
    MaximizeRow(counts.data() + e * num_cols, num_cols, prob_floor,
                table.data() + e * num_cols);
}

}  // namespace kernels
}  // namespace wordisc
