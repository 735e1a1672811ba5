// bench/em-bench.cc

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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wordisc/em-kernels.h"
#include "wordisc/ibm1-aligner.h"
#include "wordisc/synth.h"

namespace {

using wordisc::kernels::IndexedBitext;

// Random bitext with sentence lengths in [4, 24) over the given vocabularies.
IndexedBitext MakeBitext(std::size_t sentences, std::size_t source_vocab,
                         std::size_t target_vocab) {
  IndexedBitext b;
  b.source_vocab_size = source_vocab;
  b.target_vocab_size = target_vocab;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> len(4, 23),
      src(0, static_cast<std::uint32_t>(source_vocab - 1)),
      tgt(0, static_cast<std::uint32_t>(target_vocab - 1));
  std::vector<std::uint32_t> s, t;
  for (std::size_t i = 0; i < sentences; ++i) {
    s.assign(len(rng), 0);
    t.assign(len(rng) * 3, 0);
    for (auto &x : s) x = src(rng);
    for (auto &x : t) x = tgt(rng);
    b.AddSentence(s, t);
  }
  return b;
}

std::vector<double> Uniform(const IndexedBitext &b) {
  return std::vector<double>(b.source_vocab_size * b.target_vocab_size,
                             1.0 / static_cast<double>(b.target_vocab_size));
}

void BM_ExpectedCountsSerial(benchmark::State &state) {
  IndexedBitext b = MakeBitext(static_cast<std::size_t>(state.range(0)), 2000, 60);
  std::vector<double> table = Uniform(b), counts(table.size());
  for (auto _ : state) {
    std::fill(counts.begin(), counts.end(), 0.0);
    benchmark::DoNotOptimize(wordisc::kernels::ExpectedCountsSerial(b, table, counts));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.num_target_tokens()));
}

void BM_ExpectedCountsParallel(benchmark::State &state) {
  IndexedBitext b = MakeBitext(static_cast<std::size_t>(state.range(0)), 2000, 60);
  std::vector<double> table = Uniform(b), counts(table.size()), scratch;
  for (auto _ : state) {
    std::fill(counts.begin(), counts.end(), 0.0);
    benchmark::DoNotOptimize(
        wordisc::kernels::ExpectedCountsParallel(b, table, counts, &scratch));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.num_target_tokens()));
}

void BM_MaximizeSerial(benchmark::State &state) {
  const std::size_t rows = static_cast<std::size_t>(state.range(0)), cols = 60;
  std::vector<double> counts(rows * cols), table(rows * cols);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (auto &c : counts) c = u(rng);
  for (auto _ : state) {
    wordisc::kernels::MaximizeSerial(counts, cols, 1e-12, table);
    benchmark::ClobberMemory();
  }
}

void BM_MaximizeParallel(benchmark::State &state) {
  const std::size_t rows = static_cast<std::size_t>(state.range(0)), cols = 60;
  std::vector<double> counts(rows * cols), table(rows * cols);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (auto &c : counts) c = u(rng);
  for (auto _ : state) {
    wordisc::kernels::MaximizeParallel(counts, cols, 1e-12, table);
    benchmark::ClobberMemory();
  }
}

void BM_TrainIbm1(benchmark::State &state) {
  wordisc::SyntheticSpec spec;
  spec.sentences = 2000;
  spec.vocab = 200;
  spec.langs = 1;
  wordisc::Corpus corpus = wordisc::GenerateSynthetic(spec).corpus;
  wordisc::AlignerConfig config;
  config.iterations = 10;
  config.convergence_epsilon = 0.0;
  config.parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(wordisc::TrainIbm1(corpus, "syn0", config));
}

}  // namespace

BENCHMARK(BM_ExpectedCountsSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpectedCountsParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaximizeSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MaximizeParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TrainIbm1)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
