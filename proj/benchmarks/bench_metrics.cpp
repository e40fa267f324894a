/* Copyright 2026 The htg-eval Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "htg_eval/distribution_metrics.hpp"
#include "htg_eval/geometry_score.hpp"
#include "htg_eval/linalg.hpp"
#include "htg_eval/random.hpp"
#include "htg_eval/text_metrics.hpp"

namespace htg {
namespace {

RowMatrix random_rows(std::uint64_t seed, Eigen::Index n, Eigen::Index d) {
  Rng rng(seed);
  RowMatrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.uniform(-1, 1);
  return m;
}

void BM_Fid(benchmark::State& state) {
  const auto d = state.range(0);
  const auto a = gaussian_summary(random_rows(1, 4 * d, d));
  const auto b = gaussian_summary(random_rows(2, 4 * d, d));
  for (auto _ : state) benchmark::DoNotOptimize(fid(a, b));
}
BENCHMARK(BM_Fid)->Arg(16)->Arg(64)->Arg(256);

void BM_Kid(benchmark::State& state) {
  const auto n = state.range(0);
  const auto a = random_rows(3, n, 64);
  const auto b = random_rows(4, n, 64);
  for (auto _ : state) benchmark::DoNotOptimize(kid(a, b, {}, ThreadCount{1}));
}
BENCHMARK(BM_Kid)->Arg(200)->Arg(1000);

void BM_Mrlt(benchmark::State& state) {
  const auto pts = random_rows(5, state.range(0), 16);
  GsParams p;
  p.n_repeats = 10;
  for (auto _ : state) benchmark::DoNotOptimize(mrlt(pts, p, ThreadCount{1}));
}
BENCHMARK(BM_Mrlt)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Levenshtein(benchmark::State& state) {
  Rng rng(6);
  std::string a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a += static_cast<char>('a' + rng.uniform_index(26));
    b += static_cast<char>('a' + rng.uniform_index(26));
  }
  for (auto _ : state) benchmark::DoNotOptimize(levenshtein(a, b));
}
BENCHMARK(BM_Levenshtein)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace htg

BENCHMARK_MAIN();
