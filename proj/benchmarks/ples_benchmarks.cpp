// Copyright 2026 The ples Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "ples/determinantal.hpp"
#include "ples/eigensolver.hpp"
#include "ples/ensemble.hpp"
#include "ples/limits.hpp"

namespace {

using namespace ples;

void BM_DenseGue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_dense(sample_gue_dense(n, ++seed)));
}
BENCHMARK(BM_DenseGue)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_TridiagonalGue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_tridiagonal(sample_gue_tridiagonal(n, ++seed)));
}
BENCHMARK(BM_TridiagonalGue)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Bisection(benchmark::State& state) {
  const TridiagonalMatrix t = sample_gue_tridiagonal(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_bisection(t, 1e-12));
}
BENCHMARK(BM_Bisection)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExactVariance(benchmark::State& state) {
  const Observable f = Observable::of(TruncatedFunction(TestFunction::monomial(2), 0.0));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(determinantal::exact_variance(n, f));
}
BENCHMARK(BM_ExactVariance)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LimitVariance(benchmark::State& state) {
  const TestFunction f = TestFunction::monomial(2);
  for (auto _ : state) benchmark::DoNotOptimize(limits::limit_variance(f, 0.5));
}
BENCHMARK(BM_LimitVariance)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
