// Copyright 2026 The ORUDA Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Optimized kernels against their serial references on the shapes the
// trainer actually runs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oruda/kernels.h"

namespace {

namespace k = oruda::kernels;

std::vector<double> RandomVector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

template <bool kOptimized>
void BM_Gemm(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto kk = static_cast<std::size_t>(state.range(2));
  const auto ta = state.range(3) ? k::Trans::kYes : k::Trans::kNo;
  const auto a = RandomVector(m * kk, 1);
  const auto b = RandomVector(kk * n, 2);
  std::vector<double> c(m * n, 0.0);
  const std::size_t lda = ta == k::Trans::kYes ? m : kk;
  for (auto _ : state) {
    if constexpr (kOptimized) {
      k::Gemm(ta, k::Trans::kNo, m, n, kk, 1.0, a.data(), lda, b.data(), n, 0.0, c.data(), n);
    } else {
      k::reference::Gemm(ta, k::Trans::kNo, m, n, kk, 1.0, a.data(), lda, b.data(), n, 0.0,
                         c.data(), n);
    }
    benchmark::DoNotOptimize(c.data());
    benchmark::ClobberMemory();
  }
  state.counters["GFLOPS"] = benchmark::Counter(
      2.0 * static_cast<double>(m * n * kk), benchmark::Counter::kIsIterationInvariantRate,
      benchmark::Counter::kIs1000);
}

// Discriminator hidden layer, order head refresh chunk, weight gradient.
void GemmShapes(benchmark::internal::Benchmark* b) {
  b->Args({128, 1024, 1024, 0});
  b->Args({1024, 512, 512, 0});
  b->Args({64, 512, 64, 0});
  b->Args({1024, 1024, 128, 1});
  b->Unit(benchmark::kMicrosecond);
}

BENCHMARK_TEMPLATE(BM_Gemm, true)->Apply(GemmShapes);
BENCHMARK_TEMPLATE(BM_Gemm, false)->Apply(GemmShapes);

template <bool kOptimized>
void BM_Adam(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto value = RandomVector(n, 3);
  const auto grad = RandomVector(n, 4);
  std::vector<double> m(n, 0.0), v(n, 0.0);
  long step = 0;
  for (auto _ : state) {
    ++step;
    if constexpr (kOptimized) {
      k::AdamUpdate(value, grad, m, v, 1e-4, 0.9, 0.999, 1e-8, step);
    } else {
      k::reference::AdamUpdate(value, grad, m, v, 1e-4, 0.9, 0.999, 1e-8, step);
    }
    benchmark::DoNotOptimize(value.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK_TEMPLATE(BM_Adam, true)->Arg(1 << 20);
BENCHMARK_TEMPLATE(BM_Adam, false)->Arg(1 << 20);

template <bool kOptimized>
void BM_Relu(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = RandomVector(n, 5);
  std::vector<double> y(n);
  for (auto _ : state) {
    if constexpr (kOptimized) {
      k::ReluForward(x, y);
    } else {
      k::reference::ReluForward(x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK_TEMPLATE(BM_Relu, true)->Arg(1 << 20);
BENCHMARK_TEMPLATE(BM_Relu, false)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
