// Copyright 2026 The scsdg Authors
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

// Serial reference kernels against their OpenMP counterparts.
//   build/bench/kernels_bench --benchmark_filter=Csr

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "scsdg/kernels.hpp"

namespace {

using scsdg::kernels::CsrView;
using scsdg::kernels::DenseView;

std::vector<double> RandomVector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(engine);
  return v;
}

// Square CSR matrix with a fixed number of random entries per row.
struct CsrMatrix {
  std::int64_t size;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col_idx;
  std::vector<double> values;

  CsrMatrix(std::int64_t n, int per_row) : size(n) {
    std::mt19937_64 engine(7);
    std::uniform_int_distribution<std::int32_t> col(0, static_cast<std::int32_t>(n - 1));
    std::normal_distribution<double> normal;
    row_ptr.push_back(0);
    for (std::int64_t r = 0; r < n; ++r) {
      for (int k = 0; k < per_row; ++k) {
        col_idx.push_back(col(engine));
        values.push_back(normal(engine));
      }
      row_ptr.push_back(static_cast<std::int64_t>(values.size()));
    }
  }
  CsrView view() const { return {size, size, row_ptr, col_idx, values}; }
};

template <double (*Dot)(std::span<const double>, std::span<const double>)>
void BM_Dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> a = RandomVector(n, 1);
  const std::vector<double> b = RandomVector(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Dot(a, b));
  state.SetBytesProcessed(state.iterations() * 2 * static_cast<std::int64_t>(n * sizeof(double)));
}

template <void (*Axpby)(double, std::span<const double>, double, std::span<double>)>
void BM_Axpby(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> x = RandomVector(n, 1);
  std::vector<double> y = RandomVector(n, 2);
  for (auto _ : state) {
    Axpby(0.5, x, 0.5, y);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * 3 * static_cast<std::int64_t>(n * sizeof(double)));
}

template <void (*Matvec)(const CsrView&, std::span<const double>, std::span<double>)>
void BM_CsrMatvec(benchmark::State& state) {
  const CsrMatrix a(state.range(0), 8);
  const std::vector<double> x = RandomVector(static_cast<std::size_t>(a.size), 3);
  std::vector<double> out(static_cast<std::size_t>(a.size));
  const CsrView view = a.view();
  for (auto _ : state) {
    Matvec(view, x, out);
    benchmark::ClobberMemory();
  }
  state.counters["nnz"] = static_cast<double>(a.values.size());
}

template <void (*Matvec)(const DenseView&, std::span<const double>, std::span<double>)>
void BM_DenseMatvec(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const std::vector<double> values = RandomVector(static_cast<std::size_t>(n * n), 4);
  const std::vector<double> x = RandomVector(static_cast<std::size_t>(n), 5);
  std::vector<double> out(static_cast<std::size_t>(n));
  const DenseView view{n, n, values};
  for (auto _ : state) {
    Matvec(view, x, out);
    benchmark::ClobberMemory();
  }
}

namespace serial = scsdg::kernels::serial;
namespace omp = scsdg::kernels::omp;

BENCHMARK(BM_Dot<serial::Dot>)->Name("Dot/serial")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_Dot<omp::Dot>)->Name("Dot/omp")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_Axpby<serial::Axpby>)->Name("Axpby/serial")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_Axpby<omp::Axpby>)->Name("Axpby/omp")->RangeMultiplier(16)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_CsrMatvec<serial::CsrMatvec>)->Name("CsrMatvec/serial")->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_CsrMatvec<omp::CsrMatvec>)->Name("CsrMatvec/omp")->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_DenseMatvec<serial::DenseMatvec>)->Name("DenseMatvec/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_DenseMatvec<omp::DenseMatvec>)->Name("DenseMatvec/omp")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_DenseMatvec<serial::DenseMatvecTranspose>)
    ->Name("DenseMatvecTranspose/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_DenseMatvec<omp::DenseMatvecTranspose>)
    ->Name("DenseMatvecTranspose/omp")->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
