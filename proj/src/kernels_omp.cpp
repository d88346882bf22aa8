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

#include <cstdint>

#include "scsdg/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// All loops use schedule(static) so that, for a fixed thread count, the
// partial sums of the reductions are formed in the same order on every run.

namespace scsdg::kernels::omp {

double Dot(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<std::int64_t>(a.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum) \
    if (n >= kParallelMinSize)
  for (std::int64_t i = 0; i < n; ++i) sum += pa[i] * pb[i];
  return sum;
}

double SquaredNorm(std::span<const double> a) { return Dot(a, a); }

void Axpby(double alpha, std::span<const double> x, double beta,
           std::span<double> y) {
  const auto n = static_cast<std::int64_t>(y.size());
  const double* px = x.data();
  double* py = y.data();
  if (beta == 0.0) {
#pragma omp parallel for schedule(static) if (n >= kParallelMinSize)
    for (std::int64_t i = 0; i < n; ++i) py[i] = alpha * px[i];
    return;
  }
#pragma omp parallel for schedule(static) if (n >= kParallelMinSize)
  for (std::int64_t i = 0; i < n; ++i) py[i] = alpha * px[i] + beta * py[i];
}

void CsrMatvec(const CsrView& a, std::span<const double> x,
               std::span<double> out) {
  const std::int64_t* row_ptr = a.row_ptr.data();
  const std::int32_t* col_idx = a.col_idx.data();
  const double* values = a.values.data();
  const double* px = x.data();
  double* po = out.data();
  const std::int64_t rows = a.rows;
  const auto nnz = static_cast<std::int64_t>(a.values.size());
#pragma omp parallel for schedule(static) \
    if (nnz >= kParallelMinSize && rows > 1)
  for (std::int64_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      sum += values[k] * px[col_idx[k]];
    }
    po[r] = sum;
  }
}

void CsrMatvecTranspose(const CsrView& a_transposed, std::span<const double> y,
                        std::span<double> out) {
  CsrMatvec(a_transposed, y, out);
}

void DenseMatvec(const DenseView& a, std::span<const double> x,
                 std::span<double> out) {
  const double* values = a.values.data();
  const double* px = x.data();
  double* po = out.data();
  const std::int64_t rows = a.rows;
  const std::int64_t cols = a.cols;
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelMinSize)
  for (std::int64_t r = 0; r < rows; ++r) {
    const double* row = values + r * cols;
    double sum = 0.0;
    for (std::int64_t c = 0; c < cols; ++c) sum += row[c] * px[c];
    po[r] = sum;
  }
}

void DenseMatvecTranspose(const DenseView& a, std::span<const double> y,
                          std::span<double> out) {
  const double* values = a.values.data();
  const double* py = y.data();
  double* po = out.data();
  const std::int64_t rows = a.rows;
  const std::int64_t cols = a.cols;
  // Column-parallel: each thread owns a slice of the output.
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelMinSize)
  for (std::int64_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::int64_t r = 0; r < rows; ++r) sum += values[r * cols + c] * py[r];
    po[c] = sum;
  }
}

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace scsdg::kernels::omp
