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

// Data-parallel inner loops used by every solver iteration: dot products,
// vector updates and matrix-vector products with the coupling matrix.
//
// Two implementations share one signature set:
//   * kernels::serial - plain loops, the reference the tests compare against.
//   * kernels::omp    - OpenMP worksharing versions used by the library.
// The OpenMP versions fall back to a single thread below kParallelMinSize so
// tiny problems do not pay the fork/join cost.

#ifndef SCSDG_KERNELS_HPP_
#define SCSDG_KERNELS_HPP_

#include <cstdint>
#include <span>

namespace scsdg::kernels {

inline constexpr std::int64_t kParallelMinSize = 4096;

// Compressed sparse row view; row_ptr has rows + 1 entries.
struct CsrView {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::span<const std::int64_t> row_ptr;
  std::span<const std::int32_t> col_idx;
  std::span<const double> values;
};

// Row-major dense view.
struct DenseView {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::span<const double> values;
};

namespace serial {

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredNorm(std::span<const double> a);
// y <- alpha * x + beta * y. With beta = 0, y is overwritten without being read.
void Axpby(double alpha, std::span<const double> x, double beta,
           std::span<double> y);
// out <- A x
void CsrMatvec(const CsrView& a, std::span<const double> x,
               std::span<double> out);
// out <- A^T y, scattering row contributions; needs no transposed copy.
void CsrMatvecTranspose(const CsrView& a, std::span<const double> y,
                        std::span<double> out);
void DenseMatvec(const DenseView& a, std::span<const double> x,
                 std::span<double> out);
void DenseMatvecTranspose(const DenseView& a, std::span<const double> y,
                          std::span<double> out);

}  // namespace serial

namespace omp {

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredNorm(std::span<const double> a);
void Axpby(double alpha, std::span<const double> x, double beta,
           std::span<double> y);
void CsrMatvec(const CsrView& a, std::span<const double> x,
               std::span<double> out);
// The scatter in serial::CsrMatvecTranspose races across threads, so the
// parallel transpose product takes an explicit CSR copy of A^T and runs a
// row-parallel product on it.
void CsrMatvecTranspose(const CsrView& a_transposed, std::span<const double> y,
                        std::span<double> out);
void DenseMatvec(const DenseView& a, std::span<const double> x,
                 std::span<double> out);
void DenseMatvecTranspose(const DenseView& a, std::span<const double> y,
                          std::span<double> out);

// Number of threads OpenMP would use for a parallel region (1 when the
// library was built without OpenMP).
int MaxThreads();

}  // namespace omp

}  // namespace scsdg::kernels

#endif  // SCSDG_KERNELS_HPP_
