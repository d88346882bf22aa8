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

#include <algorithm>
#include <cstddef>

#include "scsdg/kernels.hpp"

namespace scsdg::kernels::serial {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double SquaredNorm(std::span<const double> a) { return Dot(a, a); }

void Axpby(double alpha, std::span<const double> x, double beta,
           std::span<double> y) {
  if (beta == 0.0) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha * x[i];
    return;
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha * x[i] + beta * y[i];
}

void CsrMatvec(const CsrView& a, std::span<const double> x,
               std::span<double> out) {
  for (std::int64_t r = 0; r < a.rows; ++r) {
    double sum = 0.0;
    for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      sum += a.values[k] * x[a.col_idx[k]];
    }
    out[r] = sum;
  }
}

void CsrMatvecTranspose(const CsrView& a, std::span<const double> y,
                        std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::int64_t r = 0; r < a.rows; ++r) {
    const double yr = y[r];
    if (yr == 0.0) continue;
    for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      out[a.col_idx[k]] += a.values[k] * yr;
    }
  }
}

void DenseMatvec(const DenseView& a, std::span<const double> x,
                 std::span<double> out) {
  for (std::int64_t r = 0; r < a.rows; ++r) {
    const double* row = a.values.data() + r * a.cols;
    double sum = 0.0;
    for (std::int64_t c = 0; c < a.cols; ++c) sum += row[c] * x[c];
    out[r] = sum;
  }
}

void DenseMatvecTranspose(const DenseView& a, std::span<const double> y,
                          std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::int64_t r = 0; r < a.rows; ++r) {
    const double* row = a.values.data() + r * a.cols;
    const double yr = y[r];
    for (std::int64_t c = 0; c < a.cols; ++c) out[c] += row[c] * yr;
  }
}

}  // namespace scsdg::kernels::serial
