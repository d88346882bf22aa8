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

#include "scsdg/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "scsdg/error.hpp"

namespace scsdg {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorKind::kInvalidParameter:
      return "invalid parameter";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kUnsupported:
      return "unsupported";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

bool PrimalDualPoint::AllFinite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(x.begin(), x.end(), finite) &&
         std::all_of(y.begin(), y.end(), finite);
}

SmoothingPair::SmoothingPair(double beta_x, double beta_y)
    : beta_x_(beta_x), beta_y_(beta_y) {
  if (!(beta_x > 0.0) || !(beta_y > 0.0) || !std::isfinite(beta_x) ||
      !std::isfinite(beta_y)) {
    ThrowInvalidParameter("smoothing parameters must be positive and finite");
  }
}

StepPair::StepPair(double gamma_x, double gamma_y)
    : gamma_x_(gamma_x), gamma_y_(gamma_y) {
  if (!(gamma_x > 0.0) || !(gamma_y > 0.0) || !std::isfinite(gamma_x) ||
      !std::isfinite(gamma_y)) {
    ThrowInvalidParameter("step sizes must be positive and finite");
  }
}

Vector ProxCapable::Prox(double tau, std::span<const double> v) const {
  if (v.size() != dim()) ThrowDimensionMismatch("prox input", dim(), v.size());
  Vector out(v.size());
  ProxInto(tau, v, out);
  return out;
}

double ProxCapable::ValueDifference(std::span<const double> a,
                                    std::span<const double> b) const {
  const double va = Value(a);
  if (std::isinf(va)) return va;
  return va - Value(b);
}

Vector LinearCoupling::Apply(std::span<const double> x) const {
  if (x.size() != cols()) ThrowDimensionMismatch("A x", cols(), x.size());
  Vector out(rows());
  ApplyInto(x, out);
  return out;
}

Vector LinearCoupling::ApplyAdjoint(std::span<const double> y) const {
  if (y.size() != rows()) ThrowDimensionMismatch("A^T y", rows(), y.size());
  Vector out(cols());
  ApplyAdjointInto(y, out);
  return out;
}

double EstimateOpNorm(const LinearCoupling& coupling,
                      const PowerIterationOptions& options) {
  if (options.max_iters < 1) {
    ThrowInvalidParameter("power iteration needs at least one iteration");
  }
  const std::size_t n = coupling.cols();
  if (n == 0 || coupling.rows() == 0) return 0.0;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (double& vi : v) vi = normal(rng);
  Vector av(coupling.rows());
  Vector atav(n);

  double norm = std::sqrt(kernels::omp::SquaredNorm(v));
  double lambda = 0.0;
  for (int it = 0; it < options.max_iters; ++it) {
    kernels::omp::Axpby(1.0 / norm, v, 0.0, v);
    coupling.ApplyInto(v, av);
    // Rayleigh quotient of A^T A at the unit vector v.
    const double next = kernels::omp::SquaredNorm(av);
    coupling.ApplyAdjointInto(av, atav);
    norm = std::sqrt(kernels::omp::SquaredNorm(atav));
    const bool converged =
        it > 0 && std::abs(next - lambda) <= options.tol * std::abs(next);
    lambda = next;
    if (norm == 0.0 || converged) break;
    v.swap(atav);
  }
  return std::sqrt(std::max(lambda, 0.0));
}

MatrixCoupling::MatrixCoupling(std::size_t rows, std::size_t cols,
                               std::span<const Triplet> triplets,
                               Storage storage,
                               const PowerIterationOptions& power)
    : rows_(rows), cols_(cols) {
  if (cols > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()) ||
      rows > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    ThrowInvalidParameter("matrix dimensions exceed 32-bit index range");
  }
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.col < 0 || t.row >= static_cast<std::int64_t>(rows) ||
        t.col >= static_cast<std::int64_t>(cols)) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "triplet (" + std::to_string(t.row) + ", " +
                      std::to_string(t.col) + ") outside a " +
                      std::to_string(rows) + "x" + std::to_string(cols) +
                      " matrix");
    }
    if (!std::isfinite(t.value)) {
      ThrowInvalidParameter("matrix entries must be finite");
    }
  }
  const auto size = static_cast<std::int64_t>(rows) *
                    static_cast<std::int64_t>(cols);
  dense_ = storage == Storage::kDense ||
           (storage == Storage::kAuto && size <= kDenseThreshold);

  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(sorted.size());
  for (const Triplet& t : sorted) {
    if (!merged.empty() && merged.back().row == t.row &&
        merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  nnz_ = merged.size();

  if (dense_) {
    dense_values_.assign(static_cast<std::size_t>(size), 0.0);
    for (const Triplet& t : merged) {
      dense_values_[t.row * static_cast<std::int64_t>(cols) + t.col] = t.value;
    }
  } else {
    row_ptr_.assign(rows + 1, 0);
    t_row_ptr_.assign(cols + 1, 0);
    col_idx_.reserve(nnz_);
    values_.reserve(nnz_);
    for (const Triplet& t : merged) {
      ++row_ptr_[t.row + 1];
      ++t_row_ptr_[t.col + 1];
      col_idx_.push_back(static_cast<std::int32_t>(t.col));
      values_.push_back(t.value);
    }
    for (std::size_t r = 0; r < rows; ++r) row_ptr_[r + 1] += row_ptr_[r];
    for (std::size_t c = 0; c < cols; ++c) t_row_ptr_[c + 1] += t_row_ptr_[c];
    t_col_idx_.resize(nnz_);
    t_values_.resize(nnz_);
    std::vector<std::int64_t> next(t_row_ptr_.begin(), t_row_ptr_.end() - 1);
    for (const Triplet& t : merged) {
      const std::int64_t pos = next[t.col]++;
      t_col_idx_[pos] = static_cast<std::int32_t>(t.row);
      t_values_[pos] = t.value;
    }
  }
  op_norm_ = EstimateOpNorm(*this, power);
}

void MatrixCoupling::ApplyInto(std::span<const double> x,
                               std::span<double> out) const {
  if (dense_) {
    kernels::omp::DenseMatvec(dense(), x, out);
  } else {
    kernels::omp::CsrMatvec(csr(), x, out);
  }
}

void MatrixCoupling::ApplyAdjointInto(std::span<const double> y,
                                      std::span<double> out) const {
  if (dense_) {
    kernels::omp::DenseMatvecTranspose(dense(), y, out);
  } else {
    kernels::omp::CsrMatvecTranspose(csr_transposed(), y, out);
  }
}

kernels::CsrView MatrixCoupling::csr() const {
  return {static_cast<std::int64_t>(rows_), static_cast<std::int64_t>(cols_),
          row_ptr_, col_idx_, values_};
}

kernels::CsrView MatrixCoupling::csr_transposed() const {
  return {static_cast<std::int64_t>(cols_), static_cast<std::int64_t>(rows_),
          t_row_ptr_, t_col_idx_, t_values_};
}

kernels::DenseView MatrixCoupling::dense() const {
  return {static_cast<std::int64_t>(rows_), static_cast<std::int64_t>(cols_),
          dense_values_};
}

std::size_t SkewOperator::rows() const {
  return coupling_->rows() + coupling_->cols();
}

void SkewOperator::ApplyInto(std::span<const double> z,
                             std::span<double> out) const {
  const std::size_t n = coupling_->cols();
  const std::size_t m = coupling_->rows();
  coupling_->ApplyAdjointInto(z.subspan(n, m), out.subspan(0, n));
  for (std::size_t i = 0; i < n; ++i) out[i] = -out[i];
  coupling_->ApplyInto(z.subspan(0, n), out.subspan(n, m));
}

void SkewOperator::ApplyAdjointInto(std::span<const double> z,
                                    std::span<double> out) const {
  ApplyInto(z, out);
  for (double& v : out) v = -v;
}

SaddleProblem::SaddleProblem(std::shared_ptr<const ProxCapable> f,
                             std::shared_ptr<const ProxCapable> gstar,
                             std::shared_ptr<const LinearCoupling> coupling)
    : f_(std::move(f)),
      gstar_(std::move(gstar)),
      coupling_(std::move(coupling)) {
  if (!f_ || !gstar_ || !coupling_) {
    ThrowInvalidParameter("saddle problem members must be non-null");
  }
  n_ = coupling_->cols();
  m_ = coupling_->rows();
  if (f_->dim() != n_) ThrowDimensionMismatch("f", n_, f_->dim());
  if (gstar_->dim() != m_) ThrowDimensionMismatch("g*", m_, gstar_->dim());
}

double SaddleProblem::Objective(const PrimalDualPoint& z) const {
  CheckDimensions(z);
  return f_->Value(z.x) + gstar_->Value(z.y);
}

void SaddleProblem::CheckDimensions(const PrimalDualPoint& z) const {
  if (z.x.size() != n_) ThrowDimensionMismatch("primal block", n_, z.x.size());
  if (z.y.size() != m_) ThrowDimensionMismatch("dual block", m_, z.y.size());
}

PrimalDualPoint SaddleProblem::ProxF(const StepPair& tau,
                                     const PrimalDualPoint& z) const {
  CheckDimensions(z);
  PrimalDualPoint out = PrimalDualPoint::Zero(n_, m_);
  f_->ProxInto(tau.gamma_x(), z.x, out.x);
  gstar_->ProxInto(tau.gamma_y(), z.y, out.y);
  return out;
}

PrimalDualPoint ApplyM(const SaddleProblem& problem, const PrimalDualPoint& z) {
  problem.CheckDimensions(z);
  PrimalDualPoint out = PrimalDualPoint::Zero(problem.n(), problem.m());
  problem.coupling().ApplyAdjointInto(z.y, out.x);
  for (double& v : out.x) v = -v;
  problem.coupling().ApplyInto(z.x, out.y);
  return out;
}

double WeightedNormSq(const PrimalDualPoint& z, const SmoothingPair& w) {
  return w.beta_x() * kernels::omp::SquaredNorm(z.x) +
         w.beta_y() * kernels::omp::SquaredNorm(z.y);
}

double WeightedNormSq(const PrimalDualPoint& z, const StepPair& w) {
  return w.gamma_x() * kernels::omp::SquaredNorm(z.x) +
         w.gamma_y() * kernels::omp::SquaredNorm(z.y);
}

double InverseWeightedNormSq(const PrimalDualPoint& z, const StepPair& w) {
  return kernels::omp::SquaredNorm(z.x) / w.gamma_x() +
         kernels::omp::SquaredNorm(z.y) / w.gamma_y();
}

double Dot(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  return kernels::omp::Dot(a.x, b.x) + kernels::omp::Dot(a.y, b.y);
}

double SquaredNorm(const PrimalDualPoint& z) { return Dot(z, z); }

PrimalDualPoint Difference(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  PrimalDualPoint out = a;
  kernels::omp::Axpby(-1.0, b.x, 1.0, out.x);
  kernels::omp::Axpby(-1.0, b.y, 1.0, out.y);
  return out;
}

double Distance(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  return std::sqrt(SquaredNorm(Difference(a, b)));
}

}  // namespace scsdg
