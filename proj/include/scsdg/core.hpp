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

// Problem representation for
//
//   min_x max_y  f(x) + <Ax, y> - g*(y)
//
// with x in R^n, y in R^m. Points are handled as concatenated pairs
// z = (x, y); F(z) = f(x) + g*(y) and M(z) = (-A^T y, Ax) is the skew
// operator coupling the two blocks.

#ifndef SCSDG_CORE_HPP_
#define SCSDG_CORE_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "scsdg/kernels.hpp"

namespace scsdg {

using Vector = std::vector<double>;

struct PrimalDualPoint {
  Vector x;
  Vector y;

  static PrimalDualPoint Zero(std::size_t n, std::size_t m) {
    return {Vector(n, 0.0), Vector(m, 0.0)};
  }
  bool AllFinite() const;
};

// beta = (beta_x, beta_y). Both strictly positive.
class SmoothingPair {
 public:
  SmoothingPair(double beta_x, double beta_y);
  static SmoothingPair Uniform(double beta) { return {beta, beta}; }

  double beta_x() const { return beta_x_; }
  double beta_y() const { return beta_y_; }
  bool operator==(const SmoothingPair&) const = default;

 private:
  double beta_x_;
  double beta_y_;
};

// gamma = (gamma_x, gamma_y). Both strictly positive.
class StepPair {
 public:
  StepPair(double gamma_x, double gamma_y);
  static StepPair Uniform(double gamma) { return {gamma, gamma}; }

  double gamma_x() const { return gamma_x_; }
  double gamma_y() const { return gamma_y_; }
  bool operator==(const StepPair&) const = default;

 private:
  double gamma_x_;
  double gamma_y_;
};

// A closed convex function with an inexpensive proximal operator.
class ProxCapable {
 public:
  virtual ~ProxCapable() = default;

  virtual std::size_t dim() const = 0;
  // out <- argmin_w h(w) + ||w - v||^2 / (2 tau). out may alias v.
  virtual void ProxInto(double tau, std::span<const double> v,
                        std::span<double> out) const = 0;
  // h(v); +infinity outside the domain.
  virtual double Value(std::span<const double> v) const = 0;
  // h(a) - h(b) for b in the domain. Implementations with a linear part
  // override this to difference the arguments first, which keeps the result
  // accurate when a and b are close.
  virtual double ValueDifference(std::span<const double> a,
                                 std::span<const double> b) const;

  Vector Prox(double tau, std::span<const double> v) const;
};

// The linear operator A : R^n -> R^m together with its adjoint and a cached
// estimate of the spectral norm.
class LinearCoupling {
 public:
  virtual ~LinearCoupling() = default;

  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  // out <- A x
  virtual void ApplyInto(std::span<const double> x,
                         std::span<double> out) const = 0;
  // out <- A^T y
  virtual void ApplyAdjointInto(std::span<const double> y,
                                std::span<double> out) const = 0;
  virtual double op_norm() const = 0;

  Vector Apply(std::span<const double> x) const;
  Vector ApplyAdjoint(std::span<const double> y) const;
};

struct PowerIterationOptions {
  int max_iters = 200;
  double tol = 1e-9;
  std::uint64_t seed = 42;
};

// sqrt of the dominant eigenvalue of A^T A by power iteration from a seeded
// Gaussian start. Deterministic for a given seed; 0 for the zero operator.
double EstimateOpNorm(const LinearCoupling& coupling,
                      const PowerIterationOptions& options = {});

struct Triplet {
  std::int64_t row = 0;
  std::int64_t col = 0;
  double value = 0.0;

  bool operator==(const Triplet&) const = default;
};

// Matrix-backed coupling. Dense row-major storage when rows * cols is at
// most kDenseThreshold (or when forced), CSR plus a CSR copy of A^T
// otherwise. Duplicate triplets are summed.
class MatrixCoupling final : public LinearCoupling {
 public:
  enum class Storage { kAuto, kDense, kSparse };
  static constexpr std::int64_t kDenseThreshold = 10000;

  MatrixCoupling(std::size_t rows, std::size_t cols,
                 std::span<const Triplet> triplets,
                 Storage storage = Storage::kAuto,
                 const PowerIterationOptions& power = {});

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  void ApplyInto(std::span<const double> x,
                 std::span<double> out) const override;
  void ApplyAdjointInto(std::span<const double> y,
                        std::span<double> out) const override;
  double op_norm() const override { return op_norm_; }

  bool is_dense() const { return dense_; }
  std::size_t nnz() const { return nnz_; }
  kernels::CsrView csr() const;
  kernels::CsrView csr_transposed() const;
  kernels::DenseView dense() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  bool dense_;
  std::size_t nnz_ = 0;
  Vector dense_values_;
  std::vector<std::int64_t> row_ptr_, t_row_ptr_;
  std::vector<std::int32_t> col_idx_, t_col_idx_;
  Vector values_, t_values_;
  double op_norm_ = 0.0;
};

// M viewed as a square operator on R^(n+m); its adjoint is -M. Used to
// check ||M|| = ||A|| numerically.
class SkewOperator final : public LinearCoupling {
 public:
  explicit SkewOperator(std::shared_ptr<const LinearCoupling> coupling)
      : coupling_(std::move(coupling)) {}

  std::size_t rows() const override;
  std::size_t cols() const override { return rows(); }
  void ApplyInto(std::span<const double> z,
                 std::span<double> out) const override;
  void ApplyAdjointInto(std::span<const double> z,
                        std::span<double> out) const override;
  double op_norm() const override { return coupling_->op_norm(); }

 private:
  std::shared_ptr<const LinearCoupling> coupling_;
};

class SaddleProblem {
 public:
  SaddleProblem(std::shared_ptr<const ProxCapable> f,
                std::shared_ptr<const ProxCapable> gstar,
                std::shared_ptr<const LinearCoupling> coupling);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const ProxCapable& f() const { return *f_; }
  const ProxCapable& gstar() const { return *gstar_; }
  const LinearCoupling& coupling() const { return *coupling_; }
  std::shared_ptr<const LinearCoupling> coupling_ptr() const {
    return coupling_;
  }
  double op_norm() const { return coupling_->op_norm(); }

  // F(z) = f(x) + g*(y).
  double Objective(const PrimalDualPoint& z) const;
  // Throws kDimensionMismatch when z does not live in R^n x R^m.
  void CheckDimensions(const PrimalDualPoint& z) const;
  // prox_{tau F}(z) with per-block step tau = (tau_x, tau_y).
  PrimalDualPoint ProxF(const StepPair& tau, const PrimalDualPoint& z) const;

 private:
  std::shared_ptr<const ProxCapable> f_;
  std::shared_ptr<const ProxCapable> gstar_;
  std::shared_ptr<const LinearCoupling> coupling_;
  std::size_t n_;
  std::size_t m_;
};

// M(z) = (-A^T y, Ax).
PrimalDualPoint ApplyM(const SaddleProblem& problem, const PrimalDualPoint& z);

// w_x ||x||^2 + w_y ||y||^2.
double WeightedNormSq(const PrimalDualPoint& z, const SmoothingPair& w);
double WeightedNormSq(const PrimalDualPoint& z, const StepPair& w);
// ||x||^2 / gamma_x + ||y||^2 / gamma_y.
double InverseWeightedNormSq(const PrimalDualPoint& z, const StepPair& w);

double Dot(const PrimalDualPoint& a, const PrimalDualPoint& b);
double SquaredNorm(const PrimalDualPoint& z);
PrimalDualPoint Difference(const PrimalDualPoint& a, const PrimalDualPoint& b);
double Distance(const PrimalDualPoint& a, const PrimalDualPoint& b);

}  // namespace scsdg

#endif  // SCSDG_CORE_HPP_
