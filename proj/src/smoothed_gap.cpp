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

#include "scsdg/smoothed_gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scsdg/error.hpp"

namespace scsdg {
namespace {

namespace k = kernels::omp;

// sum_i a_i (b_i - c_i)
double DotDifference(std::span<const double> a, std::span<const double> b,
                     std::span<const double> c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * (b[i] - c[i]);
  return sum;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

CoupledPoint CoupledPoint::From(const SaddleProblem& problem,
                                PrimalDualPoint z) {
  problem.CheckDimensions(z);
  CoupledPoint out{std::move(z), Vector(problem.m()), Vector(problem.n())};
  problem.coupling().ApplyInto(out.z.x, out.ax);
  problem.coupling().ApplyAdjointInto(out.z.y, out.aty);
  return out;
}

void CoupledPoint::Combine(double alpha, const CoupledPoint& a, double beta) {
  k::Axpby(alpha, a.z.x, beta, z.x);
  k::Axpby(alpha, a.z.y, beta, z.y);
  k::Axpby(alpha, a.ax, beta, ax);
  k::Axpby(alpha, a.aty, beta, aty);
}

PrimalDualPoint ZbarFromProducts(const SaddleProblem& problem,
                                 const SmoothingPair& beta,
                                 const CoupledPoint& point) {
  const std::size_t n = problem.n();
  const std::size_t m = problem.m();
  PrimalDualPoint zbar = PrimalDualPoint::Zero(n, m);
  const double inv_bx = 1.0 / beta.beta_x();
  const double inv_by = 1.0 / beta.beta_y();
  for (std::size_t i = 0; i < n; ++i) {
    zbar.x[i] = point.z.x[i] - inv_bx * point.aty[i];
  }
  for (std::size_t j = 0; j < m; ++j) {
    zbar.y[j] = point.z.y[j] + inv_by * point.ax[j];
  }
  problem.f().ProxInto(inv_bx, zbar.x, zbar.x);
  problem.gstar().ProxInto(inv_by, zbar.y, zbar.y);
  return zbar;
}

double GapFromZbar(const SaddleProblem& problem, const SmoothingPair& beta,
                   const CoupledPoint& point, const PrimalDualPoint& zbar) {
  const PrimalDualPoint& z = point.z;
  const double f_diff = problem.f().ValueDifference(z.x, zbar.x);
  const double g_diff = problem.gstar().ValueDifference(z.y, zbar.y);
  if (std::isinf(f_diff) || std::isinf(g_diff)) {
    return std::numeric_limits<double>::infinity();
  }
  // <Mz, zbar - z> = -<A^T y, xbar - x> + <A x, ybar - y>
  const double coupling =
      -DotDifference(point.aty, zbar.x, z.x) + DotDifference(point.ax, zbar.y, z.y);
  const double quad = 0.5 * (beta.beta_x() * SquaredDistance(z.x, zbar.x) +
                             beta.beta_y() * SquaredDistance(z.y, zbar.y));
  return f_diff + g_diff + coupling - quad;
}

PrimalDualPoint GradientFromZbar(const SaddleProblem& problem,
                                 const SmoothingPair& beta,
                                 const PrimalDualPoint& z,
                                 const PrimalDualPoint& zbar) {
  PrimalDualPoint grad = PrimalDualPoint::Zero(problem.n(), problem.m());
  problem.coupling().ApplyAdjointInto(zbar.y, grad.x);
  problem.coupling().ApplyInto(zbar.x, grad.y);
  for (std::size_t i = 0; i < grad.x.size(); ++i) {
    grad.x[i] += beta.beta_x() * (zbar.x[i] - z.x[i]);
  }
  for (std::size_t j = 0; j < grad.y.size(); ++j) {
    grad.y[j] = -grad.y[j] + beta.beta_y() * (zbar.y[j] - z.y[j]);
  }
  return grad;
}

PrimalDualPoint ComputeZbar(const SaddleProblem& problem,
                            const SmoothingPair& beta,
                            const PrimalDualPoint& z) {
  return ZbarFromProducts(problem, beta, CoupledPoint::From(problem, z));
}

GapEvaluation EvaluateGap(const SaddleProblem& problem,
                          const SmoothingPair& beta, const PrimalDualPoint& z,
                          bool with_gradient) {
  const CoupledPoint point = CoupledPoint::From(problem, z);
  GapEvaluation out;
  out.zbar = ZbarFromProducts(problem, beta, point);
  out.gap = GapFromZbar(problem, beta, point, out.zbar);

  const double quad =
      0.5 * (beta.beta_x() * SquaredDistance(z.x, out.zbar.x) +
             beta.beta_y() * SquaredDistance(z.y, out.zbar.y));
  const double m_dot = -k::Dot(point.aty, out.zbar.x) + k::Dot(point.ax, out.zbar.y);
  out.smooth_part = -problem.Objective(out.zbar) + m_dot - quad;

  if (with_gradient) out.grad = GradientFromZbar(problem, beta, z, out.zbar);
  return out;
}

PrimalDualPoint GradSmooth(const SaddleProblem& problem,
                           const SmoothingPair& beta, const PrimalDualPoint& z) {
  return EvaluateGap(problem, beta, z, /*with_gradient=*/true).grad;
}

double LipschitzConstant(const SmoothingPair& beta, const StepPair& gamma,
                         double op_norm) {
  if (!(op_norm >= 0.0)) ThrowInvalidParameter("operator norm must be >= 0");
  const double a2 = op_norm * op_norm;
  const double bx_gx = beta.beta_x() * gamma.gamma_x();
  const double by_gy = beta.beta_y() * gamma.gamma_y();
  return std::max(bx_gx + gamma.gamma_x() / beta.beta_y() * a2,
                  by_gy + gamma.gamma_y() / beta.beta_x() * a2) +
         std::max(bx_gx, by_gy);
}

std::pair<double, double> GapBetaSensitivity(const SaddleProblem& problem,
                                             const SmoothingPair& beta,
                                             const PrimalDualPoint& z) {
  const PrimalDualPoint zbar = ComputeZbar(problem, beta, z);
  return {-0.5 * SquaredDistance(z.x, zbar.x),
          -0.5 * SquaredDistance(z.y, zbar.y)};
}

}  // namespace scsdg
