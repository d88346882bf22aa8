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

// The self-centered smoothed duality gap
//
//   G_beta(z) = F(z) + F*_{beta,M}(z),
//   F*_{beta,M}(z) = sup_z' <Mz, z'> - F(z') - 1/2 ||z - z'||^2_beta.
//
// The supremum is attained at
//
//   zbar_beta(z) = prox_{beta^-1 F}(z + beta^-1 M z),
//
// i.e. xbar = prox_{f/beta_x}(x - A^T y / beta_x) and
//      ybar = prox_{g*/beta_y}(y + A x / beta_y),
// and the gradient of the smooth part is
//
//   grad F*_{beta,M}(z) = -M zbar + beta (zbar - z).
//
// G_beta is nonnegative and vanishes exactly at saddle points, for every
// beta > 0. F*_{beta,M} + 1/2 ||.||^2_beta is convex.

#ifndef SCSDG_SMOOTHED_GAP_HPP_
#define SCSDG_SMOOTHED_GAP_HPP_

#include <utility>

#include "scsdg/core.hpp"

namespace scsdg {

struct GapEvaluation {
  PrimalDualPoint zbar;
  // G_beta(z); +infinity when F(z) is.
  double gap = 0.0;
  // F*_{beta,M}(z); always finite.
  double smooth_part = 0.0;
  // grad F*_{beta,M}(z). Empty vectors when not requested.
  PrimalDualPoint grad;
};

PrimalDualPoint ComputeZbar(const SaddleProblem& problem,
                            const SmoothingPair& beta,
                            const PrimalDualPoint& z);

GapEvaluation EvaluateGap(const SaddleProblem& problem,
                          const SmoothingPair& beta, const PrimalDualPoint& z,
                          bool with_gradient = true);

inline double Gap(const SaddleProblem& problem, const SmoothingPair& beta,
                  const PrimalDualPoint& z) {
  return EvaluateGap(problem, beta, z, /*with_gradient=*/false).gap;
}

PrimalDualPoint GradSmooth(const SaddleProblem& problem,
                           const SmoothingPair& beta, const PrimalDualPoint& z);

// Lipschitz constant of grad F*_{beta,M} from ||.||_{gamma^-1} to
// ||.||_gamma:
//   max(bx gx + gx ||A||^2 / by, by gy + gy ||A||^2 / bx) + max(bx gx, by gy)
double LipschitzConstant(const SmoothingPair& beta, const StepPair& gamma,
                         double op_norm);

// (dG/dbeta_x, dG/dbeta_y) = (-1/2 ||x - xbar||^2, -1/2 ||y - ybar||^2).
std::pair<double, double> GapBetaSensitivity(const SaddleProblem& problem,
                                             const SmoothingPair& beta,
                                             const PrimalDualPoint& z);

// A point stored with its coupling products A x and A^T y. The solvers keep
// these up to date by linearity so that gap evaluations cost no extra
// matrix-vector products.
struct CoupledPoint {
  PrimalDualPoint z;
  Vector ax;
  Vector aty;

  static CoupledPoint From(const SaddleProblem& problem, PrimalDualPoint z);
  // this <- alpha * a + beta * this, products included.
  void Combine(double alpha, const CoupledPoint& a, double beta);
};

// zbar_beta(z) from cached products; no matrix-vector products.
PrimalDualPoint ZbarFromProducts(const SaddleProblem& problem,
                                 const SmoothingPair& beta,
                                 const CoupledPoint& point);

// G_beta(z) given zbar_beta(z); no matrix-vector products. Evaluated as
// [F(z) - F(zbar)] + <Mz, zbar - z> - 1/2 ||z - zbar||^2_beta, which uses
// <Mz, z> = 0 and avoids cancellation near saddle points.
double GapFromZbar(const SaddleProblem& problem, const SmoothingPair& beta,
                   const CoupledPoint& point, const PrimalDualPoint& zbar);

// grad F*_{beta,M}(z) given zbar_beta(z); two matrix-vector products.
PrimalDualPoint GradientFromZbar(const SaddleProblem& problem,
                                 const SmoothingPair& beta,
                                 const PrimalDualPoint& z,
                                 const PrimalDualPoint& zbar);

}  // namespace scsdg

#endif  // SCSDG_SMOOTHED_GAP_HPP_
