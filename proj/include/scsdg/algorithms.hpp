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

// Minimization of the self-centered smoothed gap G_beta = F + F*_{beta,M}
// by proximal gradient methods with a vanishing smoothing schedule.
//
//   RunProxGrad     z+ = prox_{gamma_k F}(z - gamma_k grad F*_{beta_k,M}(z))
//   RunAccelerated  accelerated variant with theta_k = t / (k + t)
//   RunRestarted    accelerated variant restarted each time G_{beta_0}
//                   halves relative to its initial value

#ifndef SCSDG_ALGORITHMS_HPP_
#define SCSDG_ALGORITHMS_HPP_

#include <cstdint>
#include <optional>

#include "scsdg/core.hpp"
#include "scsdg/solver.hpp"

namespace scsdg {

struct ProxGradParams {
  // Exponent p' in (0, 1) trading rate for the size of the constant.
  double p_prime = 0.05;
  double b = 4.45;
  // Unset: ||M|| sqrt(p' / (b + p')) / sqrt(b), the k = 0 value of the
  // schedule below.
  std::optional<double> beta0;
  // Keep beta_k = beta_0 (and gamma_k = gamma_0) for every k. Diagnostic.
  bool freeze_smoothing = false;
  SolverControls controls;
};

struct ProxGradSchedule {
  SmoothingPair beta;
  StepPair gamma;
};

// beta_k = beta_0 sqrt(b / (k + b)) on both blocks, which with the default
// beta_0 equals ||M|| / sqrt(k + b) * sqrt(p' / (b + p')), and
// gamma_k = 1 / L_{beta_k,1} = beta_k / (||M||^2 + 2 beta_k^2).
// Throws kInvalidParameter when op_norm is 0.
ProxGradSchedule ScheduleProxGrad(std::int64_t k, const ProxGradParams& params,
                          double op_norm);

SolveResult RunProxGrad(const SaddleProblem& problem,
                        const PrimalDualPoint& z0, const ProxGradParams& params,
                        const IterationObserver& observer = {});

struct AcceleratedParams {
  double t = 2.0;
  double b = 4.0;
  // Unset: the largest equal pair with cbar = default_cbar.
  std::optional<double> beta_x0;
  std::optional<double> beta_y0;
  double default_cbar = 0.5;
  SolverControls controls;
};

struct AcceleratedSchedule {
  double theta;
  SmoothingPair beta;
  StepPair gamma;
};

// beta_0 after applying defaults.
SmoothingPair ResolveAcceleratedBeta0(const AcceleratedParams& params, double op_norm);
// cbar = beta_x0 beta_y0 b^2 / (t ||M||^2).
double AcceleratedCBar(const AcceleratedParams& params, double op_norm);
// Throws kInvalidParameter unless b >= t >= 2, cbar < 1 and op_norm > 0.
void ValidateAcceleratedParams(const AcceleratedParams& params, double op_norm);

// theta_k = t / (k + t), beta_k = beta_0 b / (k + b),
// gamma_x = beta_y / (2 beta_x beta_y + ||A||^2),
// gamma_y = beta_x / (2 beta_x beta_y + ||A||^2).
AcceleratedSchedule ScheduleAccelerated(std::int64_t k, const AcceleratedParams& params,
                          double op_norm);

SolveResult RunAccelerated(const SaddleProblem& problem,
                           const PrimalDualPoint& z0, const AcceleratedParams& params,
                           const IterationObserver& observer = {});

struct RestartedParams {
  AcceleratedParams inner;
  // Restart number s fires once G_{beta_0}(z_k) <= factor^(s+1) G_{beta_0}(z_0).
  double restart_factor = 0.5;
};

SolveResult RunRestarted(const SaddleProblem& problem,
                         const PrimalDualPoint& z0, const RestartedParams& params,
                         const IterationObserver& observer = {});

}  // namespace scsdg

#endif  // SCSDG_ALGORITHMS_HPP_
