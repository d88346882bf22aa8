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

// Primal-dual hybrid gradient (Chambolle-Pock) and a restarted, averaged
// variant, reporting the same convergence records as the gap minimizers.

#ifndef SCSDG_BASELINES_HPP_
#define SCSDG_BASELINES_HPP_

#include <optional>

#include "scsdg/core.hpp"
#include "scsdg/solver.hpp"

namespace scsdg {

struct PdhgParams {
  // Unset: 1 / ||A|| (1 for a zero coupling).
  std::optional<double> tau;
  std::optional<double> sigma;
  SolverControls controls;
};

struct RapdhgParams {
  PdhgParams pdhg;
  // Restart from the epoch average once G(average) <= factor G(epoch start).
  double restart_factor = 0.5;
};

// Resolved (tau, sigma); throws kInvalidParameter when
// tau sigma ||A||^2 > 1.
std::pair<double, double> ResolvePdhgSteps(const PdhgParams& params,
                                           double op_norm);

// x+ = prox_{tau f}(x - tau A^T y)
// y+ = prox_{sigma g*}(y + sigma A (2 x+ - x))
SolveResult RunPdhg(const SaddleProblem& problem, const PrimalDualPoint& z0,
                    const PdhgParams& params,
                    const IterationObserver& observer = {});

// Records report the epoch average, which is also the returned point.
SolveResult RunRapdhg(const SaddleProblem& problem, const PrimalDualPoint& z0,
                      const RapdhgParams& params,
                      const IterationObserver& observer = {});

}  // namespace scsdg

#endif  // SCSDG_BASELINES_HPP_
