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

#include "scsdg/algorithms.hpp"

#include <cmath>
#include <limits>

#include "run_monitor.hpp"
#include "scsdg/error.hpp"
#include "scsdg/smoothed_gap.hpp"

namespace scsdg {

const char* ToString(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kConverged:
      return "converged";
    case TerminationReason::kIterationLimit:
      return "iteration_limit";
    case TerminationReason::kObserverStop:
      return "observer_stop";
  }
  return "?";
}

SmoothingPair ReportingBeta(double op_norm) {
  return SmoothingPair::Uniform(op_norm > 0.0 ? 0.05 * op_norm : 0.05);
}

namespace internal {

// Start point inside dom F. Points outside are mapped by one prox step.
PrimalDualPoint PrepareStart(const SaddleProblem& problem,
                             const PrimalDualPoint& z0) {
  problem.CheckDimensions(z0);
  if (!z0.AllFinite()) ThrowInvalidParameter("start point must be finite");
  if (std::isfinite(problem.Objective(z0))) return z0;
  return problem.ProxF(StepPair::Uniform(1.0), z0);
}

double GapAt(const SaddleProblem& problem, const SmoothingPair& beta,
             const CoupledPoint& point) {
  return GapFromZbar(problem, beta, point, ZbarFromProducts(problem, beta, point));
}

}  // namespace internal

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void RequirePositiveNorm(double op_norm) {
  if (!(op_norm > 0.0)) {
    ThrowInvalidParameter(
        "smoothing schedules need ||A|| > 0; the problem decouples");
  }
}

double ProxGradBeta0(const ProxGradParams& params, double op_norm) {
  if (params.beta0) return *params.beta0;
  return op_norm / std::sqrt(params.b) *
         std::sqrt(params.p_prime / (params.b + params.p_prime));
}

// Shared loop of the accelerated method; restart_factor unset runs it
// without restarts.
SolveResult RunAcceleratedImpl(const SaddleProblem& problem,
                               const PrimalDualPoint& z0,
                               const AcceleratedParams& params,
                               std::optional<double> restart_factor,
                               const IterationObserver& observer) {
  const double op_norm = problem.op_norm();
  ValidateAcceleratedParams(params, op_norm);
  if (restart_factor && !(*restart_factor > 0.0 && *restart_factor < 1.0)) {
    ThrowInvalidParameter("restart factor must lie in (0, 1)");
  }
  const SolverControls& controls = params.controls;
  internal::RunMonitor monitor(controls, observer);

  const SmoothingPair beta0 = ResolveAcceleratedBeta0(params, op_norm);
  const SmoothingPair merit = controls.merit_beta.value_or(beta0);
  const bool merit_is_beta0 = merit == beta0;

  CoupledPoint z = CoupledPoint::From(problem, internal::PrepareStart(problem, z0));
  CoupledPoint anchor = z;
  CoupledPoint extrap = z;
  PrimalDualPoint previous = z.z;

  const double initial_gap = internal::GapAt(problem, beta0, z);
  int epoch = 0;
  std::int64_t epoch_start = 0;

  for (std::int64_t k = 0;; ++k) {
    ConvergenceRecord record;
    record.iter = k;
    record.step_norm = k == 0 ? 0.0 : Distance(z.z, previous);
    record.gap_beta0 = kNaN;
    record.gap_betak = kNaN;

    if (monitor.ShouldEvaluate(k)) {
      const double own_gap = internal::GapAt(problem, beta0, z);
      if (restart_factor) {
        double threshold = initial_gap * std::pow(*restart_factor, epoch + 1);
        while (own_gap <= threshold && threshold > 0.0) {
          ++epoch;
          record.restarted = true;
          threshold *= *restart_factor;
        }
        if (record.restarted) {
          anchor = z;
          epoch_start = k;
        }
      }
      const AcceleratedSchedule sched = ScheduleAccelerated(k - epoch_start, params, op_norm);
      record.gap_beta0 = merit_is_beta0 ? own_gap : internal::GapAt(problem, merit, z);
      record.gap_betak = internal::GapAt(problem, sched.beta, z);
    }
    record.epoch = epoch;
    if (controls.iterate_hook) controls.iterate_hook({k, z.z, &anchor.z});
    if (monitor.Record(record)) break;

    const AcceleratedSchedule sched = ScheduleAccelerated(k - epoch_start, params, op_norm);
    const double theta = sched.theta;

    // extrap = (1 - theta) z + theta anchor
    extrap = anchor;
    extrap.Combine(1.0 - theta, z, theta);
    const PrimalDualPoint zbar = ZbarFromProducts(problem, sched.beta, extrap);
    const PrimalDualPoint grad =
        GradientFromZbar(problem, sched.beta, extrap.z, zbar);

    const StepPair step(sched.gamma.gamma_x() / theta,
                        sched.gamma.gamma_y() / theta);
    PrimalDualPoint moved = anchor.z;
    kernels::omp::Axpby(-step.gamma_x(), grad.x, 1.0, moved.x);
    kernels::omp::Axpby(-step.gamma_y(), grad.y, 1.0, moved.y);
    anchor = CoupledPoint::From(problem, problem.ProxF(step, moved));

    previous = z.z;
    z.Combine(theta, anchor, 1.0 - theta);
  }
  return monitor.Finish(std::move(z.z));
}

}  // namespace

ProxGradSchedule ScheduleProxGrad(std::int64_t k, const ProxGradParams& params,
                          double op_norm) {
  RequirePositiveNorm(op_norm);
  if (k < 0) ThrowInvalidParameter("iteration index must be >= 0");
  if (!(params.p_prime > 0.0 && params.p_prime < 1.0)) {
    ThrowInvalidParameter("p' must lie in (0, 1)");
  }
  if (!(params.b > 0.0)) ThrowInvalidParameter("b must be positive");
  const double beta0 = ProxGradBeta0(params, op_norm);
  const double beta =
      params.freeze_smoothing
          ? beta0
          : beta0 * std::sqrt(params.b / (static_cast<double>(k) + params.b));
  const double gamma = beta / (op_norm * op_norm + 2.0 * beta * beta);
  return {SmoothingPair::Uniform(beta), StepPair::Uniform(gamma)};
}

SolveResult RunProxGrad(const SaddleProblem& problem, const PrimalDualPoint& z0,
                        const ProxGradParams& params,
                        const IterationObserver& observer) {
  const double op_norm = problem.op_norm();
  const ProxGradSchedule first = ScheduleProxGrad(0, params, op_norm);
  const SolverControls& controls = params.controls;
  internal::RunMonitor monitor(controls, observer);
  const SmoothingPair merit = controls.merit_beta.value_or(first.beta);

  CoupledPoint z = CoupledPoint::From(problem, internal::PrepareStart(problem, z0));
  PrimalDualPoint previous = z.z;

  for (std::int64_t k = 0;; ++k) {
    const ProxGradSchedule sched = ScheduleProxGrad(k, params, op_norm);
    const PrimalDualPoint zbar = ZbarFromProducts(problem, sched.beta, z);

    ConvergenceRecord record;
    record.iter = k;
    record.step_norm = k == 0 ? 0.0 : Distance(z.z, previous);
    record.gap_beta0 = kNaN;
    record.gap_betak = kNaN;
    if (monitor.ShouldEvaluate(k)) {
      record.gap_betak = GapFromZbar(problem, sched.beta, z, zbar);
      record.gap_beta0 = merit == sched.beta ? record.gap_betak
                                             : internal::GapAt(problem, merit, z);
    }
    if (controls.iterate_hook) controls.iterate_hook({k, z.z, nullptr});
    if (monitor.Record(record)) break;

    const PrimalDualPoint grad = GradientFromZbar(problem, sched.beta, z.z, zbar);
    PrimalDualPoint moved = z.z;
    kernels::omp::Axpby(-sched.gamma.gamma_x(), grad.x, 1.0, moved.x);
    kernels::omp::Axpby(-sched.gamma.gamma_y(), grad.y, 1.0, moved.y);
    previous = z.z;
    z = CoupledPoint::From(problem, problem.ProxF(sched.gamma, moved));
  }
  return monitor.Finish(std::move(z.z));
}

SmoothingPair ResolveAcceleratedBeta0(const AcceleratedParams& params, double op_norm) {
  // beta^2 b^2 / (t ||M||^2) = cbar  =>  beta = ||M|| sqrt(cbar t) / b
  const double fallback = op_norm * std::sqrt(params.default_cbar * params.t) / params.b;
  return {params.beta_x0.value_or(fallback), params.beta_y0.value_or(fallback)};
}

double AcceleratedCBar(const AcceleratedParams& params, double op_norm) {
  const SmoothingPair beta0 = ResolveAcceleratedBeta0(params, op_norm);
  return beta0.beta_x() * beta0.beta_y() * params.b * params.b /
         (params.t * op_norm * op_norm);
}

void ValidateAcceleratedParams(const AcceleratedParams& params, double op_norm) {
  RequirePositiveNorm(op_norm);
  if (!(params.t >= 2.0)) ThrowInvalidParameter("t must be >= 2");
  if (!(params.b >= params.t)) ThrowInvalidParameter("b must be >= t");
  if (!(params.default_cbar > 0.0 && params.default_cbar < 1.0)) {
    ThrowInvalidParameter("default cbar must lie in (0, 1)");
  }
  const double cbar = AcceleratedCBar(params, op_norm);
  if (!(cbar < 1.0)) {
    ThrowInvalidParameter("cbar = beta_x0 beta_y0 b^2 / (t ||M||^2) = " +
                          std::to_string(cbar) + " must be < 1");
  }
}

AcceleratedSchedule ScheduleAccelerated(std::int64_t k, const AcceleratedParams& params,
                          double op_norm) {
  RequirePositiveNorm(op_norm);
  if (k < 0) ThrowInvalidParameter("iteration index must be >= 0");
  const SmoothingPair beta0 = ResolveAcceleratedBeta0(params, op_norm);
  const double kd = static_cast<double>(k);
  const double theta = params.t / (kd + params.t);
  const double ratio = params.b / (kd + params.b);
  const double bx = beta0.beta_x() * ratio;
  const double by = beta0.beta_y() * ratio;
  const double denom = 2.0 * bx * by + op_norm * op_norm;
  return {theta, SmoothingPair(bx, by), StepPair(by / denom, bx / denom)};
}

SolveResult RunAccelerated(const SaddleProblem& problem,
                           const PrimalDualPoint& z0, const AcceleratedParams& params,
                           const IterationObserver& observer) {
  return RunAcceleratedImpl(problem, z0, params, std::nullopt, observer);
}

SolveResult RunRestarted(const SaddleProblem& problem,
                         const PrimalDualPoint& z0, const RestartedParams& params,
                         const IterationObserver& observer) {
  return RunAcceleratedImpl(problem, z0, params.inner, params.restart_factor,
                            observer);
}

}  // namespace scsdg
