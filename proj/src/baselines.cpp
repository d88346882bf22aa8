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

#include "scsdg/baselines.hpp"

#include <cmath>
#include <limits>

#include "run_monitor.hpp"
#include "scsdg/error.hpp"
#include "scsdg/smoothed_gap.hpp"

namespace scsdg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One PDHG step on `point`, products included. Two matrix-vector products.
void PdhgStep(const SaddleProblem& problem, double tau, double sigma,
              CoupledPoint& point) {
  const std::size_t n = problem.n();
  const std::size_t m = problem.m();
  Vector x_next(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_next[i] = point.z.x[i] - tau * point.aty[i];
  }
  problem.f().ProxInto(tau, x_next, x_next);
  Vector ax_next(m);
  problem.coupling().ApplyInto(x_next, ax_next);

  Vector y_next(m);
  for (std::size_t j = 0; j < m; ++j) {
    y_next[j] = point.z.y[j] + sigma * (2.0 * ax_next[j] - point.ax[j]);
  }
  problem.gstar().ProxInto(sigma, y_next, y_next);
  problem.coupling().ApplyAdjointInto(y_next, point.aty);

  point.z.x = std::move(x_next);
  point.z.y = std::move(y_next);
  point.ax = std::move(ax_next);
}

}  // namespace

std::pair<double, double> ResolvePdhgSteps(const PdhgParams& params,
                                           double op_norm) {
  const double fallback = op_norm > 0.0 ? 1.0 / op_norm : 1.0;
  const double tau = params.tau.value_or(fallback);
  const double sigma = params.sigma.value_or(fallback);
  if (!(tau > 0.0) || !(sigma > 0.0)) {
    ThrowInvalidParameter("PDHG steps must be positive");
  }
  // Relative slack for the rounding in tau = sigma = 1 / ||A||.
  if (tau * sigma * op_norm * op_norm > 1.0 + 1e-12) {
    ThrowInvalidParameter("PDHG steps violate tau sigma ||A||^2 <= 1");
  }
  return {tau, sigma};
}

SolveResult RunPdhg(const SaddleProblem& problem, const PrimalDualPoint& z0,
                    const PdhgParams& params, const IterationObserver& observer) {
  const auto [tau, sigma] = ResolvePdhgSteps(params, problem.op_norm());
  const SolverControls& controls = params.controls;
  internal::RunMonitor monitor(controls, observer);
  const SmoothingPair merit =
      controls.merit_beta.value_or(ReportingBeta(problem.op_norm()));

  CoupledPoint z = CoupledPoint::From(problem, internal::PrepareStart(problem, z0));
  PrimalDualPoint previous = z.z;
  for (std::int64_t k = 0;; ++k) {
    ConvergenceRecord record;
    record.iter = k;
    record.step_norm = k == 0 ? 0.0 : Distance(z.z, previous);
    record.gap_beta0 = kNaN;
    if (monitor.ShouldEvaluate(k)) {
      record.gap_beta0 = internal::GapAt(problem, merit, z);
    }
    record.gap_betak = record.gap_beta0;
    if (controls.iterate_hook) controls.iterate_hook({k, z.z, nullptr});
    if (monitor.Record(record)) break;

    previous = z.z;
    PdhgStep(problem, tau, sigma, z);
  }
  return monitor.Finish(std::move(z.z));
}

SolveResult RunRapdhg(const SaddleProblem& problem, const PrimalDualPoint& z0,
                      const RapdhgParams& params,
                      const IterationObserver& observer) {
  const auto [tau, sigma] = ResolvePdhgSteps(params.pdhg, problem.op_norm());
  if (!(params.restart_factor > 0.0 && params.restart_factor <= 1.0)) {
    ThrowInvalidParameter("restart factor must lie in (0, 1]");
  }
  const SolverControls& controls = params.pdhg.controls;
  internal::RunMonitor monitor(controls, observer);
  const SmoothingPair merit =
      controls.merit_beta.value_or(ReportingBeta(problem.op_norm()));

  CoupledPoint iterate =
      CoupledPoint::From(problem, internal::PrepareStart(problem, z0));
  CoupledPoint average = iterate;
  std::int64_t count = 0;  // iterates averaged in the current epoch
  double start_gap = internal::GapAt(problem, merit, iterate);
  int epoch = 0;
  PrimalDualPoint previous = average.z;

  for (std::int64_t k = 0;; ++k) {
    ConvergenceRecord record;
    record.iter = k;
    record.step_norm = k == 0 ? 0.0 : Distance(average.z, previous);
    record.gap_beta0 = kNaN;
    if (monitor.ShouldEvaluate(k)) {
      const double gap = count == 0 ? start_gap
                                    : internal::GapAt(problem, merit, average);
      if (count > 0 && gap <= params.restart_factor * start_gap) {
        iterate = average;
        count = 0;
        start_gap = gap;
        ++epoch;
        record.restarted = true;
      }
      record.gap_beta0 = gap;
    }
    record.gap_betak = record.gap_beta0;
    record.epoch = epoch;
    if (controls.iterate_hook) controls.iterate_hook({k, average.z, nullptr});
    if (monitor.Record(record)) break;

    previous = average.z;
    PdhgStep(problem, tau, sigma, iterate);
    ++count;
    // average <- average + (iterate - average) / count
    const double weight = 1.0 / static_cast<double>(count);
    average.Combine(weight, iterate, 1.0 - weight);
  }
  return monitor.Finish(std::move(average.z));
}

}  // namespace scsdg
