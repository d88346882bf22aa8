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

// Types shared by every iterative solver: run controls, per-iteration
// records, the observer hook and the result.

#ifndef SCSDG_SOLVER_HPP_
#define SCSDG_SOLVER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "scsdg/core.hpp"

namespace scsdg {

struct ConvergenceRecord {
  std::int64_t iter = 0;
  double elapsed = 0.0;  // seconds since the solver started
  // G at the run's merit smoothing (see SolverControls::merit_beta). NaN on
  // iterations skipped by gap_stride.
  double gap_beta0 = 0.0;
  // G at the smoothing the iteration itself uses (beta_k); equal to
  // gap_beta0 for solvers without a smoothing schedule.
  double gap_betak = 0.0;
  // ||z_k - z_{k-1}|| of the reported point; 0 at k = 0.
  double step_norm = 0.0;
  bool restarted = false;
  int epoch = 0;
};

enum class ObserverSignal { kContinue, kStop };

// Invoked synchronously once per record. Must not touch solver state.
using IterationObserver = std::function<ObserverSignal(const ConvergenceRecord&)>;

// Diagnostic view of the iterate behind record `iter`. `anchor` is the
// auxiliary sequence of the accelerated methods and null elsewhere.
struct IterateView {
  std::int64_t iter;
  const PrimalDualPoint& z;
  const PrimalDualPoint* anchor;
};
using IterateHook = std::function<void(const IterateView&)>;

enum class TerminationReason { kConverged, kIterationLimit, kObserverStop };
const char* ToString(TerminationReason reason);

struct SolverControls {
  std::int64_t max_iters = 10000;
  // Stop once gap_beta0 <= tol.
  double tol = 1e-6;
  // Gaps (and restart tests) are evaluated every gap_stride iterations, and
  // always at the first and last iteration.
  int gap_stride = 1;
  // Smoothing used for gap_beta0 and the stopping test. Unset: the
  // solver's own beta_0 (ReportingBeta for the PDHG baselines).
  std::optional<SmoothingPair> merit_beta;
  // Called with every recorded iterate; meant for tests and diagnostics.
  IterateHook iterate_hook;
};

struct SolveResult {
  PrimalDualPoint z;
  std::vector<ConvergenceRecord> history;
  TerminationReason reason = TerminationReason::kIterationLimit;
  std::int64_t iterations = 0;
  // Last evaluated gap_beta0.
  double final_gap = 0.0;
};

// Shared smoothing used to compare solvers: 0.05 * (||A||, ||A||), or
// (0.05, 0.05) for a zero coupling.
SmoothingPair ReportingBeta(double op_norm);

}  // namespace scsdg

#endif  // SCSDG_SOLVER_HPP_
