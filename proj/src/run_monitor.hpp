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

#ifndef SCSDG_SRC_RUN_MONITOR_HPP_
#define SCSDG_SRC_RUN_MONITOR_HPP_

#include <chrono>
#include <cmath>
#include <optional>

#include "scsdg/error.hpp"
#include "scsdg/smoothed_gap.hpp"
#include "scsdg/solver.hpp"

namespace scsdg::internal {

// Start point inside dom F. Points outside are mapped by one prox step.
PrimalDualPoint PrepareStart(const SaddleProblem& problem,
                             const PrimalDualPoint& z0);

// G_beta at a point with cached products.
double GapAt(const SaddleProblem& problem, const SmoothingPair& beta,
             const CoupledPoint& point);

// Bookkeeping common to every solver loop: wall clock, history, observer
// calls and the stopping rules.
class RunMonitor {
 public:
  RunMonitor(const SolverControls& controls, const IterationObserver& observer)
      : controls_(controls),
        observer_(observer),
        start_(std::chrono::steady_clock::now()) {
    if (controls.max_iters < 0) ThrowInvalidParameter("max_iters must be >= 0");
    if (controls.gap_stride < 1) ThrowInvalidParameter("gap stride must be >= 1");
    if (std::isnan(controls.tol) || controls.tol < 0.0) {
      ThrowInvalidParameter("tolerance must be >= 0");
    }
  }

  bool ShouldEvaluate(std::int64_t k) const {
    return k == 0 || k >= controls_.max_iters || k % controls_.gap_stride == 0;
  }

  // Appends the record and reports whether the loop must stop after it.
  bool Record(ConvergenceRecord record) {
    record.elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start_)
                         .count();
    history_.push_back(record);
    if (!std::isnan(record.gap_beta0)) last_gap_ = record.gap_beta0;
    if (!std::isnan(record.gap_beta0) && record.gap_beta0 <= controls_.tol) {
      reason_ = TerminationReason::kConverged;
    } else if (record.iter >= controls_.max_iters) {
      reason_ = TerminationReason::kIterationLimit;
    }
    if (observer_ && observer_(record) == ObserverSignal::kStop && !reason_) {
      reason_ = TerminationReason::kObserverStop;
    }
    return reason_.has_value();
  }

  SolveResult Finish(PrimalDualPoint z) {
    SolveResult result;
    result.z = std::move(z);
    result.iterations = history_.empty() ? 0 : history_.back().iter;
    result.reason = reason_.value_or(TerminationReason::kIterationLimit);
    result.final_gap = last_gap_;
    result.history = std::move(history_);
    return result;
  }

 private:
  const SolverControls& controls_;
  const IterationObserver& observer_;
  std::chrono::steady_clock::time_point start_;
  std::vector<ConvergenceRecord> history_;
  std::optional<TerminationReason> reason_;
  double last_gap_ = std::nan("");
};

}  // namespace scsdg::internal

#endif  // SCSDG_SRC_RUN_MONITOR_HPP_
