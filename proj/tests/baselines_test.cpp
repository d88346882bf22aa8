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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "scsdg/baselines.hpp"
#include "scsdg/ingestion.hpp"
#include "scsdg/smoothed_gap.hpp"
#include "support/conic_instances.hpp"
#include "support/expect_error.hpp"
#include "support/generators.hpp"

namespace scsdg {
namespace {

using testing::Rng;

SolverControls Fixed(std::int64_t iters) {
  SolverControls controls;
  controls.max_iters = iters;
  controls.tol = 0.0;
  return controls;
}

TEST(PdhgTest, ZeroCouplingDecouples) {
  const Vector c = {1.0, -2.0, 0.5};
  const Vector b = {0.3, -1.0};
  const std::vector<ConeDescriptor> rows = {{ConeKind::kNonneg, 2}};
  const SaddleProblem problem(std::make_shared<LinearPlusNonneg>(c),
                              std::make_shared<LinearPlusDualCone>(b, rows),
                              std::make_shared<MatrixCoupling>(2, 3, std::vector<Triplet>{}));
  PdhgParams params;
  params.tau = 0.4;
  params.sigma = 0.7;
  params.controls = Fixed(5);
  const PrimalDualPoint z0{{2.0, 1.0, 3.0}, {1.0, 4.0}};
  const SolveResult r = RunPdhg(problem, z0, params);
  Vector x = z0.x;
  Vector y = z0.y;
  for (int k = 0; k < 5; ++k) {
    x = ProxLinearNonneg(0.4, c, x);
    y = ProxLinearDualCone(0.7, b, rows, y);
  }
  EXPECT_EQ(r.z.x, x);
  EXPECT_EQ(r.z.y, y);
}

TEST(PdhgTest, StepConditionIsEnforced) {
  const SaddleProblem problem = testing::BilinearProblem(1, 1, {2.0}, {0.0}, {0.0});
  PdhgParams params;
  params.tau = 1.0;
  params.sigma = 1.0;
  EXPECT_SCSDG_ERROR(RunPdhg(problem, {{1.0}, {1.0}}, params), ErrorKind::kInvalidParameter);
  params.tau = 0.5;
  params.sigma = 0.5;
  EXPECT_NO_THROW(RunPdhg(problem, {{1.0}, {1.0}}, params));
  params.sigma = -1.0;
  EXPECT_SCSDG_ERROR(RunPdhg(problem, {{1.0}, {1.0}}, params), ErrorKind::kInvalidParameter);
  const auto [tau, sigma] = ResolvePdhgSteps(PdhgParams{}, 2.0);
  EXPECT_DOUBLE_EQ(tau, 0.5);
  EXPECT_DOUBLE_EQ(sigma, 0.5);
}

TEST(PdhgTest, SaddlePointIsStationary) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  PdhgParams params;
  params.controls = Fixed(100);
  const SolveResult r = RunPdhg(problem, toy.z_star, params);
  EXPECT_LE(Distance(r.z, toy.z_star), 1e-9);
}

// PDHG is nonexpansive in the metric P = [I/tau, -A^T; -A, I/sigma], so the
// P-distance to any saddle point never grows.
TEST(PdhgTest, MetricDistanceToSaddleNeverGrows) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  const oracles::ConicData data = testing::ToConicData(toy.program);
  PdhgParams params;
  params.controls = Fixed(100000);
  params.controls.gap_stride = 1000;
  const auto [tau, sigma] = ResolvePdhgSteps(params, problem.op_norm());
  const int n = static_cast<int>(problem.n());
  const int m = static_cast<int>(problem.m());
  Eigen::MatrixXd metric(n + m, n + m);
  metric.setZero();
  metric.topLeftCorner(n, n).diagonal().setConstant(1.0 / tau);
  metric.bottomRightCorner(m, m).diagonal().setConstant(1.0 / sigma);
  metric.topRightCorner(n, m) = -data.a.transpose();
  metric.bottomLeftCorner(m, n) = -data.a;
  const Eigen::VectorXd star = testing::Stack(toy.z_star);
  double previous = INFINITY;
  bool monotone = true;
  double max_norm = 0.0;
  params.controls.iterate_hook = [&](const IterateView& view) {
    const Eigen::VectorXd d = testing::Stack(view.z) - star;
    const double dist = d.dot(metric * d);
    if (dist > previous + 1e-12 * std::max(1.0, previous)) monotone = false;
    previous = dist;
    max_norm = std::max(max_norm, testing::Stack(view.z).norm());
  };
  Rng rng(51);
  const PrimalDualPoint z0 = testing::FeasiblePoint(problem, rng, 3.0);
  const SolveResult r = RunPdhg(problem, z0, params);
  EXPECT_TRUE(monotone);
  EXPECT_TRUE(std::isfinite(max_norm));
  EXPECT_LE(Distance(r.z, toy.z_star), 1e-8);
}

TEST(RapdhgTest, SaddleStartTerminatesImmediately) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  RapdhgParams params;
  const SolveResult r = RunRapdhg(problem, toy.z_star, params);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.reason, TerminationReason::kConverged);
}

TEST(RapdhgTest, FactorOneRestartsEveryIteration) {
  const SaddleProblem problem = ToSaddle(testing::MakePlantedLp(52, 8, 3).program);
  RapdhgParams params;
  params.restart_factor = 1.0;
  params.pdhg.controls = Fixed(50);
  Rng rng(53);
  const SolveResult r = RunRapdhg(problem, rng.Point(8, 3), params);
  // The test is G(average) <= G(start): with factor 1 every evaluated
  // iteration restarts unless the gap went up since the last restart.
  double start = r.history.front().gap_beta0;
  int restarts = 0;
  for (const ConvergenceRecord& record : r.history) {
    if (record.iter == 0) continue;
    if (record.restarted) {
      EXPECT_LE(record.gap_beta0, start);
      start = record.gap_beta0;
      ++restarts;
    } else {
      EXPECT_GT(record.gap_beta0, start);
    }
  }
  EXPECT_GE(restarts, 25);
  // With a one-point average every restart resumes plain PDHG.
  PdhgParams plain;
  plain.controls = Fixed(1);
  const SolveResult one = RunRapdhg(problem, r.z, {plain, 1.0});
  EXPECT_EQ(one.history.size(), 2u);
}

TEST(RapdhgTest, RestartGapsShrinkGeometrically) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  RapdhgParams params;
  params.pdhg.controls = Fixed(5000);
  params.pdhg.controls.tol = 1e-10;
  const SolveResult r = RunRapdhg(problem, PrimalDualPoint::Zero(problem.n(), problem.m()),
                                  params);
  const double g0 = r.history.front().gap_beta0;
  int epochs = 0;
  for (const ConvergenceRecord& record : r.history) {
    if (!record.restarted) continue;
    epochs = record.epoch;
    EXPECT_LE(record.gap_beta0, std::pow(params.restart_factor, epochs) * g0 * (1.0 + 1e-12));
  }
  EXPECT_GE(epochs, 5);
  EXPECT_EQ(r.reason, TerminationReason::kConverged);
  EXPECT_LE(Distance(r.z, toy.z_star), 1e-4);
}

TEST(RapdhgTest, InvalidFactorIsRejected) {
  const SaddleProblem problem = testing::BilinearProblem(1, 1, {1.0}, {0.0}, {0.0});
  for (double factor : {0.0, 1.5, -0.5}) {
    RapdhgParams params;
    params.restart_factor = factor;
    EXPECT_SCSDG_ERROR(RunRapdhg(problem, {{1.0}, {1.0}}, params),
                       ErrorKind::kInvalidParameter);
  }
}

TEST(BaselinesTest, ReportingBetaDefaultsAndOverride) {
  const SaddleProblem problem = ToSaddle(testing::MakePlantedLp(54, 8, 3).program);
  Rng rng(55);
  const PrimalDualPoint z0 = testing::FeasiblePoint(problem, rng);
  PdhgParams params;
  params.controls = Fixed(0);
  const SolveResult r = RunPdhg(problem, z0, params);
  EXPECT_DOUBLE_EQ(r.final_gap, Gap(problem, ReportingBeta(problem.op_norm()), z0));
  params.controls.merit_beta = SmoothingPair(2.0, 3.0);
  const SolveResult r2 = RunPdhg(problem, z0, params);
  EXPECT_DOUBLE_EQ(r2.final_gap, Gap(problem, SmoothingPair(2.0, 3.0), z0));
}

}  // namespace
}  // namespace scsdg
