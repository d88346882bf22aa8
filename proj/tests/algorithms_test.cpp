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

#include "scsdg/algorithms.hpp"
#include "scsdg/ingestion.hpp"
#include "scsdg/smoothed_gap.hpp"
#include "support/bounds.hpp"
#include "support/conic_instances.hpp"
#include "support/expect_error.hpp"
#include "support/generators.hpp"

namespace scsdg {
namespace {

using testing::Rng;

bool SameHistory(const SolveResult& a, const SolveResult& b) {
  if (a.history.size() != b.history.size()) return false;
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    const ConvergenceRecord& ra = a.history[i];
    const ConvergenceRecord& rb = b.history[i];
    const auto same = [](double x, double y) {
      return x == y || (std::isnan(x) && std::isnan(y));
    };
    if (ra.iter != rb.iter || !same(ra.gap_beta0, rb.gap_beta0) ||
        !same(ra.gap_betak, rb.gap_betak) || ra.step_norm != rb.step_norm ||
        ra.restarted != rb.restarted || ra.epoch != rb.epoch) {
      return false;
    }
  }
  return a.z.x == b.z.x && a.z.y == b.z.y;
}

TEST(ScheduleProxGradTest, DefaultFirstValues) {
  const ProxGradParams params;
  const ProxGradSchedule s = ScheduleProxGrad(0, params, 1.0);
  EXPECT_NEAR(s.beta.beta_x(), 0.04997, 5e-6);
  EXPECT_EQ(s.beta.beta_x(), s.beta.beta_y());
  const double beta = s.beta.beta_x();
  EXPECT_DOUBLE_EQ(s.gamma.gamma_x(), beta / (1.0 + 2.0 * beta * beta));
}

TEST(ScheduleProxGradTest, StepNeverExceedsInverseLipschitz) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const double norm = rng.LogUniform(1e-2, 1e2);
    ProxGradParams params;
    params.p_prime = rng.Uniform(0.01, 0.5);
    params.b = rng.Uniform(1.5, 10.0);
    const std::int64_t k = rng.Int(0, 100000);
    const ProxGradSchedule s = ScheduleProxGrad(k, params, norm);
    const double beta = s.beta.beta_x();
    EXPECT_LE(s.gamma.gamma_x(), beta / (norm * norm) * (1.0 + 1e-15));
    EXPECT_LE(s.gamma.gamma_x() * LipschitzConstant(s.beta, s.gamma, norm), 1.0 + 1e-12);
    if (k > 0) {
      EXPECT_LT(beta, ScheduleProxGrad(k - 1, params, norm).beta.beta_x());
    }
  }
}

TEST(ScheduleProxGradTest, InvalidInputs) {
  const ProxGradParams params;
  EXPECT_SCSDG_ERROR(ScheduleProxGrad(0, params, 0.0), ErrorKind::kInvalidParameter);
  EXPECT_SCSDG_ERROR(ScheduleProxGrad(-1, params, 1.0), ErrorKind::kInvalidParameter);
  ProxGradParams bad;
  bad.p_prime = 1.0;
  EXPECT_SCSDG_ERROR(ScheduleProxGrad(0, bad, 1.0), ErrorKind::kInvalidParameter);
}

TEST(ScheduleAcceleratedTest, Examples) {
  AcceleratedParams params;
  params.beta_x0 = 0.2;
  params.beta_y0 = 0.2;
  EXPECT_NEAR(AcceleratedCBar(params, 1.0), 0.32, 1e-15);
  const AcceleratedSchedule s0 = ScheduleAccelerated(0, params, 1.0);
  EXPECT_EQ(s0.theta, 1.0);
  EXPECT_DOUBLE_EQ(s0.beta.beta_x(), 0.2);
  EXPECT_DOUBLE_EQ(s0.gamma.gamma_x(), 0.2 / (2.0 * 0.04 + 1.0));
  EXPECT_SCSDG_ERROR(ScheduleAccelerated(0, params, 0.0), ErrorKind::kInvalidParameter);
}

TEST(ScheduleAcceleratedTest, DefaultBetaHitsTargetCbar) {
  const AcceleratedParams params;
  for (double norm : {0.1, 1.0, 37.0}) {
    EXPECT_NEAR(AcceleratedCBar(params, norm), params.default_cbar, 1e-12);
  }
}

// 2 - beta_k / beta_{k+1} = beta_k / beta_{k-1} for the harmonic schedule.
TEST(ScheduleAcceleratedTest, RatioIdentityAndStepCondition) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    AcceleratedParams params;
    params.t = rng.Uniform(2.0, 5.0);
    params.b = params.t + rng.Uniform(0.0, 10.0);
    const double norm = rng.LogUniform(0.1, 10.0);
    const std::int64_t k = rng.Int(1, 10000);
    const double b0 = ScheduleAccelerated(k - 1, params, norm).beta.beta_x();
    const double b1 = ScheduleAccelerated(k, params, norm).beta.beta_x();
    const double b2 = ScheduleAccelerated(k + 1, params, norm).beta.beta_x();
    EXPECT_NEAR(2.0 - b1 / b2, b1 / b0, 1e-12);
    const AcceleratedSchedule s = ScheduleAccelerated(k, params, norm);
    EXPECT_LE(LipschitzConstant(s.beta, s.gamma, norm), 1.0 + 1e-12);
  }
}

TEST(ScheduleAcceleratedTest, RejectsCbarAtLeastOne) {
  AcceleratedParams params;
  params.beta_x0 = 1.0;
  params.beta_y0 = 1.0;
  EXPECT_SCSDG_ERROR(ValidateAcceleratedParams(params, 1.0), ErrorKind::kInvalidParameter);
  const SaddleProblem problem = testing::BilinearProblem(1, 1, {1.0}, {0.0}, {0.0});
  EXPECT_SCSDG_ERROR(RunAccelerated(problem, {{1.0}, {1.0}}, params),
                     ErrorKind::kInvalidParameter);
  AcceleratedParams small_b;
  small_b.b = 1.0;
  EXPECT_SCSDG_ERROR(ValidateAcceleratedParams(small_b, 1.0), ErrorKind::kInvalidParameter);
}

class SaddleStartTest : public ::testing::Test {
 protected:
  testing::ToyLp toy_ = testing::LoadToyLp();
  SaddleProblem problem_ = ToSaddle(toy_.program);
};

TEST_F(SaddleStartTest, AllMethodsStayAtTheSaddlePoint) {
  ProxGradParams p1;
  p1.controls.max_iters = 50;
  p1.controls.tol = 0.0;
  const SolveResult r1 = RunProxGrad(problem_, toy_.z_star, p1);
  EXPECT_LE(Distance(r1.z, toy_.z_star), 1e-9);

  AcceleratedParams p2;
  p2.controls = p1.controls;
  const SolveResult r2 = RunAccelerated(problem_, toy_.z_star, p2);
  EXPECT_LE(Distance(r2.z, toy_.z_star), 1e-9);
  for (const ConvergenceRecord& record : r2.history) {
    EXPECT_LE(record.step_norm, 1e-9);
  }
}

TEST_F(SaddleStartTest, RestartedTerminatesImmediatelyAtZeroGap) {
  // The bilinear saddle has an exactly zero gap.
  const SaddleProblem bilinear = testing::BilinearProblem(1, 1, {1.0}, {0.0}, {0.0});
  RestartedParams params;
  params.inner.controls.tol = 0.0;
  const SolveResult r = RunRestarted(bilinear, {{0.0}, {0.0}}, params);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.reason, TerminationReason::kConverged);
}

TEST(AcceleratedTest, FirstStepIsAProxGradientStep) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  Rng rng(43);
  const PrimalDualPoint z0 = testing::FeasiblePoint(problem, rng);
  AcceleratedParams params;
  params.controls.max_iters = 1;
  params.controls.tol = 0.0;
  const SolveResult r = RunAccelerated(problem, z0, params);
  const AcceleratedSchedule s = ScheduleAccelerated(0, params, problem.op_norm());
  const PrimalDualPoint grad = GradSmooth(problem, s.beta, z0);
  PrimalDualPoint moved = z0;
  for (std::size_t j = 0; j < moved.x.size(); ++j) moved.x[j] -= s.gamma.gamma_x() * grad.x[j];
  for (std::size_t i = 0; i < moved.y.size(); ++i) moved.y[i] -= s.gamma.gamma_y() * grad.y[i];
  const PrimalDualPoint expected = problem.ProxF(s.gamma, moved);
  EXPECT_LE(Distance(r.z, expected), 1e-12);
}

// With F = 0 and frozen smoothing the iteration is linear:
// z_{k+1} = (I + (gamma / beta) M^2) z_k.
TEST(ProxGradTest, FrozenSmoothingMatchesMatrixPower) {
  Rng rng(44);
  for (const auto& [rows, cols] : {std::pair<int, int>{1, 1}, {2, 2}}) {
    const Vector a = rows == 1 ? Vector{1.0} : rng.GaussianVector(4);
    const SaddleProblem problem = testing::BilinearProblem(
        rows, cols, a, Vector(cols, 0.0), Vector(rows, 0.0));
    ProxGradParams params;
    params.freeze_smoothing = true;
    params.controls.max_iters = 25;
    params.controls.tol = 0.0;
    const PrimalDualPoint z0 = rng.Point(cols, rows);
    const SolveResult r = RunProxGrad(problem, z0, params);

    const ProxGradSchedule s = ScheduleProxGrad(0, params, problem.op_norm());
    Eigen::MatrixXd dense(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) dense(i, j) = a[i * cols + j];
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows + cols, rows + cols);
    m.topRightCorner(cols, rows) = -dense.transpose();
    m.bottomLeftCorner(rows, cols) = dense;
    const Eigen::MatrixXd step = Eigen::MatrixXd::Identity(rows + cols, rows + cols) +
                                 s.gamma.gamma_x() / s.beta.beta_x() * m * m;
    Eigen::VectorXd expected = testing::Stack(z0);
    for (int k = 0; k < 25; ++k) expected = step * expected;
    EXPECT_LE((testing::Stack(r.z) - expected).norm(), 1e-12 * std::max(1.0, expected.norm()));
  }
}

TEST(ProxGradTest, FrozenSmoothingDescends) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  ProxGradParams params;
  params.freeze_smoothing = true;
  params.controls.max_iters = 1000;
  params.controls.tol = 0.0;
  std::vector<PrimalDualPoint> iterates;
  params.controls.iterate_hook = [&](const IterateView& view) { iterates.push_back(view.z); };
  RunProxGrad(problem, PrimalDualPoint::Zero(problem.n(), problem.m()), params);
  const ProxGradSchedule s = ScheduleProxGrad(0, params, problem.op_norm());
  for (std::size_t k = 0; k + 1 < iterates.size(); ++k) {
    const double g0 = Gap(problem, s.beta, iterates[k]);
    const double g1 = Gap(problem, s.beta, iterates[k + 1]);
    const double step_sq = SquaredNorm(Difference(iterates[k + 1], iterates[k]));
    EXPECT_LE(g1, g0 - step_sq / (2.0 * s.gamma.gamma_x()) + 1e-8) << "k = " << k;
  }
}

TEST(ProxGradTest, IteratesStayFeasibleAndRunIsDeterministic) {
  const SaddleProblem problem = ToSaddle(testing::MakeSmallSocp(11).program);
  ProxGradParams params;
  params.controls.max_iters = 200;
  params.controls.tol = 0.0;
  bool all_feasible = true;
  params.controls.iterate_hook = [&](const IterateView& view) {
    all_feasible = all_feasible && std::isfinite(problem.Objective(view.z));
  };
  Rng rng(45);
  const PrimalDualPoint z0 = rng.Point(problem.n(), problem.m());
  const SolveResult a = RunProxGrad(problem, z0, params);
  EXPECT_TRUE(all_feasible);
  params.controls.iterate_hook = nullptr;
  const SolveResult b = RunProxGrad(problem, z0, params);
  EXPECT_TRUE(SameHistory(a, b));
  EXPECT_EQ(a.history.size(), 201u);
  EXPECT_EQ(a.reason, TerminationReason::kIterationLimit);
}

TEST(ProxGradTest, StaysWithinEnvelope) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  ProxGradParams params;
  params.controls.max_iters = 3000;
  params.controls.tol = 0.0;
  const PrimalDualPoint z0 = PrimalDualPoint::Zero(problem.n(), problem.m());
  const SolveResult r = RunProxGrad(problem, z0, params);
  const double beta0 = ScheduleProxGrad(0, params, problem.op_norm()).beta.beta_x();
  const testing::ProxGradEnvelope env{params.p_prime, params.b, beta0, problem.op_norm()};
  const double dist_sq = SquaredNorm(Difference(z0, toy.z_star));
  int checked = 0;
  for (const ConvergenceRecord& record : r.history) {
    if (record.iter < 1) continue;
    const double bound = env.Bound(record.iter, dist_sq);
    if (!std::isfinite(bound)) continue;
    ++checked;
    EXPECT_LE(record.gap_betak, bound) << "k = " << record.iter;
  }
  EXPECT_GT(checked, 1000);
}

TEST(AcceleratedTest, LyapunovDecreasesAndEnvelopeHolds) {
  const testing::ToyLp toy = testing::LoadToyLp();
  const SaddleProblem problem = ToSaddle(toy.program);
  AcceleratedParams params;
  params.controls.max_iters = 2000;
  params.controls.tol = 0.0;
  std::vector<PrimalDualPoint> zs;
  std::vector<PrimalDualPoint> anchors;
  params.controls.iterate_hook = [&](const IterateView& view) {
    zs.push_back(view.z);
    anchors.push_back(*view.anchor);
  };
  const PrimalDualPoint z0 = PrimalDualPoint::Zero(problem.n(), problem.m());
  const SolveResult r = RunAccelerated(problem, z0, params);
  const SmoothingPair beta0 = ResolveAcceleratedBeta0(params, problem.op_norm());
  const testing::AcceleratedEnvelope env{params.t, params.b, beta0.beta_x(), beta0.beta_y(),
                                         problem.op_norm()};
  std::vector<double> lyap(zs.size(), 0.0);
  for (std::size_t k = 1; k < zs.size(); ++k) {
    lyap[k] = env.Lyapunov(static_cast<std::int64_t>(k), r.history[k].gap_betak,
                           Difference(zs[k], toy.z_star), Difference(anchors[k], toy.z_star));
  }
  for (std::size_t k = 1; k + 1 < zs.size(); ++k) {
    // The absolute term is the rounding floor of a gap evaluation; the
    // iterates reach z* to machine precision well before the last k.
    EXPECT_LE(lyap[k + 1],
              env.Rho(static_cast<std::int64_t>(k)) * lyap[k] * (1.0 + 1e-7) + 1e-14)
        << "k = " << k;
  }
  for (std::size_t k = 1; k < zs.size(); ++k) {
    EXPECT_LE(r.history[k].gap_betak,
              env.Bound(static_cast<std::int64_t>(k), Difference(z0, toy.z_star)))
        << "k = " << k;
  }
}

TEST(AcceleratedTest, DeterministicHistories) {
  const SaddleProblem problem = ToSaddle(testing::MakePlantedLp(46, 12, 5).program);
  AcceleratedParams params;
  params.controls.max_iters = 300;
  params.controls.tol = 0.0;
  params.controls.gap_stride = 7;
  Rng rng(47);
  const PrimalDualPoint z0 = rng.Point(12, 5);
  const SolveResult a = RunAccelerated(problem, z0, params);
  const SolveResult b = RunAccelerated(problem, z0, params);
  EXPECT_TRUE(SameHistory(a, b));
  EXPECT_TRUE(std::isnan(a.history[1].gap_beta0));
  EXPECT_FALSE(std::isnan(a.history[7].gap_beta0));
  EXPECT_FALSE(std::isnan(a.history.back().gap_beta0));
}

class RestartTest : public ::testing::Test {
 protected:
  testing::ToyLp toy_ = testing::LoadToyLp();
  SaddleProblem problem_ = ToSaddle(toy_.program);
};

TEST_F(RestartTest, RestartsHalveTheGap) {
  RestartedParams params;
  params.inner.controls.max_iters = 3000;
  params.inner.controls.tol = 1e-10;
  const PrimalDualPoint z0 = PrimalDualPoint::Zero(problem_.n(), problem_.m());
  const SolveResult r = RunRestarted(problem_, z0, params);
  const double g0 = r.history.front().gap_beta0;
  int epoch = 0;
  bool first_restart_seen = false;
  for (const ConvergenceRecord& record : r.history) {
    EXPECT_GE(record.epoch, epoch);
    if (record.restarted) {
      EXPECT_GT(record.epoch, epoch);
      epoch = record.epoch;
      EXPECT_LE(record.gap_beta0, std::ldexp(g0, -epoch) * (1.0 + 1e-12));
      if (!first_restart_seen) {
        EXPECT_LE(record.gap_beta0, 0.5 * g0);
        first_restart_seen = true;
      }
    } else if (record.iter > 0) {
      // No restart means the next threshold has not been reached.
      EXPECT_GT(record.gap_beta0, std::ldexp(g0, -(epoch + 1)));
    }
  }
  EXPECT_GE(epoch, 10);
  EXPECT_EQ(r.reason, TerminationReason::kConverged);
}

TEST_F(RestartTest, AnchorResetsToIterateOnRestart) {
  RestartedParams params;
  params.inner.controls.max_iters = 400;
  params.inner.controls.tol = 0.0;
  std::vector<std::pair<PrimalDualPoint, PrimalDualPoint>> seen;
  params.inner.controls.iterate_hook = [&](const IterateView& view) {
    seen.emplace_back(view.z, *view.anchor);
  };
  const SolveResult r = RunRestarted(problem_, PrimalDualPoint::Zero(problem_.n(), problem_.m()),
                                     params);
  int restarts = 0;
  for (std::size_t k = 0; k < r.history.size(); ++k) {
    if (!r.history[k].restarted) continue;
    ++restarts;
    EXPECT_EQ(seen[k].first.x, seen[k].second.x);
    EXPECT_EQ(seen[k].first.y, seen[k].second.y);
  }
  EXPECT_GT(restarts, 0);
}

TEST_F(RestartTest, InvalidFactorIsRejected) {
  RestartedParams params;
  params.restart_factor = 1.0;
  EXPECT_SCSDG_ERROR(RunRestarted(problem_, PrimalDualPoint::Zero(problem_.n(), problem_.m()),
                                  params),
                     ErrorKind::kInvalidParameter);
}

TEST(ObserverTest, StopSignalEndsRun) {
  const SaddleProblem problem = ToSaddle(testing::MakePlantedLp(48, 6, 3).program);
  ProxGradParams params;
  params.controls.tol = 0.0;
  const SolveResult r = RunProxGrad(problem, PrimalDualPoint::Zero(6, 3), params,
                                    [](const ConvergenceRecord& record) {
                                      return record.iter >= 9 ? ObserverSignal::kStop
                                                              : ObserverSignal::kContinue;
                                    });
  EXPECT_EQ(r.reason, TerminationReason::kObserverStop);
  EXPECT_EQ(r.iterations, 9);
  EXPECT_EQ(r.history.size(), 10u);
}

TEST(StartPointTest, InfeasibleStartIsMovedIntoDomain) {
  const SaddleProblem problem = ToSaddle(testing::MakePlantedLp(49, 6, 3).program);
  ProxGradParams params;
  params.controls.max_iters = 0;
  PrimalDualPoint z0 = PrimalDualPoint::Zero(6, 3);
  z0.x[0] = -5.0;
  const SolveResult r = RunProxGrad(problem, z0, params);
  EXPECT_TRUE(std::isfinite(problem.Objective(r.z)));
  EXPECT_TRUE(std::isfinite(r.final_gap));
  z0.x[1] = NAN;
  EXPECT_SCSDG_ERROR(RunProxGrad(problem, z0, params), ErrorKind::kInvalidParameter);
}

}  // namespace
}  // namespace scsdg
