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

// Seeded generators and problem builders shared by the tests.

#ifndef SCSDG_TESTS_SUPPORT_GENERATORS_HPP_
#define SCSDG_TESTS_SUPPORT_GENERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "scsdg/core.hpp"
#include "scsdg/ingestion.hpp"
#include "scsdg/prox.hpp"

namespace scsdg::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double Gaussian() { return normal_(engine_); }
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  // Log-uniform on [lo, hi].
  double LogUniform(double lo, double hi) {
    return std::exp(Uniform(std::log(lo), std::log(hi)));
  }

  Vector GaussianVector(std::size_t size, double scale = 1.0) {
    Vector v(size);
    for (double& vi : v) vi = scale * Gaussian();
    return v;
  }
  Vector UniformVector(std::size_t size, double lo, double hi) {
    Vector v(size);
    for (double& vi : v) vi = Uniform(lo, hi);
    return v;
  }
  PrimalDualPoint Point(std::size_t n, std::size_t m, double scale = 1.0) {
    return {GaussianVector(n, scale), GaussianVector(m, scale)};
  }
  SmoothingPair Beta(double lo = 0.05, double hi = 20.0) {
    return {LogUniform(lo, hi), LogUniform(lo, hi)};
  }
  StepPair Gamma(double lo = 0.05, double hi = 5.0) {
    return {LogUniform(lo, hi), LogUniform(lo, hi)};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Row-major dense matrix as triplets.
inline std::vector<Triplet> DenseTriplets(std::size_t rows, std::size_t cols,
                                          const std::vector<double>& values) {
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = values[i * cols + j];
      if (v != 0.0) {
        triplets.push_back({static_cast<std::int64_t>(i),
                            static_cast<std::int64_t>(j), v});
      }
    }
  }
  return triplets;
}

inline std::shared_ptr<MatrixCoupling> DenseCoupling(
    std::size_t rows, std::size_t cols, const std::vector<double>& values) {
  return std::make_shared<MatrixCoupling>(rows, cols,
                                          DenseTriplets(rows, cols, values));
}

// f = <c, .>, g* = <b, .> with a dense A; the unconstrained bilinear case.
inline SaddleProblem BilinearProblem(std::size_t rows, std::size_t cols,
                                     const std::vector<double>& a, Vector c,
                                     Vector b) {
  return SaddleProblem(std::make_shared<LinearFn>(std::move(c)),
                       std::make_shared<LinearPlusDualCone>(
                           std::move(b),
                           std::vector<ConeDescriptor>{{ConeKind::kZero, rows}}),
                       DenseCoupling(rows, cols, a));
}

// Standard-form LP min <c, x> s.t. A x = b, x >= 0 built around a known
// primal-dual pair: x* has `zeros` vanishing entries where the reduced cost
// is positive, so the optimum is unique when A restricted to the support
// of x* has full column rank.
struct PlantedLp {
  ConicProgram program;
  Vector x_star;
  // Multiplier with c + A^T y* >= 0 (the saddle sign).
  Vector y_star;
};

inline PlantedLp MakePlantedLp(std::uint64_t seed, std::size_t n, std::size_t m) {
  Rng rng(seed);
  PlantedLp lp;
  ConicProgram& p = lp.program;
  p.n = n;
  p.m = m;
  std::vector<double> a(m * n);
  for (double& v : a) v = rng.Uniform(-1.0, 1.0);
  p.triplets = DenseTriplets(m, n, a);
  lp.x_star.assign(n, 0.0);
  Vector s(n, 0.0);
  // Basis of size m among n variables.
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  std::shuffle(order.begin(), order.end(), rng.engine());
  for (std::size_t k = 0; k < n; ++k) {
    if (k < m) {
      lp.x_star[order[k]] = rng.Uniform(0.2, 1.0);
    } else {
      s[order[k]] = rng.Uniform(0.2, 1.0);
    }
  }
  lp.y_star = rng.UniformVector(m, -1.0, 1.0);
  p.c.assign(n, 0.0);
  p.b.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // c = s - A^T y*, b = A x*
      p.c[j] -= a[i * n + j] * lp.y_star[i];
      p.b[i] += a[i * n + j] * lp.x_star[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) p.c[j] += s[j];
  p.var_cones = {{ConeKind::kNonneg, n}};
  p.row_cones = {{ConeKind::kZero, m}};
  return lp;
}

// A random point of dom F: the prox with a vanishing step is the projection
// onto the domain up to a negligible shift.
inline PrimalDualPoint FeasiblePoint(const SaddleProblem& problem, Rng& rng,
                                     double scale = 1.0) {
  return problem.ProxF(StepPair::Uniform(1e-12),
                       rng.Point(problem.n(), problem.m(), scale));
}

inline std::string DataPath(const std::string& name) {
  return std::string(SCSDG_TEST_DATA_DIR) + "/" + name;
}

inline std::string FixturePath(const std::string& name) {
  return std::string(SCSDG_FIXTURE_DIR) + "/" + name;
}

}  // namespace scsdg::testing

#endif  // SCSDG_TESTS_SUPPORT_GENERATORS_HPP_
