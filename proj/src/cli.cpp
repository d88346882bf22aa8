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

#include "scsdg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "scsdg/algorithms.hpp"
#include "scsdg/baselines.hpp"
#include "scsdg/error.hpp"
#include "scsdg/smoothed_gap.hpp"

#ifndef SCSDG_BUNDLED_DATA_DIR
#define SCSDG_BUNDLED_DATA_DIR "data"
#endif

namespace scsdg::cli {
namespace {

namespace fs = std::filesystem;

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string Short(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", value);
  return buffer;
}

SolverControls MakeControls(const RunConfig& config, double op_norm) {
  SolverControls controls;
  controls.max_iters = config.max_iters;
  controls.tol = config.tol;
  controls.gap_stride = config.stride;
  if (config.report_beta) controls.merit_beta = ReportingBeta(op_norm);
  return controls;
}

struct Loaded {
  ConicProgram program;
  std::optional<SaddleProblem> problem;
};

Loaded LoadFromConfig(const RunConfig& config, std::ostream& err) {
  if (config.problem_path.empty()) {
    throw Error(ErrorKind::kInvalidParameter, "--problem is required");
  }
  const std::string path = ResolveDataPath(config.problem_path);
  ParseDiagnostics diagnostics;
  Loaded loaded;
  loaded.program = LoadProgram(path, &diagnostics);
  for (const ParseWarning& warning : diagnostics.warnings) {
    err << path << ':' << warning.line << ": warning: " << warning.message << '\n';
  }
  PowerIterationOptions power;
  power.seed = config.seed;
  loaded.problem.emplace(ToSaddle(loaded.program, power));
  return loaded;
}

void ValidateConfig(const RunConfig& config) {
  if (config.max_iters < 0) ThrowInvalidParameter("--max-iters must be >= 0");
  if (std::isnan(config.tol) || config.tol < 0.0) {
    ThrowInvalidParameter("--tol must be >= 0");
  }
  if (config.stride < 1) ThrowInvalidParameter("--stride must be >= 1");
}

}  // namespace

const char* ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kProxGrad:
      return "pg";
    case Algorithm::kAccelerated:
      return "apg";
    case Algorithm::kRestarted:
      return "rapg";
    case Algorithm::kPdhg:
      return "pdhg";
    case Algorithm::kRapdhg:
      return "rapdhg";
  }
  return "?";
}

std::optional<Algorithm> AlgorithmFromString(std::string_view name) {
  for (Algorithm algorithm : kAllAlgorithms) {
    if (name == ToString(algorithm)) return algorithm;
  }
  return std::nullopt;
}

std::string DataDirectory() {
  if (const char* dir = std::getenv(kDataDirEnv); dir && *dir) return dir;
  return SCSDG_BUNDLED_DATA_DIR;
}

std::string ResolveDataPath(const std::string& path) {
  std::error_code ec;
  if (fs::exists(path, ec)) return path;
  if (const char* dir = std::getenv(kDataDirEnv); dir && *dir) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate, ec)) return candidate.string();
  }
  const fs::path bundled = fs::path(SCSDG_BUNDLED_DATA_DIR) / path;
  if (fs::exists(bundled, ec)) return bundled.string();
  return path;
}

SolveResult RunAlgorithm(const SaddleProblem& problem, const PrimalDualPoint& z0,
                         const RunConfig& config,
                         const IterationObserver& observer) {
  ValidateConfig(config);
  const SolverControls controls = MakeControls(config, problem.op_norm());
  switch (config.algorithm) {
    case Algorithm::kProxGrad: {
      ProxGradParams params;
      params.controls = controls;
      if (config.b) params.b = *config.b;
      if (config.p_prime) params.p_prime = *config.p_prime;
      params.beta0 = config.beta0;
      return RunProxGrad(problem, z0, params, observer);
    }
    case Algorithm::kAccelerated:
    case Algorithm::kRestarted: {
      AcceleratedParams params;
      params.controls = controls;
      if (config.b) params.b = *config.b;
      if (config.t) params.t = *config.t;
      params.beta_x0 = config.beta0;
      params.beta_y0 = config.beta0;
      if (config.algorithm == Algorithm::kAccelerated) {
        return RunAccelerated(problem, z0, params, observer);
      }
      RestartedParams restarted;
      restarted.inner = params;
      return RunRestarted(problem, z0, restarted, observer);
    }
    case Algorithm::kPdhg:
    case Algorithm::kRapdhg: {
      PdhgParams params;
      params.controls = controls;
      params.tau = config.tau;
      params.sigma = config.sigma;
      if (config.algorithm == Algorithm::kPdhg) {
        return RunPdhg(problem, z0, params, observer);
      }
      RapdhgParams averaged;
      averaged.pdhg = params;
      return RunRapdhg(problem, z0, averaged, observer);
    }
  }
  ThrowInvalidParameter("unknown algorithm");
}

std::string FormatRecord(std::string_view algo, const ConvergenceRecord& record) {
  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.6f", record.elapsed);
  std::string line(algo);
  line += ',' + std::to_string(record.iter) + ',' + elapsed + ',' +
          FormatNumber(record.gap_beta0) + ',' + FormatNumber(record.gap_betak) +
          ',' + FormatNumber(record.step_norm) + ',' +
          (record.restarted ? "1" : "0") + ',' + std::to_string(record.epoch);
  return line;
}

HistoryWriter::HistoryWriter(const std::string& path) : out_(path) {
  if (!out_) throw Error(ErrorKind::kIo, "cannot write " + path);
  out_ << kCsvHeader << '\n';
}

void HistoryWriter::Write(std::string_view algo, const ConvergenceRecord& record) {
  out_ << FormatRecord(algo, record) << '\n';
  if (++pending_ >= kFlushEvery) {
    out_.flush();
    pending_ = 0;
  }
}

int CmdSolve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    ValidateConfig(config);
    const Loaded loaded = LoadFromConfig(config, err);
    const SaddleProblem& problem = *loaded.problem;
    std::optional<HistoryWriter> writer;
    if (!config.history_path.empty()) writer.emplace(config.history_path);
    const char* algo = ToString(config.algorithm);

    IterationObserver observer;
    if (writer) {
      observer = [&](const ConvergenceRecord& record) {
        writer->Write(algo, record);
        return ObserverSignal::kContinue;
      };
    }
    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = RunAlgorithm(
        problem, PrimalDualPoint::Zero(problem.n(), problem.m()), config, observer);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (writer) writer->Flush();

    out << "algo=" << algo << " iterations=" << result.iterations
        << " final_gap=" << Short(result.final_gap)
        << " reason=" << ToString(result.reason) << " wall_s=" << std::fixed
        << std::setprecision(3) << wall << std::defaultfloat << '\n';
    return result.reason == TerminationReason::kConverged ? kExitSuccess
                                                          : kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int CmdBench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    ValidateConfig(config);
    const Loaded loaded = LoadFromConfig(config, err);
    const SaddleProblem& problem = *loaded.problem;
    const fs::path dir = config.history_path.empty() ? fs::path("bench_out")
                                                     : fs::path(config.history_path);
    fs::create_directories(dir);
    HistoryWriter merged((dir / "bench_merged.csv").string());

    struct Row {
      const char* algo;
      std::int64_t iterations;
      double final_gap;
      bool reached;
      double wall;
    };
    std::vector<Row> rows;
    const PrimalDualPoint z0 = PrimalDualPoint::Zero(problem.n(), problem.m());
    for (Algorithm algorithm : kAllAlgorithms) {
      RunConfig run = config;
      run.algorithm = algorithm;
      const char* algo = ToString(algorithm);
      HistoryWriter own((dir / ("history_" + std::string(algo) + ".csv")).string());
      const auto start = std::chrono::steady_clock::now();
      const SolveResult result =
          RunAlgorithm(problem, z0, run, [&](const ConvergenceRecord& record) {
            own.Write(algo, record);
            merged.Write(algo, record);
            return ObserverSignal::kContinue;
          });
      own.Flush();
      rows.push_back({algo, result.iterations, result.final_gap,
                      result.reason == TerminationReason::kConverged,
                      std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count()});
    }
    merged.Flush();

    out << std::left << std::setw(8) << "algo" << std::right << std::setw(12)
        << "iterations" << std::setw(14) << "final_gap" << std::setw(8)
        << "tol" << std::setw(10) << "wall_s" << '\n';
    bool all_reached = true;
    for (const Row& row : rows) {
      all_reached = all_reached && row.reached;
      out << std::left << std::setw(8) << row.algo << std::right << std::setw(12)
          << row.iterations << std::setw(14) << Short(row.final_gap)
          << std::setw(8) << (row.reached ? "yes" : "no") << std::setw(10)
          << std::fixed << std::setprecision(3) << row.wall << std::defaultfloat
          << '\n';
    }
    return all_reached ? kExitSuccess : kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

// ---------------------------------------------------------------------------
// Invariant checks.

namespace {

class PointSampler {
 public:
  PointSampler(const SaddleProblem& problem, std::uint64_t seed)
      : problem_(problem), rng_(seed) {}

  Vector Gaussian(std::size_t size) {
    Vector v(size);
    for (double& vi : v) vi = normal_(rng_);
    return v;
  }

  PrimalDualPoint Any() {
    return {Gaussian(problem_.n()), Gaussian(problem_.m())};
  }

  // A point of dom F.
  PrimalDualPoint Feasible() {
    return problem_.ProxF(StepPair::Uniform(1.0), Any());
  }

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  // Smoothing on the scale of ||A||.
  SmoothingPair Beta() {
    const double scale = problem_.op_norm() > 0.0 ? problem_.op_norm() : 1.0;
    return {scale * Uniform(0.2, 5.0), scale * Uniform(0.2, 5.0)};
  }

 private:
  const SaddleProblem& problem_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

double Norm(const Vector& v) { return std::sqrt(kernels::serial::SquaredNorm(v)); }

double SmoothPart(const SaddleProblem& problem, const SmoothingPair& beta,
                  const PrimalDualPoint& z) {
  return EvaluateGap(problem, beta, z, /*with_gradient=*/false).smooth_part;
}

PrimalDualPoint Axpy(double alpha, const PrimalDualPoint& d,
                     const PrimalDualPoint& z) {
  PrimalDualPoint out = z;
  kernels::serial::Axpby(alpha, d.x, 1.0, out.x);
  kernels::serial::Axpby(alpha, d.y, 1.0, out.y);
  return out;
}

// Worst-case accumulator: margin = threshold - worst.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  void Add(double v) { value = std::max(value, std::isnan(v) ? INFINITY : v); }
};

CheckOutcome Outcome(std::string name, double worst, double threshold) {
  CheckOutcome outcome;
  outcome.name = std::move(name);
  outcome.margin = threshold - worst;
  outcome.passed = worst <= threshold;
  outcome.detail = "worst " + Short(worst) + " vs " + Short(threshold);
  return outcome;
}

}  // namespace

std::vector<CheckOutcome> RunChecks(const SaddleProblem& problem,
                                    const CheckOptions& options) {
  std::vector<CheckOutcome> outcomes;
  PointSampler sampler(problem, options.seed);
  const LinearCoupling& a = problem.coupling();
  const double norm_a = std::max(problem.op_norm(), 1.0);

  {  // |<Ax, y> - <x, A^T y>| / (||A|| ||x|| ||y||)
    Worst worst;
    for (int s = 0; s < options.samples; ++s) {
      const Vector x = sampler.Gaussian(problem.n());
      const Vector y = sampler.Gaussian(problem.m());
      const double lhs = kernels::serial::Dot(a.Apply(x), y);
      const double rhs = kernels::serial::Dot(x, a.ApplyAdjoint(y));
      const double scale = norm_a * std::max(Norm(x) * Norm(y), 1e-300);
      worst.Add(std::abs(lhs - rhs) / scale);
    }
    outcomes.push_back(Outcome("adjoint", worst.value, 1e-10));
  }

  {  // directional central differences of F*_{beta,M}
    Worst worst;
    for (int s = 0; s < options.samples; ++s) {
      const SmoothingPair beta = sampler.Beta();
      const PrimalDualPoint z = sampler.Any();
      PrimalDualPoint d = sampler.Any();
      const double dn = std::sqrt(SquaredNorm(d));
      if (dn == 0.0) continue;
      d = Axpy(1.0 / dn - 1.0, d, d);
      const PrimalDualPoint grad = GradSmooth(problem, beta, z);
      const double h = 1e-6;
      const double fd = (SmoothPart(problem, beta, Axpy(h, d, z)) -
                         SmoothPart(problem, beta, Axpy(-h, d, z))) /
                        (2.0 * h);
      const double exact = Dot(grad, d);
      const double scale = std::max({1.0, std::abs(exact), std::sqrt(SquaredNorm(grad))});
      worst.Add(std::abs(fd - exact) / scale);
    }
    outcomes.push_back(Outcome("gradient", worst.value, 1e-5));
  }

  {  // G_beta(z) >= 0 and G_beta(z) >= 1/2 ||z - zbar||^2_beta
    Worst negative;
    Worst lower;
    for (int s = 0; s < options.samples; ++s) {
      const SmoothingPair beta = sampler.Beta();
      const PrimalDualPoint z = sampler.Feasible();
      const GapEvaluation eval = EvaluateGap(problem, beta, z, false);
      negative.Add(-eval.gap);
      const double bound = 0.5 * WeightedNormSq(Difference(z, eval.zbar), beta);
      lower.Add((bound - eval.gap) / std::max(1.0, std::abs(eval.gap)));
    }
    outcomes.push_back(Outcome("nonnegativity", negative.value, 1e-9));
    outcomes.push_back(Outcome("gap-lower-bound", lower.value, 1e-9));
  }

  {  // G_beta'(z) >= (2 - max(beta'_x / beta_x, beta'_y / beta_y)) G_beta(z)
    Worst worst;
    for (int s = 0; s < options.samples; ++s) {
      SmoothingPair beta = sampler.Beta();
      SmoothingPair other = sampler.Beta();
      // The bound holds for max ratio >= 1; swapping always gets there.
      if (std::max(other.beta_x() / beta.beta_x(), other.beta_y() / beta.beta_y()) < 1.0) {
        std::swap(beta, other);
      }
      const PrimalDualPoint z = sampler.Feasible();
      const double g = Gap(problem, beta, z);
      const double g_other = Gap(problem, other, z);
      const double factor = 2.0 - std::max(other.beta_x() / beta.beta_x(),
                                           other.beta_y() / beta.beta_y());
      worst.Add((factor * g - g_other) / std::max({1.0, std::abs(g), std::abs(g_other)}));
    }
    outcomes.push_back(Outcome("beta-comparison", worst.value, 1e-9));
  }

  {  // dG/dbeta against central differences in beta_x and beta_y
    Worst worst;
    for (int s = 0; s < options.samples; ++s) {
      const SmoothingPair beta = sampler.Beta();
      const PrimalDualPoint z = sampler.Feasible();
      const auto [dx, dy] = GapBetaSensitivity(problem, beta, z);
      const double hx = 1e-6 * beta.beta_x();
      const double hy = 1e-6 * beta.beta_y();
      const double fdx = (Gap(problem, {beta.beta_x() + hx, beta.beta_y()}, z) -
                          Gap(problem, {beta.beta_x() - hx, beta.beta_y()}, z)) /
                         (2.0 * hx);
      const double fdy = (Gap(problem, {beta.beta_x(), beta.beta_y() + hy}, z) -
                          Gap(problem, {beta.beta_x(), beta.beta_y() - hy}, z)) /
                         (2.0 * hy);
      worst.Add(std::abs(fdx - dx) / std::max(1.0, std::abs(dx)));
      worst.Add(std::abs(fdy - dy) / std::max(1.0, std::abs(dy)));
    }
    outcomes.push_back(Outcome("beta-sensitivity", worst.value, 1e-4));
  }

  {  // F*(mid) <= (F*(z1) + F*(z2)) / 2 + ||z1 - z2||^2_beta / 8
    Worst worst;
    for (int s = 0; s < options.samples; ++s) {
      const SmoothingPair beta = sampler.Beta();
      const PrimalDualPoint z1 = sampler.Any();
      const PrimalDualPoint z2 = sampler.Any();
      PrimalDualPoint mid = z1;
      kernels::serial::Axpby(0.5, z2.x, 0.5, mid.x);
      kernels::serial::Axpby(0.5, z2.y, 0.5, mid.y);
      const double f1 = SmoothPart(problem, beta, z1);
      const double f2 = SmoothPart(problem, beta, z2);
      const double fm = SmoothPart(problem, beta, mid);
      const double rhs = 0.5 * (f1 + f2) + 0.125 * WeightedNormSq(Difference(z1, z2), beta);
      worst.Add((fm - rhs) / std::max({1.0, std::abs(f1), std::abs(f2)}));
    }
    outcomes.push_back(Outcome("weak-convexity", worst.value, 1e-9));
  }

  {  // ||grad(z1) - grad(z2)||_gamma <= L ||z1 - z2||_{gamma^-1}
    Worst worst;
    for (int s = 0; s < options.samples; ++s) {
      const SmoothingPair beta = sampler.Beta();
      const StepPair gamma(sampler.Uniform(0.1, 2.0), sampler.Uniform(0.1, 2.0));
      const PrimalDualPoint z1 = sampler.Any();
      const PrimalDualPoint z2 = sampler.Any();
      const PrimalDualPoint dg =
          Difference(GradSmooth(problem, beta, z1), GradSmooth(problem, beta, z2));
      const double lhs = std::sqrt(WeightedNormSq(dg, gamma));
      const double rhs = LipschitzConstant(beta, gamma, problem.op_norm()) *
                         std::sqrt(InverseWeightedNormSq(Difference(z1, z2), gamma));
      if (rhs > 0.0) worst.Add(lhs / rhs - 1.0);
    }
    outcomes.push_back(Outcome("lipschitz", worst.value, 1e-6));
  }
  return outcomes;
}

int CmdCheck(const SaddleProblem& problem, const CheckOptions& options,
             std::ostream& out, std::ostream& err) {
  const std::vector<CheckOutcome> outcomes = RunChecks(problem, options);
  std::string failed;
  for (const CheckOutcome& outcome : outcomes) {
    out << std::left << std::setw(18) << outcome.name << std::right
        << std::setw(12) << Short(outcome.margin) << "  "
        << (outcome.passed ? "PASS" : "FAIL") << "  " << outcome.detail << '\n';
    if (!outcome.passed && failed.empty()) failed = outcome.name;
  }
  if (!failed.empty()) {
    err << "check failed: " << failed << '\n';
    return kExitCheckFailure;
  }
  return kExitSuccess;
}

int CmdCheck(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<Loaded> loaded;
  try {
    loaded.emplace(LoadFromConfig(config, err));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  CheckOptions options;
  options.seed = config.seed;
  return CmdCheck(*loaded->problem, options, out, err);
}

}  // namespace scsdg::cli
