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

// Command implementations behind the scsdg executable. Each command returns
// the process exit code and writes to the given streams, so tests can drive
// them in-process.

#ifndef SCSDG_CLI_HPP_
#define SCSDG_CLI_HPP_

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "scsdg/core.hpp"
#include "scsdg/ingestion.hpp"
#include "scsdg/solver.hpp"

namespace scsdg::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitCheckFailure = 3;

inline constexpr const char* kDataDirEnv = "SCSDG_DATA_DIR";
inline constexpr const char* kCsvHeader =
    "algo,iter,elapsed_s,gap_beta0,gap_betak,step_norm,restarted,epoch";

enum class Algorithm { kProxGrad, kAccelerated, kRestarted, kPdhg, kRapdhg };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {
    Algorithm::kProxGrad, Algorithm::kAccelerated, Algorithm::kRestarted,
    Algorithm::kPdhg, Algorithm::kRapdhg};

// pg, apg, rapg, pdhg, rapdhg.
const char* ToString(Algorithm algorithm);
std::optional<Algorithm> AlgorithmFromString(std::string_view name);

struct RunConfig {
  Algorithm algorithm = Algorithm::kRestarted;
  std::string problem_path;
  std::int64_t max_iters = 10000;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  // solve: CSV file (empty: none). bench: output directory.
  std::string history_path;
  std::optional<double> b;
  std::optional<double> p_prime;
  std::optional<double> t;
  std::optional<double> beta0;
  std::optional<double> tau;
  std::optional<double> sigma;
  int stride = 1;
  // Log gap_beta0 at ReportingBeta(||A||) for every algorithm.
  bool report_beta = false;
};

// The given path if it exists, else the same name under $SCSDG_DATA_DIR,
// else under the bundled data directory. Returns the input unchanged when
// nothing matches.
std::string ResolveDataPath(const std::string& path);
// $SCSDG_DATA_DIR, or the bundled data directory when unset.
std::string DataDirectory();

SolveResult RunAlgorithm(const SaddleProblem& problem, const PrimalDualPoint& z0,
                         const RunConfig& config,
                         const IterationObserver& observer = {});

// Writes the convergence CSV, flushing every kFlushEvery rows.
class HistoryWriter {
 public:
  static constexpr int kFlushEvery = 100;

  explicit HistoryWriter(const std::string& path);
  void Write(std::string_view algo, const ConvergenceRecord& record);
  void Flush() { out_.flush(); }

 private:
  std::ofstream out_;
  int pending_ = 0;
};

std::string FormatRecord(std::string_view algo, const ConvergenceRecord& record);

int CmdSolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdBench(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckOutcome {
  std::string name;
  // Distance to failure; negative means failed.
  double margin = 0.0;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 42;
  int samples = 20;
};

// Invariant suite on seeded random points: adjoint consistency, gradient
// against central differences, gap nonnegativity, gap lower bound
// 1/2 ||z - zbar||^2_beta, beta-comparison inequality, beta sensitivity,
// weak convexity and the Lipschitz bound.
std::vector<CheckOutcome> RunChecks(const SaddleProblem& problem,
                                    const CheckOptions& options);

int CmdCheck(const SaddleProblem& problem, const CheckOptions& options,
             std::ostream& out, std::ostream& err);
int CmdCheck(const RunConfig& config, std::ostream& out, std::ostream& err);

inline constexpr const char* kQssp30Url =
    "https://cblib.zib.de/download/all/qssp30.cbf.gz";
inline constexpr std::size_t kQssp30Vars = 7565;
inline constexpr std::size_t kQssp30Rows = 3691 + 3 * 1891;

// Throws unless the program has the published qssp30 dimensions.
void VerifyQssp30(const ConicProgram& program);

// Downloads url (gzip-compressed CBF), inflates it, checks it with verify
// and writes the CBF text to destination.
void FetchCbf(const std::string& url, const std::string& destination,
              const std::function<void(const ConicProgram&)>& verify);

int CmdFetchQssp30(const std::string& url, const std::string& directory,
                   std::ostream& out, std::ostream& err);

}  // namespace scsdg::cli

#endif  // SCSDG_CLI_HPP_
