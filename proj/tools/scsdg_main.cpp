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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "scsdg/cli.hpp"

namespace {

using scsdg::cli::RunConfig;

void AddOptional(CLI::App* app, const std::string& flag,
                 std::optional<double>& target, const std::string& help) {
  app->add_option_function<double>(
      flag, [&target](const double& value) { target = value; }, help);
}

void AddRunOptions(CLI::App* app, RunConfig& config, std::string& algo) {
  app->add_option("--problem", config.problem_path,
                  "Problem file (.cbf or native); also looked up in $SCSDG_DATA_DIR")
      ->required();
  app->add_option("--algo", algo, "pg | apg | rapg | pdhg | rapdhg");
  app->add_option("--max-iters", config.max_iters, "Iteration budget");
  app->add_option("--tol", config.tol, "Stop once gap_beta0 <= tol");
  app->add_option("--seed", config.seed, "Seed for power iteration and checks");
  app->add_option("--history", config.history_path,
                  "solve: CSV path; bench: output directory");
  AddOptional(app, "--b", config.b, "Schedule offset b");
  AddOptional(app, "--p-prime", config.p_prime, "Exponent p' of pg");
  AddOptional(app, "--t", config.t, "Momentum parameter t of apg/rapg");
  AddOptional(app, "--beta0", config.beta0, "Initial smoothing (both blocks)");
  AddOptional(app, "--tau", config.tau, "PDHG primal step");
  AddOptional(app, "--sigma", config.sigma, "PDHG dual step");
  app->add_option("--stride", config.stride, "Evaluate the gap every N iterations");
  app->add_flag("--report-beta", config.report_beta,
                "Log gap_beta0 at the shared beta = 0.05 ||A||");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-point solver based on the self-centered smoothed gap"};
  app.require_subcommand(1);

  RunConfig solve_config;
  std::string solve_algo = "rapg";
  CLI::App* solve = app.add_subcommand("solve", "Solve one problem");
  AddRunOptions(solve, solve_config, solve_algo);

  RunConfig bench_config;
  std::string bench_algo = "rapg";
  CLI::App* bench = app.add_subcommand("bench", "Run all five algorithms");
  AddRunOptions(bench, bench_config, bench_algo);

  RunConfig check_config;
  CLI::App* check = app.add_subcommand("check", "Run the invariant checks");
  check->add_option("--problem", check_config.problem_path, "Problem file")->required();
  check->add_option("--seed", check_config.seed, "Seed for the random points");

  std::string url = scsdg::cli::kQssp30Url;
  std::string directory = scsdg::cli::DataDirectory();
  CLI::App* fetch = app.add_subcommand("fetch-qssp30", "Download qssp30.cbf");
  fetch->add_option("--url", url, "Source of the gzip-compressed CBF file");
  fetch->add_option("--dir", directory, "Destination directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? scsdg::cli::kExitSuccess : scsdg::cli::kExitUsage;
  }

  auto resolve_algo = [](const std::string& name, RunConfig& config) {
    const auto algorithm = scsdg::cli::AlgorithmFromString(name);
    if (!algorithm) {
      std::cerr << "error: unknown algorithm '" << name << "'\n";
      return false;
    }
    config.algorithm = *algorithm;
    return true;
  };

  if (*solve) {
    if (!resolve_algo(solve_algo, solve_config)) return scsdg::cli::kExitUsage;
    return scsdg::cli::CmdSolve(solve_config, std::cout, std::cerr);
  }
  if (*bench) {
    if (!resolve_algo(bench_algo, bench_config)) return scsdg::cli::kExitUsage;
    return scsdg::cli::CmdBench(bench_config, std::cout, std::cerr);
  }
  if (*check) return scsdg::cli::CmdCheck(check_config, std::cout, std::cerr);
  return scsdg::cli::CmdFetchQssp30(url, directory, std::cout, std::cerr);
}
