/*
 Copyright 2026 The tbopt authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef TBOPT_RUN_IO_HPP
#define TBOPT_RUN_IO_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "tbopt/mppi.hpp"
#include "tbopt/problems.hpp"
#include "tbopt/tbm.hpp"

namespace tbopt {

/// Configuration problems (bad schema, bad values) carry the offending
/// field path in the message.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { kTbm, kMppi, kMpc };

const char* to_string(RunMode mode);

enum class LogLevel { kQuiet, kInfo, kDebug };

struct RunConfig {
  int version = 1;
  std::string problem_id;
  std::optional<std::string> mlp_weights;
  std::optional<DoubleIntegratorParams> di_params;
  std::optional<CartpoleParams> cartpole_params;
  std::optional<PendulumParams> pendulum_params;
  RunMode mode = RunMode::kTbm;
  TbmConfig tbm;
  MppiConfig mppi;
  int mpc_steps = 50;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int workers = 0;  ///< 0: TBOPT_WORKERS env var, else 1
};

/// Parses and validates a versioned JSON run configuration. Strict: unknown
/// fields are rejected, error messages name the offending field path.
RunConfig load_run_config(const std::string& path);

ProblemDefinition instantiate_problem(const RunConfig& cfg);

int effective_workers(const RunConfig& cfg);

/// Executes the configured mode and writes trajectory.csv, iterations.jsonl,
/// and summary.json into cfg.out_dir. Returns the process exit code:
/// 0 converged/completed, 2 finished without converging, 1 error.
int run(const RunConfig& cfg, LogLevel log_level = LogLevel::kInfo);

/// load_run_config + run, mapping configuration/IO errors to exit code 1
/// with a diagnostic on stderr.
int run_config_file(const std::string& path, LogLevel log_level = LogLevel::kInfo);

/// CSV with header k,x_0..x_{n_x-1},u_0..u_{n_u-1}; the final row's control
/// cells are empty; 17 significant digits so a round trip is bitwise exact.
void export_trajectory(const Trajectory& traj, const std::string& path);

Trajectory import_trajectory(const std::string& path);

/// One JSON line per iteration: {iter, cost, max_violation, slack_l1,
/// objective, ms}.
void export_iteration_plotdata(const SolveReport& report, const std::string& path);

}  // namespace tbopt

#endif  // TBOPT_RUN_IO_HPP
