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

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tbopt/run_io.hpp"

namespace {

tbopt::LogLevel parse_log_level(const std::string& s) {
  if (s == "quiet") return tbopt::LogLevel::kQuiet;
  if (s == "debug") return tbopt::LogLevel::kDebug;
  return tbopt::LogLevel::kInfo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tbopt: sampling-based trajectory optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string log_level = "info";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> max_iter;
  std::optional<double> tol;

  CLI::App* solve = app.add_subcommand("solve", "Run the solve described by a config file");
  solve->add_option("config", config_path, "JSON run configuration")->required();
  solve->add_option("--out", out_dir, "Output directory (overrides the config)");
  solve->add_option("--seed", seed, "RNG seed (overrides the config)");
  solve->add_option("--workers", workers, "Worker thread count (overrides the config)")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", max_iter, "Iteration budget (overrides the config)")
      ->check(CLI::PositiveNumber);
  solve->add_option("--tol", tol, "Violation tolerance (overrides the config)");
  solve->add_option("--log-level", log_level, "quiet, info, or debug")
      ->check(CLI::IsMember({"quiet", "info", "debug"}));

  CLI::App* list = app.add_subcommand("list-problems", "List the built-in problems");

  CLI::App* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config_path, "JSON run configuration")->required();

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const std::string& name : tbopt::library_problem_names()) {
      std::puts(name.c_str());
    }
    return 0;
  }

  if (validate->parsed()) {
    try {
      tbopt::load_run_config(config_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
    std::printf("%s: valid\n", config_path.c_str());
    return 0;
  }

  try {
    tbopt::RunConfig cfg = tbopt::load_run_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (max_iter) cfg.tbm.max_iterations = *max_iter;
    if (tol) cfg.tbm.tol_violation = *tol;
    if (cfg.mode == tbopt::RunMode::kTbm && (max_iter || tol)) {
      cfg.tbm.validate();
    }
    return tbopt::run(cfg, parse_log_level(log_level));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
