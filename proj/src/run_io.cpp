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

#include "tbopt/run_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace tbopt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path.empty() ? what : path + ": " + what);
}

/// Tracks which keys of a JSON object were consumed so leftovers can be
/// reported as unknown fields with their full path.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      fail(path_.empty() ? "config" : path_, "expected an object");
    }
  }

  const json* get(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = get(key);
    if (v == nullptr) {
      fail(path_.empty() ? "config" : path_, "missing required field \"" + key + "\"");
    }
    return *v;
  }

  std::string sub(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (used_.count(it.key()) == 0) {
        fail(sub(it.key()), "unknown field");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Eigen::VectorXd as_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = as_number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

Eigen::VectorXd as_vector_sized(const json& v, const std::string& path, Eigen::Index size) {
  Eigen::VectorXd out = as_vector(v, path);
  if (out.size() != size) {
    fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(out.size()));
  }
  return out;
}

SamplerConfig parse_sampler(const json& j, const std::string& path) {
  Obj o(j, path);
  SamplerConfig cfg;
  if (const json* v = o.get("scheme")) {
    const std::string s = as_string(*v, o.sub("scheme"));
    if (s == "coordinate") {
      cfg.scheme = SampleScheme::kCoordinate;
    } else if (s == "gaussian") {
      cfg.scheme = SampleScheme::kGaussian;
    } else if (s == "uniform") {
      cfg.scheme = SampleScheme::kUniform;
    } else {
      fail(o.sub("scheme"), "expected one of \"coordinate\", \"gaussian\", \"uniform\"");
    }
  }
  if (const json* v = o.get("m_override")) {
    cfg.m_override = as_int(*v, o.sub("m_override"));
  }
  o.finish();
  return cfg;
}

TrustRegion parse_trust_region(const json& j, const std::string& path) {
  Obj o(j, path);
  TrustRegion tr;
  tr.delta_x = as_vector(o.require("delta_x"), o.sub("delta_x"));
  tr.delta_u = as_vector(o.require("delta_u"), o.sub("delta_u"));
  o.finish();
  if ((tr.delta_x.array() <= 0.0).any() || (tr.delta_u.array() <= 0.0).any()) {
    fail(path, "trust-region half-widths must be positive");
  }
  return tr;
}

TbmConfig parse_tbm(const json& j, const std::string& path) {
  Obj o(j, path);
  TbmConfig cfg;
  if (const json* v = o.get("mu")) cfg.mu = as_number(*v, o.sub("mu"));
  if (const json* v = o.get("tol_violation")) {
    cfg.tol_violation = as_number(*v, o.sub("tol_violation"));
  }
  if (const json* v = o.get("max_iterations")) {
    cfg.max_iterations = as_int(*v, o.sub("max_iterations"));
  }
  if (const json* v = o.get("tr_shrink_factor")) {
    cfg.tr_shrink_factor = as_number(*v, o.sub("tr_shrink_factor"));
  }
  if (const json* v = o.get("tr_shrink_on_increase")) {
    cfg.tr_shrink_on_increase = as_bool(*v, o.sub("tr_shrink_on_increase"));
  }
  if (const json* v = o.get("qp_tol")) cfg.qp_tol = as_number(*v, o.sub("qp_tol"));
  if (const json* v = o.get("qp_max_iter")) cfg.qp_max_iter = as_int(*v, o.sub("qp_max_iter"));
  if (const json* v = o.get("sampler")) cfg.sampler = parse_sampler(*v, o.sub("sampler"));
  if (const json* v = o.get("trust_region")) {
    cfg.trust_region = parse_trust_region(*v, o.sub("trust_region"));
  }
  o.finish();
  return cfg;
}

MppiConfig parse_mppi(const json& j, const std::string& path) {
  Obj o(j, path);
  MppiConfig cfg;
  if (const json* v = o.get("lambda")) cfg.lambda = as_number(*v, o.sub("lambda"));
  if (const json* v = o.get("m_samples")) cfg.m_samples = as_int(*v, o.sub("m_samples"));
  if (const json* v = o.get("noise_sigma")) {
    cfg.noise_sigma = as_vector(*v, o.sub("noise_sigma"));
  }
  if (const json* v = o.get("horizon")) cfg.horizon = as_int(*v, o.sub("horizon"));
  if (const json* v = o.get("shift_fill")) {
    const std::string s = as_string(*v, o.sub("shift_fill"));
    if (s == "repeat_last") {
      cfg.shift_fill = ShiftFill::kRepeatLast;
    } else if (s == "zero") {
      cfg.shift_fill = ShiftFill::kZero;
    } else {
      fail(o.sub("shift_fill"), "expected \"repeat_last\" or \"zero\"");
    }
  }
  o.finish();
  return cfg;
}

std::vector<Disk> parse_obstacles(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [x, y, radius] triples");
  std::vector<Disk> disks;
  disks.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Eigen::VectorXd row = as_vector_sized(j[i], p, 3);
    if (!(row[2] > 0.0)) fail(p, "radius must be positive");
    disks.push_back({row[0], row[1], row[2]});
  }
  return disks;
}

DoubleIntegratorParams parse_di_params(const json& j, const std::string& path) {
  Obj o(j, path);
  DoubleIntegratorParams p;
  if (const json* v = o.get("N")) p.N = as_int(*v, o.sub("N"));
  if (const json* v = o.get("dt")) p.dt = as_number(*v, o.sub("dt"));
  if (const json* v = o.get("x_init")) p.x_init = as_vector_sized(*v, o.sub("x_init"), 4);
  if (const json* v = o.get("x_goal")) p.x_goal = as_vector_sized(*v, o.sub("x_goal"), 4);
  if (const json* v = o.get("obstacles")) p.obstacles = parse_obstacles(*v, o.sub("obstacles"));
  if (const json* v = o.get("u_max")) p.u_max = as_number(*v, o.sub("u_max"));
  if (const json* v = o.get("w_pos")) p.w_pos = as_number(*v, o.sub("w_pos"));
  if (const json* v = o.get("w_vel")) p.w_vel = as_number(*v, o.sub("w_vel"));
  if (const json* v = o.get("w_u")) p.w_u = as_number(*v, o.sub("w_u"));
  if (const json* v = o.get("w_terminal")) p.w_terminal = as_number(*v, o.sub("w_terminal"));
  o.finish();
  return p;
}

CartpoleParams parse_cartpole_params(const json& j, const std::string& path) {
  Obj o(j, path);
  CartpoleParams p;
  if (const json* v = o.get("N")) p.N = as_int(*v, o.sub("N"));
  if (const json* v = o.get("dt")) p.dt = as_number(*v, o.sub("dt"));
  if (const json* v = o.get("cart_mass")) p.cart_mass = as_number(*v, o.sub("cart_mass"));
  if (const json* v = o.get("pole_mass")) p.pole_mass = as_number(*v, o.sub("pole_mass"));
  if (const json* v = o.get("pole_length")) p.pole_length = as_number(*v, o.sub("pole_length"));
  if (const json* v = o.get("gravity")) p.gravity = as_number(*v, o.sub("gravity"));
  if (const json* v = o.get("u_max")) p.u_max = as_number(*v, o.sub("u_max"));
  if (const json* v = o.get("w_pos")) p.w_pos = as_number(*v, o.sub("w_pos"));
  if (const json* v = o.get("w_vel")) p.w_vel = as_number(*v, o.sub("w_vel"));
  if (const json* v = o.get("w_angle")) p.w_angle = as_number(*v, o.sub("w_angle"));
  if (const json* v = o.get("w_rate")) p.w_rate = as_number(*v, o.sub("w_rate"));
  if (const json* v = o.get("w_u")) p.w_u = as_number(*v, o.sub("w_u"));
  if (const json* v = o.get("w_terminal")) p.w_terminal = as_number(*v, o.sub("w_terminal"));
  o.finish();
  return p;
}

PendulumParams parse_pendulum_params(const json& j, const std::string& path) {
  Obj o(j, path);
  PendulumParams p;
  if (const json* v = o.get("N")) p.N = as_int(*v, o.sub("N"));
  if (const json* v = o.get("dt")) p.dt = as_number(*v, o.sub("dt"));
  if (const json* v = o.get("mass")) p.mass = as_number(*v, o.sub("mass"));
  if (const json* v = o.get("length")) p.length = as_number(*v, o.sub("length"));
  if (const json* v = o.get("gravity")) p.gravity = as_number(*v, o.sub("gravity"));
  if (const json* v = o.get("u_max")) p.u_max = as_number(*v, o.sub("u_max"));
  if (const json* v = o.get("w_angle")) p.w_angle = as_number(*v, o.sub("w_angle"));
  if (const json* v = o.get("w_rate")) p.w_rate = as_number(*v, o.sub("w_rate"));
  if (const json* v = o.get("w_u")) p.w_u = as_number(*v, o.sub("w_u"));
  if (const json* v = o.get("w_terminal")) p.w_terminal = as_number(*v, o.sub("w_terminal"));
  o.finish();
  return p;
}

void parse_problem(const json& j, const std::string& path, RunConfig& cfg) {
  Obj o(j, path);
  cfg.problem_id = as_string(o.require("id"), o.sub("id"));
  if (const json* v = o.get("mlp_weights")) {
    cfg.mlp_weights = as_string(*v, o.sub("mlp_weights"));
  }
  const json* params = o.get("params");
  const std::string params_path = o.sub("params");
  o.finish();

  const auto& names = library_problem_names();
  if (std::find(names.begin(), names.end(), cfg.problem_id) == names.end()) {
    std::string known;
    for (const auto& n : names) {
      known += (known.empty() ? "" : ", ") + n;
    }
    fail(o.sub("id"), "unknown problem \"" + cfg.problem_id + "\" (known: " + known + ")");
  }
  if (cfg.problem_id == "cartpole_mlp" && !cfg.mlp_weights) {
    fail(o.sub("mlp_weights"), "required for problem \"cartpole_mlp\"");
  }
  if (params != nullptr) {
    if (cfg.problem_id == "double_integrator") {
      cfg.di_params = parse_di_params(*params, params_path);
    } else if (cfg.problem_id == "cartpole" || cfg.problem_id == "cartpole_mlp") {
      cfg.cartpole_params = parse_cartpole_params(*params, params_path);
    } else if (cfg.problem_id == "pendulum") {
      cfg.pendulum_params = parse_pendulum_params(*params, params_path);
    }
  }
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::kTbm:
      return "tbm";
    case RunMode::kMppi:
      return "mppi";
    case RunMode::kMpc:
      return "mpc";
  }
  return "?";
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }

  Obj root(j, "");
  RunConfig cfg;
  cfg.version = as_int(root.require("version"), "version");
  if (cfg.version != 1) {
    fail("version", "unsupported config version " + std::to_string(cfg.version) +
                        " (this build reads version 1)");
  }
  parse_problem(root.require("problem"), "problem", cfg);
  if (const json* v = root.get("mode")) {
    const std::string s = as_string(*v, "mode");
    if (s == "tbm") {
      cfg.mode = RunMode::kTbm;
    } else if (s == "mppi") {
      cfg.mode = RunMode::kMppi;
    } else if (s == "mpc") {
      cfg.mode = RunMode::kMpc;
    } else {
      fail("mode", "expected one of \"tbm\", \"mppi\", \"mpc\"");
    }
  }
  if (const json* v = root.get("tbm")) cfg.tbm = parse_tbm(*v, "tbm");
  if (const json* v = root.get("mppi")) cfg.mppi = parse_mppi(*v, "mppi");
  if (const json* v = root.get("mpc_steps")) cfg.mpc_steps = as_int(*v, "mpc_steps");
  if (const json* v = root.get("out_dir")) cfg.out_dir = as_string(*v, "out_dir");
  if (const json* v = root.get("seed")) cfg.seed = as_u64(*v, "seed");
  if (const json* v = root.get("workers")) {
    cfg.workers = as_int(*v, "workers");
    if (cfg.workers < 1) fail("workers", "must be at least 1");
  }
  root.finish();

  if (cfg.mode == RunMode::kTbm) {
    try {
      cfg.tbm.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("tbm: ") + e.what());
    }
  } else {
    if (!(cfg.mppi.lambda >= 0.0)) fail("mppi.lambda", "must be nonnegative");
    if (cfg.mppi.m_samples < 1) fail("mppi.m_samples", "must be at least 1");
    if (cfg.mppi.horizon < 1) fail("mppi.horizon", "must be at least 1");
    if (cfg.mppi.noise_sigma.size() > 0 && (cfg.mppi.noise_sigma.array() <= 0.0).any()) {
      fail("mppi.noise_sigma", "entries must be positive");
    }
    if (cfg.mode == RunMode::kMpc && cfg.mpc_steps < 1) {
      fail("mpc_steps", "must be at least 1");
    }
  }
  return cfg;
}

ProblemDefinition instantiate_problem(const RunConfig& cfg) {
  const std::string& id = cfg.problem_id;
  if (id == "double_integrator") {
    return cfg.di_params ? double_integrator_obstacles(*cfg.di_params)
                         : double_integrator_obstacles();
  }
  if (id == "cartpole") {
    return cfg.cartpole_params ? cartpole(*cfg.cartpole_params, true) : cartpole(true);
  }
  if (id == "cartpole_mlp") {
    if (!cfg.mlp_weights) {
      throw ConfigError("problem.mlp_weights: required for problem \"cartpole_mlp\"");
    }
    return cfg.cartpole_params ? cartpole(*cfg.cartpole_params, false, cfg.mlp_weights)
                               : cartpole(false, cfg.mlp_weights);
  }
  if (id == "pendulum") {
    return cfg.pendulum_params ? pendulum(*cfg.pendulum_params) : pendulum();
  }
  throw ConfigError("problem.id: unknown problem \"" + id + "\"");
}

int effective_workers(const RunConfig& cfg) {
  if (cfg.workers > 0) {
    return cfg.workers;
  }
  if (const char* env = std::getenv("TBOPT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 1 && v <= 4096) {
      return static_cast<int>(v);
    }
  }
  return 1;
}

void export_trajectory(const Trajectory& traj, const std::string& path) {
  traj.validate();
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("export_trajectory: cannot open " + path);
  }
  const int n_x = static_cast<int>(traj.states.front().size());
  const int n_u = traj.controls.empty() ? 0 : static_cast<int>(traj.controls.front().size());
  out << "k";
  for (int i = 0; i < n_x; ++i) out << ",x_" << i;
  for (int i = 0; i < n_u; ++i) out << ",u_" << i;
  out << "\n";
  const std::size_t N = traj.states.size();
  for (std::size_t k = 0; k < N; ++k) {
    out << k;
    for (int i = 0; i < n_x; ++i) out << "," << format_g17(traj.states[k][i]);
    for (int i = 0; i < n_u; ++i) {
      out << ",";
      if (k < traj.controls.size()) out << format_g17(traj.controls[k][i]);
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("export_trajectory: write failed for " + path);
  }
}

Trajectory import_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("import_trajectory: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("import_trajectory: empty file " + path);
  }
  int n_x = 0;
  int n_u = 0;
  {
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (col.rfind("x_", 0) == 0) ++n_x;
      if (col.rfind("u_", 0) == 0) ++n_u;
    }
  }
  if (n_x == 0) {
    throw std::runtime_error("import_trajectory: no state columns in " + path);
  }

  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    while (static_cast<int>(cells.size()) < 1 + n_x + n_u) cells.emplace_back();
    if (static_cast<int>(cells.size()) != 1 + n_x + n_u) {
      throw std::runtime_error("import_trajectory: bad column count in " + path);
    }
    Eigen::VectorXd x(n_x);
    for (int i = 0; i < n_x; ++i) x[i] = std::strtod(cells[1 + i].c_str(), nullptr);
    traj.states.push_back(std::move(x));
    bool has_u = false;
    for (int i = 0; i < n_u; ++i) has_u = has_u || !cells[1 + n_x + i].empty();
    if (has_u) {
      Eigen::VectorXd u(n_u);
      for (int i = 0; i < n_u; ++i) u[i] = std::strtod(cells[1 + n_x + i].c_str(), nullptr);
      traj.controls.push_back(std::move(u));
    }
  }
  traj.validate();
  return traj;
}

void export_iteration_plotdata(const SolveReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("export_iteration_plotdata: cannot open " + path);
  }
  for (const IterationRecord& rec : report.records) {
    append_record_jsonl(out, rec);
  }
  if (!out) {
    throw std::runtime_error("export_iteration_plotdata: write failed for " + path);
  }
}

int run(const RunConfig& cfg, LogLevel log_level) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();

  const ProblemDefinition problem = instantiate_problem(cfg);
  fs::create_directories(cfg.out_dir);
  const std::string traj_path = (fs::path(cfg.out_dir) / "trajectory.csv").string();
  const std::string iter_path = (fs::path(cfg.out_dir) / "iterations.jsonl").string();
  const std::string summary_path = (fs::path(cfg.out_dir) / "summary.json").string();

  json summary;
  summary["problem"] = cfg.problem_id;
  summary["mode"] = to_string(cfg.mode);
  summary["seed"] = cfg.seed;
  summary["workers"] = effective_workers(cfg);
  summary["trajectory_file"] = "trajectory.csv";
  summary["iterations_file"] = "iterations.jsonl";

  int exit_code = 0;
  if (cfg.mode == RunMode::kTbm) {
    TbmConfig tbm = cfg.tbm;
    tbm.sampler.rng_seed = cfg.seed;
    tbm.workers = effective_workers(cfg);
    IterationObserver observer;
    if (log_level == LogLevel::kDebug) {
      observer = [](const IterationRecord& rec, const Trajectory&) {
        std::fprintf(stdout, "iter %4d  cost %.6e  violation %.3e  slack %.3e  (%.1f ms)\n",
                     rec.iteration, rec.cost, rec.max_violation(), rec.slack_l1, rec.ms);
      };
    }
    const SolveReport report =
        tbm_solve(problem, problem.default_initial_guess(), tbm, observer, iter_path);
    export_trajectory(report.trajectory, traj_path);
    summary["converged"] = report.converged;
    summary["iterations"] = static_cast<int>(report.records.size());
    if (!report.records.empty()) {
      const IterationRecord& last = report.records.back();
      summary["final_cost"] = last.cost;
      summary["final_max_violation"] = last.max_violation();
      summary["final_slack_l1"] = last.slack_l1;
    }
    if (!report.failure.empty()) {
      summary["failure"] = report.failure;
      exit_code = 1;
    } else {
      exit_code = report.converged ? 0 : 2;
    }
  } else {
    MppiConfig mppi = cfg.mppi;
    mppi.rng_seed = cfg.seed;
    mppi.workers = effective_workers(cfg);
    if (mppi.noise_sigma.size() == 0) {
      mppi.noise_sigma = Eigen::VectorXd::Ones(problem.n_u);
    }
    if (cfg.mode == RunMode::kMppi) {
      MppiDiagnostics diag;
      const ControlPolicy nominal = ControlPolicy::zeros(mppi.horizon, problem.n_u);
      const ControlPolicy updated = mppi_update(nominal, problem.x_init, problem, mppi, &diag, 0);
      const RolloutResult ro = rollout(updated, problem.x_init, problem);
      export_trajectory(ro.trajectory, traj_path);
      std::ofstream out(iter_path, std::ios::trunc);
      IterationRecord rec;
      rec.iteration = 1;
      rec.cost = ro.cost;
      rec.objective = diag.best_cost;
      append_record_jsonl(out, rec);
      summary["converged"] = ro.finite;
      summary["iterations"] = 1;
      summary["final_cost"] = ro.cost;
      summary["best_sample_cost"] = diag.best_cost;
      summary["effective_samples"] = diag.effective_samples;
      exit_code = ro.finite ? 0 : 2;
    } else {
      const MpcResult res = mpc_run(problem, problem.x_init, mppi, cfg.mpc_steps);
      export_trajectory(res.executed, traj_path);
      std::ofstream out(iter_path, std::ios::trunc);
      for (std::size_t s = 0; s < res.diagnostics.size(); ++s) {
        IterationRecord rec;
        rec.iteration = static_cast<int>(s) + 1;
        rec.cost = res.diagnostics[s].best_cost;
        rec.objective = res.diagnostics[s].best_cost;
        append_record_jsonl(out, rec);
      }
      summary["converged"] = true;
      summary["iterations"] = static_cast<int>(res.diagnostics.size());
      summary["final_state_norm"] = res.executed.states.back().norm();
      exit_code = 0;
    }
  }

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  summary["wall_ms"] = wall_ms;
  summary["exit_code"] = exit_code;
  {
    std::ofstream out(summary_path, std::ios::trunc);
    if (!out) {
      throw std::runtime_error("run: cannot open " + summary_path);
    }
    out << summary.dump(2) << "\n";
  }
  if (log_level != LogLevel::kQuiet) {
    std::fprintf(stdout, "%s %s: %s in %d iterations (%.0f ms), outputs in %s\n",
                 to_string(cfg.mode), cfg.problem_id.c_str(),
                 exit_code == 0 ? "done" : (exit_code == 2 ? "not converged" : "failed"),
                 summary["iterations"].get<int>(), wall_ms, cfg.out_dir.c_str());
  }
  return exit_code;
}

int run_config_file(const std::string& path, LogLevel log_level) {
  try {
    return run(load_run_config(path), log_level);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace tbopt
