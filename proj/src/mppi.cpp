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

#include "tbopt/mppi.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "tbopt/simplex.hpp"
#include "tbopt/util/parallel.hpp"
#include "tbopt/util/rng.hpp"

namespace tbopt {

ControlPolicy ControlPolicy::zeros(int horizon, int n_u) {
  ControlPolicy p;
  p.controls.assign(horizon, Eigen::VectorXd::Zero(n_u));
  return p;
}

void MppiConfig::validate() const {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("MppiConfig: lambda must be nonnegative");
  }
  if (m_samples < 1) {
    throw std::invalid_argument("MppiConfig: m_samples must be at least 1");
  }
  if (horizon < 1) {
    throw std::invalid_argument("MppiConfig: horizon must be at least 1");
  }
  if (noise_sigma.size() == 0 || (noise_sigma.array() <= 0.0).any()) {
    throw std::invalid_argument("MppiConfig: noise_sigma must be positive per channel");
  }
}

RolloutResult rollout(const ControlPolicy& policy, const Eigen::VectorXd& x0,
                      const ProblemDefinition& problem) {
  if (x0.size() != problem.n_x) {
    throw std::invalid_argument("rollout: x0 has length " + std::to_string(x0.size()) +
                                ", problem expects " + std::to_string(problem.n_x));
  }
  const int H = policy.horizon();
  RolloutResult out;
  out.trajectory.states.reserve(H + 1);
  out.trajectory.controls.reserve(H);
  out.trajectory.states.push_back(x0);

  Eigen::VectorXd x = x0;
  for (int k = 0; k < H; ++k) {
    const Eigen::VectorXd& u = policy.controls[k];
    if (u.size() != problem.n_u) {
      throw std::invalid_argument("rollout: control " + std::to_string(k + 1) +
                                  " has wrong dimension");
    }
    out.trajectory.controls.push_back(u);
    if (out.finite) {
      out.cost += problem.stage_residual(k, x, u).squaredNorm();
      Eigen::VectorXd next = problem.dynamics(x, u);
      if (next.size() != problem.n_x || !next.allFinite()) {
        out.finite = false;
      } else {
        x = std::move(next);
      }
    }
    out.trajectory.states.push_back(x);
  }
  if (out.finite) {
    out.cost += problem.terminal_residual(x).squaredNorm();
  } else {
    out.cost = std::numeric_limits<double>::infinity();
  }
  return out;
}

ControlPolicy mppi_update(const ControlPolicy& nominal, const Eigen::VectorXd& x0,
                          const ProblemDefinition& problem, const MppiConfig& cfg,
                          MppiDiagnostics* diag, std::uint64_t step_index) {
  cfg.validate();
  if (nominal.horizon() != cfg.horizon) {
    throw std::invalid_argument("mppi_update: nominal policy horizon " +
                                std::to_string(nominal.horizon()) + " differs from configured " +
                                std::to_string(cfg.horizon));
  }
  if (cfg.noise_sigma.size() != problem.n_u) {
    throw std::invalid_argument("mppi_update: noise_sigma dimension mismatch");
  }

  const int m = cfg.m_samples;
  std::vector<ControlPolicy> samples(m);
  std::mt19937_64 gen(derive_stream(cfg.rng_seed, step_index, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i + 1 < m; ++i) {
    samples[i].controls.reserve(cfg.horizon);
    for (int k = 0; k < cfg.horizon; ++k) {
      Eigen::VectorXd u = nominal.controls[k];
      for (int j = 0; j < problem.n_u; ++j) {
        u(j) += cfg.noise_sigma(j) * normal(gen);
      }
      samples[i].controls.push_back(std::move(u));
    }
  }
  samples[m - 1] = nominal;

  Eigen::VectorXd costs(m);
  parallel_for(m, cfg.workers, [&](int i) {
    costs(i) = rollout(samples[i], x0, problem).cost;
  });

  Eigen::VectorXd weights;
  try {
    weights = solve_entropy_regularized(costs, cfg.lambda);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("mppi_update: every rollout diverged: ") + e.what());
  }

  int best = 0;
  costs.minCoeff(&best);
  if (diag != nullptr) {
    diag->costs = costs;
    diag->weights = weights;
    diag->best_index = best;
    diag->best_cost = costs(best);
    diag->effective_samples = 1.0 / weights.squaredNorm();
  }

  int heaviest = 0;
  if (weights.maxCoeff(&heaviest) == 1.0 && weights.lpNorm<1>() == 1.0) {
    return samples[heaviest];
  }

  ControlPolicy updated = ControlPolicy::zeros(cfg.horizon, problem.n_u);
  for (int i = 0; i < m; ++i) {
    if (weights(i) == 0.0) {
      continue;
    }
    for (int k = 0; k < cfg.horizon; ++k) {
      updated.controls[k] += weights(i) * samples[i].controls[k];
    }
  }
  return updated;
}

MpcResult mpc_run(const ProblemDefinition& problem, const Eigen::VectorXd& x0,
                  const MppiConfig& cfg, int steps) {
  cfg.validate();
  if (steps < 1) {
    throw std::invalid_argument("mpc_run: steps must be at least 1");
  }

  MpcResult result;
  result.executed.states.push_back(x0);
  ControlPolicy nominal = ControlPolicy::zeros(cfg.horizon, problem.n_u);
  Eigen::VectorXd x = x0;

  for (int s = 0; s < steps; ++s) {
    MppiDiagnostics diag;
    nominal = mppi_update(nominal, x, problem, cfg, &diag, static_cast<std::uint64_t>(s));
    result.diagnostics.push_back(std::move(diag));

    const Eigen::VectorXd u = nominal.controls.front();
    x = problem.dynamics(x, u);
    if (!x.allFinite()) {
      throw std::runtime_error("mpc_run: dynamics diverged at step " + std::to_string(s + 1));
    }
    result.executed.controls.push_back(u);
    result.executed.states.push_back(x);

    for (int k = 0; k + 1 < cfg.horizon; ++k) {
      nominal.controls[k] = nominal.controls[k + 1];
    }
    if (cfg.shift_fill == ShiftFill::kZero) {
      nominal.controls.back().setZero();
    }
  }
  return result;
}

}  // namespace tbopt
