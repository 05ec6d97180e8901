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

#include "tbopt/tbm.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "tbopt/bundle.hpp"
#include "tbopt/qp_solver.hpp"
#include "tbopt/subproblem.hpp"
#include "tbopt/util/parallel.hpp"

namespace tbopt {

namespace {

TrustRegion scaled(const TrustRegion& tr, double scale) {
  return {tr.delta_x * scale, tr.delta_u * scale};
}

}  // namespace

void TbmConfig::validate() const {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("TbmConfig: mu must be positive");
  }
  if (!(tol_violation > 0.0)) {
    throw std::invalid_argument("TbmConfig: tol_violation must be positive");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("TbmConfig: max_iterations must be at least 1");
  }
  if (!(tr_shrink_factor > 0.0 && tr_shrink_factor <= 1.0)) {
    throw std::invalid_argument("TbmConfig: tr_shrink_factor must lie in (0, 1]");
  }
  if (!(qp_tol > 0.0) || qp_max_iter < 1) {
    throw std::invalid_argument("TbmConfig: subproblem tolerance/iterations invalid");
  }
  if (workers < 1) {
    throw std::invalid_argument("TbmConfig: workers must be at least 1");
  }
  sampler.validate();
}

ViolationBreakdown violation_breakdown(const Trajectory& traj, const ProblemDefinition& problem) {
  traj.validate();
  const auto N = traj.knot_count();
  ViolationBreakdown out;
  for (int k = 0; k + 1 < N; ++k) {
    Eigen::VectorXd fx;
    try {
      fx = problem.dynamics(traj.states[k], traj.controls[k]);
    } catch (const std::exception& e) {
      throw std::runtime_error("violation: dynamics failed at knot " + std::to_string(k + 1) +
                               ": " + e.what());
    }
    out.defect = std::max(out.defect, (traj.states[k + 1] - fx).lpNorm<Eigen::Infinity>());
    if (problem.n_c > 0) {
      Eigen::VectorXd c;
      try {
        c = problem.constraints(traj.states[k], traj.controls[k]);
      } catch (const std::exception& e) {
        throw std::runtime_error("violation: constraints failed at knot " +
                                 std::to_string(k + 1) + ": " + e.what());
      }
      out.ineq = std::max(out.ineq, std::max(0.0, -c.minCoeff()));
    }
  }
  return out;
}

double violation(const Trajectory& traj, const ProblemDefinition& problem) {
  return violation_breakdown(traj, problem).max();
}

double trajectory_cost(const Trajectory& traj, const ProblemDefinition& problem) {
  const auto N = traj.knot_count();
  double cost = 0.0;
  for (int k = 0; k + 1 < N; ++k) {
    cost += problem.stage_residual(k, traj.states[k], traj.controls[k]).squaredNorm();
  }
  cost += problem.terminal_residual(traj.states[N - 1]).squaredNorm();
  return cost;
}

void append_record_jsonl(std::ostream& out, const IterationRecord& rec) {
  char buf[360];
  std::snprintf(buf, sizeof(buf),
                "{\"iter\":%d,\"cost\":%.17g,\"max_violation\":%.17g,\"slack_l1\":%.17g,"
                "\"objective\":%.17g,\"ms\":%.3f}",
                rec.iteration, rec.cost, rec.max_violation(), rec.slack_l1, rec.objective,
                rec.ms);
  out << buf << '\n';
}

SolveReport tbm_solve(const ProblemDefinition& problem, const Trajectory& initial_guess,
                      const TbmConfig& cfg, const IterationObserver& observer,
                      const std::string& log_path) {
  problem.validate();
  cfg.validate();
  initial_guess.validate();
  if (initial_guess.knot_count() != problem.N || initial_guess.state_dim() != problem.n_x ||
      initial_guess.control_dim() != problem.n_u) {
    throw std::invalid_argument("tbm_solve: initial guess dimensions do not match the problem");
  }
  if ((initial_guess.states.front() - problem.x_init).lpNorm<Eigen::Infinity>() > 1e-9) {
    throw std::invalid_argument("tbm_solve: initial guess does not start at x_init");
  }

  TrustRegion base_tr =
      cfg.trust_region.delta_x.size() > 0 ? cfg.trust_region : problem.default_trust_region;
  base_tr.validate();
  if (base_tr.delta_x.size() != problem.n_x || base_tr.delta_u.size() != problem.n_u) {
    throw std::invalid_argument("tbm_solve: trust region dimensions do not match the problem");
  }

  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path, std::ios::trunc);
    if (!log) {
      throw std::runtime_error("tbm_solve: cannot open log file " + log_path);
    }
  }

  SolveReport report;
  Trajectory iterate = initial_guess;
  iterate.states.front() = problem.x_init;

  const int N = problem.N;
  double tr_scale = 1.0;
  double prev_violation = violation(iterate, problem);

  QpSettings qp_settings;
  qp_settings.tol = cfg.qp_tol;
  qp_settings.max_iter = cfg.qp_max_iter;

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    const TrustRegion tr = scaled(base_tr, tr_scale);

    std::vector<KnotBundle> bundles(N);
    parallel_for(N, cfg.workers, [&](int k) {
      SampleContext ctx;
      ctx.iteration = static_cast<std::uint64_t>(iter);
      ctx.knot = static_cast<std::uint64_t>(k);
      if (k == N - 1) {
        auto xs = sample_terminal_knot(iterate.states[k], tr, cfg.sampler, ctx);
        bundles[k] = assemble_terminal_bundle(xs, problem);
      } else {
        ctx.pinned_state = (k == 0);
        auto s = sample_knot(iterate.states[k], iterate.controls[k], tr, cfg.sampler, ctx);
        bundles[k] = assemble_bundle(s.x, s.u, problem, k);
      }
    });

    const ConvexSubproblem sp = transcribe(bundles, cfg.mu, problem.x_init);
    const SubproblemSolution sol = solve(sp, qp_settings);
    if (sol.status == SolverStatus::kNumericalFailure) {
      report.failure = "subproblem solve failed at iteration " + std::to_string(iter) +
                       (sol.message.empty() ? "" : ": " + sol.message);
      break;
    }

    Trajectory next = interpolated_trajectory(bundles, sol.weights);
    next.states.front() = problem.x_init;
    const ViolationBreakdown vb = violation_breakdown(next, problem);

    IterationRecord rec;
    rec.iteration = iter;
    rec.cost = trajectory_cost(next, problem);
    rec.max_defect = vb.defect;
    rec.max_ineq_violation = vb.ineq;
    rec.slack_l1 = sol.slack_l1();
    rec.objective = sol.objective;
    rec.tr_scale = tr_scale;
    rec.qp_status = to_string(sol.status);
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();

    iterate = std::move(next);
    report.records.push_back(rec);
    if (log.is_open()) {
      append_record_jsonl(log, rec);
    }
    if (observer) {
      observer(rec, iterate);
    }

    if (vb.max() < cfg.tol_violation) {
      report.converged = true;
      break;
    }
    if (cfg.tr_shrink_on_increase && vb.max() > prev_violation) {
      tr_scale *= cfg.tr_shrink_factor;
    }
    prev_violation = vb.max();
  }

  report.trajectory = std::move(iterate);
  return report;
}

}  // namespace tbopt
