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

#ifndef TBOPT_TBM_HPP
#define TBOPT_TBM_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tbopt/problem.hpp"
#include "tbopt/sampling.hpp"
#include "tbopt/types.hpp"

namespace tbopt {

struct TbmConfig {
  double mu = 1e4;
  TrustRegion trust_region;  ///< empty vectors: use the problem default
  SamplerConfig sampler;
  double tol_violation = 1e-4;
  int max_iterations = 500;
  double tr_shrink_factor = 0.5;
  bool tr_shrink_on_increase = false;
  double qp_tol = 1e-8;
  int qp_max_iter = 50000;
  int workers = 1;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;  ///< 1-based
  double cost = 0.0;
  double max_defect = 0.0;
  double max_ineq_violation = 0.0;
  double slack_l1 = 0.0;
  double objective = 0.0;
  double tr_scale = 1.0;
  double ms = 0.0;
  std::string qp_status;

  double max_violation() const { return std::max(max_defect, max_ineq_violation); }
};

struct SolveReport {
  std::vector<IterationRecord> records;
  Trajectory trajectory;
  bool converged = false;
  std::string failure;  ///< nonempty when a subproblem solve broke down
};

struct ViolationBreakdown {
  double defect = 0.0;
  double ineq = 0.0;

  double max() const { return std::max(defect, ineq); }
};

ViolationBreakdown violation_breakdown(const Trajectory& traj, const ProblemDefinition& problem);

/// Max over knots of the dynamics defect inf-norm and the positive part of
/// any constraint violation; zero exactly when the trajectory is feasible.
double violation(const Trajectory& traj, const ProblemDefinition& problem);

/// The problem's own cost: sum of squared stage residuals plus the squared
/// terminal residual.
double trajectory_cost(const Trajectory& traj, const ProblemDefinition& problem);

using IterationObserver = std::function<void(const IterationRecord&, const Trajectory&)>;

/// Writes one iteration record as a single JSON line with keys
/// {iter, cost, max_violation, slack_l1, objective, ms}.
void append_record_jsonl(std::ostream& out, const IterationRecord& rec);

/// Outer solve loop: at every knot draw samples around the iterate (knot 1
/// state-pinned, knot N states only), evaluate the problem on each sample,
/// build the interpolation subproblem, solve it, and adopt the interpolated
/// trajectory. Stops when the nonlinear violation drops below
/// cfg.tol_violation or the iteration budget runs out. Every step is
/// accepted; optionally the trust region shrinks when violation increased.
/// Sample evaluation fans out over cfg.workers threads with results
/// identical to a serial run.
SolveReport tbm_solve(const ProblemDefinition& problem, const Trajectory& initial_guess,
                      const TbmConfig& cfg, const IterationObserver& observer = nullptr,
                      const std::string& log_path = "");

}  // namespace tbopt

#endif  // TBOPT_TBM_HPP
