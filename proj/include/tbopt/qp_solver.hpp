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

#ifndef TBOPT_QP_SOLVER_HPP
#define TBOPT_QP_SOLVER_HPP

#include <string>
#include <vector>

#include "tbopt/subproblem.hpp"
#include "tbopt/types.hpp"

namespace tbopt {

enum class SolverStatus { kOptimal, kMaxIter, kNumericalFailure };

const char* to_string(SolverStatus status);

struct KktResiduals {
  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();
};

/// First-order operator-splitting solver. Each iteration alternates an
/// equality-constrained proximal step (one cached sparse LDLT factorization)
/// with a projection onto the product of simplex blocks and variable boxes,
/// plus an over-relaxed dual update. General inequality rows are converted to
/// equality rows with a nonnegative gap variable; single-variable rows become
/// box bounds. An active-set polish (attempted once the iterate is close and
/// again at termination) pivots to the exact active set and solves the
/// reduced KKT system directly; a validated polish ends the solve early.
/// With adaptive_rho off, the fixed-point step norm (merit_history) is
/// monotonically nonincreasing.
struct QpSettings {
  double tol = 1e-8;          ///< absolute primal, relative dual
  int max_iter = 50000;
  double rho = 1.0;           ///< initial penalty; adapted unless disabled
  double over_relax = 1.6;
  bool adaptive_rho = true;
  int check_interval = 25;
  bool scaling = true;
  int scaling_iters = 10;
  double reg = 1e-10;         ///< KKT dual-block regularization
  bool polish = true;
  bool record_merit = false;  ///< keep per-iteration fixed-point step norms
};

struct SubproblemSolution {
  std::vector<SimplexWeights> weights;
  std::vector<Eigen::VectorXd> dyn_slack;   ///< s_pos - s_neg per coupling
  std::vector<Eigen::VectorXd> ineq_slack;  ///< w per coupling
  Eigen::VectorXd xi;                       ///< full stacked solution
  double objective = 0.0;
  SolverStatus status = SolverStatus::kNumericalFailure;
  KktResiduals kkt_residuals;
  int iterations = 0;
  bool polished = false;
  std::vector<KktResiduals> residual_history;
  std::vector<double> merit_history;
  std::string message;

  double slack_l1() const;
};

SubproblemSolution solve(const ConvexSubproblem& sp, const QpSettings& settings);
SubproblemSolution solve(const ConvexSubproblem& sp, double tol = 1e-8, int max_iter = 50000);

}  // namespace tbopt

#endif  // TBOPT_QP_SOLVER_HPP
