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

#ifndef TBOPT_PROBLEM_HPP
#define TBOPT_PROBLEM_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "tbopt/types.hpp"

namespace tbopt {

/// Per-coordinate sampling half-widths, split into state and control blocks.
/// All entries must be strictly positive.
struct TrustRegion {
  Eigen::VectorXd delta_x;
  Eigen::VectorXd delta_u;

  void validate() const;
};

/// A trajectory optimization problem described purely through value
/// evaluators. There are deliberately no derivative entry points: the
/// solver only ever needs f, r and c values.
///
/// Conventions:
///  - dynamics:           x_next = f(x, u)
///  - stage_residual:     r_k(x, u), k in [0, N-2]; stage cost is |r_k|^2
///  - terminal_residual:  r_N(x);    terminal cost is |r_N|^2
///  - constraints:        c(x, u) with c >= 0 feasible, applied at knots
///                        0..N-2; n_c == 0 means unconstrained
struct ProblemDefinition {
  std::string name;

  int n_x = 0;
  int n_u = 0;
  int n_r = 0;           ///< stage residual dimension
  int n_r_terminal = 0;  ///< terminal residual dimension
  int n_c = 0;           ///< constraint rows (0 = none)
  int N = 0;             ///< knot count
  double dt = 0.0;

  Eigen::VectorXd x_init;

  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> dynamics;
  std::function<Eigen::VectorXd(int, const Eigen::VectorXd&, const Eigen::VectorXd&)> stage_residual;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> terminal_residual;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> constraints;

  TrustRegion default_trust_region;
  std::function<Trajectory()> default_initial_guess;

  /// Throws std::invalid_argument when dimensions or evaluators are
  /// missing/inconsistent.
  void validate() const;
};

/// Initial guess helper: states linearly interpolated from x_init to
/// x_goal, controls all zero.
Trajectory interpolated_guess(const Eigen::VectorXd& x_init, const Eigen::VectorXd& x_goal, int N,
                              int n_u);

}  // namespace tbopt

#endif  // TBOPT_PROBLEM_HPP
