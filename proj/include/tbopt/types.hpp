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

#ifndef TBOPT_TYPES_HPP
#define TBOPT_TYPES_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tbopt {

/// Discrete-time trajectory: N states x^(1:N) and N-1 controls u^(1:N-1).
/// All state vectors share one dimension, all control vectors share one
/// dimension. Knot indices are 0-based in code.
struct Trajectory {
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> controls;

  Trajectory() = default;
  Trajectory(std::vector<Eigen::VectorXd> xs, std::vector<Eigen::VectorXd> us);

  int knot_count() const { return static_cast<int>(states.size()); }
  int state_dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
  int control_dim() const { return controls.empty() ? 0 : static_cast<int>(controls.front().size()); }

  /// Throws std::invalid_argument if the knot structure is inconsistent.
  void validate() const;
};

/// Interpolation weights on the standard simplex: alpha >= -eps entrywise,
/// entries summing to 1 within eps.
struct SimplexWeights {
  Eigen::VectorXd alpha;

  SimplexWeights() = default;
  explicit SimplexWeights(Eigen::VectorXd a) : alpha(std::move(a)) {}

  int size() const { return static_cast<int>(alpha.size()); }

  static constexpr double kDefaultFeasTol = 1e-8;

  bool is_valid(double eps = kDefaultFeasTol) const;
  /// Throws std::invalid_argument with the violation when invalid.
  void validate(double eps = kDefaultFeasTol) const;
};

/// Per-knot sample bundle: inputs W_x, W_u and evaluator outputs W_r, W_f,
/// W_c stored dense, one column per sample. Terminal-knot bundles carry
/// zero-row W_u/W_f/W_c and a terminal-residual W_r.
struct KnotBundle {
  Eigen::MatrixXd W_x;
  Eigen::MatrixXd W_u;
  Eigen::MatrixXd W_r;
  Eigen::MatrixXd W_f;
  Eigen::MatrixXd W_c;

  int sample_count() const { return static_cast<int>(W_x.cols()); }
  bool is_terminal() const { return W_f.rows() == 0; }

  /// Checks the all-columns-agree invariant (every matrix has m columns).
  void validate() const;
};

}  // namespace tbopt

#endif  // TBOPT_TYPES_HPP
