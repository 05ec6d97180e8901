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

#ifndef TBOPT_BUNDLE_HPP
#define TBOPT_BUNDLE_HPP

#include <vector>

#include "tbopt/problem.hpp"
#include "tbopt/types.hpp"

namespace tbopt {

/// Convex combination of sample columns: returns W * alpha.
/// Throws std::invalid_argument when alpha's length differs from the
/// column count of W.
Eigen::VectorXd interpolate(const Eigen::MatrixXd& W, const SimplexWeights& alpha);

/// Builds the bundle for stage knot k (0-based, k in [0, N-2]): evaluates
/// r_k, f and c on every (x_i, u_i) sample pair and concatenates the results
/// columnwise. Evaluators must be pure; any non-finite output is a hard
/// error naming the knot, sample and evaluator.
KnotBundle assemble_bundle(const std::vector<Eigen::VectorXd>& samples_x,
                           const std::vector<Eigen::VectorXd>& samples_u,
                           const ProblemDefinition& problem, int knot);

/// Terminal-knot bundle: state samples only, W_r holds r_N values and
/// W_u/W_f/W_c are empty (zero rows).
KnotBundle assemble_terminal_bundle(const std::vector<Eigen::VectorXd>& samples_x,
                                    const ProblemDefinition& problem);

/// Recovers the trajectory x^(k) = W_x^(k) a^(k), u^(k) = W_u^(k) a^(k)
/// from per-knot bundles and weights (controls for non-terminal knots only).
Trajectory interpolated_trajectory(const std::vector<KnotBundle>& bundles,
                                   const std::vector<SimplexWeights>& weights);

}  // namespace tbopt

#endif  // TBOPT_BUNDLE_HPP
