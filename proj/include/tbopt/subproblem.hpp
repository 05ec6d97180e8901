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

#ifndef TBOPT_SUBPROBLEM_HPP
#define TBOPT_SUBPROBLEM_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "tbopt/bundle.hpp"

namespace tbopt {

/// Maps knot indices to contiguous blocks of the stacked decision vector
/// xi = [alpha^(1..N); s_pos^(1..N-1); s_neg^(1..N-1); w^(1..N-1)].
struct VariableLayout {
  std::vector<int> alpha_offset;
  std::vector<int> alpha_size;
  std::vector<int> s_pos_offset;
  std::vector<int> s_neg_offset;
  std::vector<int> w_offset;
  int n_x = 0;
  int n_c = 0;
  int total = 0;

  int knot_count() const { return static_cast<int>(alpha_offset.size()); }
};

/// Canonical convex QP
///   minimize    xi' P xi + q' xi
///   subject to  A_eq xi = b_eq,  A_ineq xi >= b_ineq.
/// P is block-diagonal with PSD Gram blocks, so the quadratic form is
/// written without the conventional 1/2 factor.
struct ConvexSubproblem {
  Eigen::SparseMatrix<double> P;
  Eigen::VectorXd q;
  Eigen::SparseMatrix<double> A_eq;
  Eigen::VectorXd b_eq;
  Eigen::SparseMatrix<double> A_ineq;
  Eigen::VectorXd b_ineq;
  VariableLayout layout;

  double objective_at(const Eigen::VectorXd& xi) const;
  void validate() const;
};

/// Builds the per-iteration QP from the knot bundles:
///   objective  sum_k |W_r^(k) alpha^(k)|^2 + mu sum_k 1'(s_pos + s_neg + w)
///   equalities W_x^(k+1) alpha^(k+1) - W_f^(k) alpha^(k) - s_pos^(k) + s_neg^(k) = 0,
///              1' alpha^(k) = 1
///   inequalities W_c^(k) alpha^(k) + w^(k) >= 0, alpha >= 0, s >= 0, w >= 0.
/// The initial condition is structural: knot 1 must have been sampled with
/// its state pinned, so every column of its W_x equals x_init exactly and
/// any simplex-feasible alpha reproduces x_init. Throws std::invalid_argument
/// when that fails or when bundle dimensions are inconsistent.
ConvexSubproblem transcribe(const std::vector<KnotBundle>& bundles, double mu,
                            const Eigen::VectorXd& x_init);

/// Writes the QP as self-describing JSON (dense row-major matrices plus the
/// variable layout) for cross-checking against external solvers.
void dump_subproblem_json(const ConvexSubproblem& sp, const std::string& path);

}  // namespace tbopt

#endif  // TBOPT_SUBPROBLEM_HPP
