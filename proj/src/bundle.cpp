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

#include "tbopt/bundle.hpp"

#include <stdexcept>
#include <string>

namespace tbopt {

namespace {

void check_finite(const Eigen::VectorXd& v, int knot, int sample, const char* evaluator) {
  if (!v.allFinite()) {
    throw std::runtime_error(std::string("assemble_bundle: evaluator '") + evaluator +
                             "' returned a non-finite value at knot " + std::to_string(knot) +
                             ", sample " + std::to_string(sample));
  }
}

void check_dim(const Eigen::VectorXd& v, Eigen::Index expected, int knot, int sample,
               const char* evaluator) {
  if (v.size() != expected) {
    throw std::invalid_argument(std::string("assemble_bundle: evaluator '") + evaluator +
                                "' returned dimension " + std::to_string(v.size()) +
                                ", expected " + std::to_string(expected) + " (knot " +
                                std::to_string(knot) + ", sample " + std::to_string(sample) + ")");
  }
}

}  // namespace

Eigen::VectorXd interpolate(const Eigen::MatrixXd& W, const SimplexWeights& alpha) {
  if (alpha.alpha.size() != W.cols()) {
    throw std::invalid_argument("interpolate: weight length " +
                                std::to_string(alpha.alpha.size()) +
                                " does not match sample count " + std::to_string(W.cols()));
  }
  return W * alpha.alpha;
}

KnotBundle assemble_bundle(const std::vector<Eigen::VectorXd>& samples_x,
                           const std::vector<Eigen::VectorXd>& samples_u,
                           const ProblemDefinition& problem, int knot) {
  const int m = static_cast<int>(samples_x.size());
  if (m < 1) {
    throw std::invalid_argument("assemble_bundle: needs at least one sample");
  }
  if (samples_u.size() != samples_x.size()) {
    throw std::invalid_argument("assemble_bundle: " + std::to_string(samples_x.size()) +
                                " state samples vs " + std::to_string(samples_u.size()) +
                                " control samples");
  }
  if (knot < 0 || knot > problem.N - 2) {
    throw std::invalid_argument("assemble_bundle: stage knot " + std::to_string(knot) +
                                " outside [0, " + std::to_string(problem.N - 2) + "]");
  }

  KnotBundle b;
  b.W_x.resize(problem.n_x, m);
  b.W_u.resize(problem.n_u, m);
  b.W_r.resize(problem.n_r, m);
  b.W_f.resize(problem.n_x, m);
  b.W_c.resize(problem.n_c, m);

  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd& x = samples_x[static_cast<size_t>(i)];
    const Eigen::VectorXd& u = samples_u[static_cast<size_t>(i)];
    if (x.size() != problem.n_x || u.size() != problem.n_u) {
      throw std::invalid_argument("assemble_bundle: sample " + std::to_string(i) +
                                  " has dimensions (" + std::to_string(x.size()) + ", " +
                                  std::to_string(u.size()) + "), expected (" +
                                  std::to_string(problem.n_x) + ", " +
                                  std::to_string(problem.n_u) + ")");
    }
    b.W_x.col(i) = x;
    b.W_u.col(i) = u;

    Eigen::VectorXd r = problem.stage_residual(knot, x, u);
    check_dim(r, problem.n_r, knot, i, "stage_residual");
    check_finite(r, knot, i, "stage_residual");
    b.W_r.col(i) = r;

    Eigen::VectorXd f = problem.dynamics(x, u);
    check_dim(f, problem.n_x, knot, i, "dynamics");
    check_finite(f, knot, i, "dynamics");
    b.W_f.col(i) = f;

    if (problem.n_c > 0) {
      Eigen::VectorXd c = problem.constraints(x, u);
      check_dim(c, problem.n_c, knot, i, "constraints");
      check_finite(c, knot, i, "constraints");
      b.W_c.col(i) = c;
    }
  }
  return b;
}

KnotBundle assemble_terminal_bundle(const std::vector<Eigen::VectorXd>& samples_x,
                                    const ProblemDefinition& problem) {
  const int m = static_cast<int>(samples_x.size());
  if (m < 1) {
    throw std::invalid_argument("assemble_terminal_bundle: needs at least one sample");
  }

  KnotBundle b;
  b.W_x.resize(problem.n_x, m);
  b.W_u.resize(0, m);
  b.W_r.resize(problem.n_r_terminal, m);
  b.W_f.resize(0, m);
  b.W_c.resize(0, m);

  const int knot = problem.N - 1;
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd& x = samples_x[static_cast<size_t>(i)];
    if (x.size() != problem.n_x) {
      throw std::invalid_argument("assemble_terminal_bundle: sample " + std::to_string(i) +
                                  " has dimension " + std::to_string(x.size()) + ", expected " +
                                  std::to_string(problem.n_x));
    }
    b.W_x.col(i) = x;

    Eigen::VectorXd r = problem.terminal_residual(x);
    check_dim(r, problem.n_r_terminal, knot, i, "terminal_residual");
    check_finite(r, knot, i, "terminal_residual");
    b.W_r.col(i) = r;
  }
  return b;
}

Trajectory interpolated_trajectory(const std::vector<KnotBundle>& bundles,
                                   const std::vector<SimplexWeights>& weights) {
  if (bundles.empty()) {
    throw std::invalid_argument("interpolated_trajectory: no bundles");
  }
  if (bundles.size() != weights.size()) {
    throw std::invalid_argument("interpolated_trajectory: " + std::to_string(bundles.size()) +
                                " bundles vs " + std::to_string(weights.size()) + " weight vectors");
  }
  const size_t N = bundles.size();
  std::vector<Eigen::VectorXd> xs(N);
  std::vector<Eigen::VectorXd> us(N - 1);
  for (size_t k = 0; k < N; ++k) {
    xs[k] = interpolate(bundles[k].W_x, weights[k]);
    if (k + 1 < N) {
      us[k] = interpolate(bundles[k].W_u, weights[k]);
    }
  }
  return Trajectory(std::move(xs), std::move(us));
}

}  // namespace tbopt
