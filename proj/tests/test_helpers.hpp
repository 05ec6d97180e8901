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

#ifndef TBOPT_TESTS_TEST_HELPERS_HPP
#define TBOPT_TESTS_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "tbopt/problem.hpp"
#include "tbopt/types.hpp"

namespace tbopt::testutil {

/// 1-D integrator with a simple quadratic cost pulling x toward 1 and a
/// |u| <= 2 box; small enough to reason about by hand.
inline ProblemDefinition make_scalar_problem(int N = 3) {
  ProblemDefinition p;
  p.name = "scalar";
  p.n_x = 1;
  p.n_u = 1;
  p.n_r = 2;
  p.n_r_terminal = 1;
  p.n_c = 2;
  p.N = N;
  p.dt = 0.1;
  p.x_init = Eigen::VectorXd::Zero(1);
  p.dynamics = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(x + 0.1 * u);
  };
  p.stage_residual = [](int, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd r(2);
    r << 0.3 * (x[0] - 1.0), 0.2 * u[0];
    return r;
  };
  p.terminal_residual = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(1);
    r << x[0] - 1.0;
    return r;
  };
  p.constraints = [](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
    Eigen::VectorXd c(2);
    c << 2.0 - u[0], 2.0 + u[0];
    return c;
  };
  p.default_trust_region.delta_x = Eigen::VectorXd::Constant(1, 1.0);
  p.default_trust_region.delta_u = Eigen::VectorXd::Constant(1, 1.0);
  const int knots = p.N;
  const Eigen::VectorXd x0 = p.x_init;
  p.default_initial_guess = [knots, x0]() {
    Trajectory traj;
    for (int k = 0; k < knots; ++k) traj.states.push_back(x0);
    for (int k = 0; k + 1 < knots; ++k) traj.controls.push_back(Eigen::VectorXd::Zero(1));
    return traj;
  };
  return p;
}

/// Random affine problem instance: f, r, c are all affine, constraints are
/// slack enough to hold everywhere near the feasible rollout, so the rolled
/// out guess is feasible and interpolation represents every map exactly.
inline ProblemDefinition make_affine_problem(std::mt19937_64& gen, int n_x, int n_u, int N) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto rand_matrix = [&](int rows, int cols, double scale) {
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) M(i, j) = scale * unif(gen);
    }
    return M;
  };
  auto rand_vector = [&](int rows, double scale) {
    Eigen::VectorXd v(rows);
    for (int i = 0; i < rows; ++i) v[i] = scale * unif(gen);
    return v;
  };

  ProblemDefinition p;
  p.name = "affine";
  p.n_x = n_x;
  p.n_u = n_u;
  p.n_r = n_x;
  p.n_r_terminal = n_x;
  p.n_c = 2;
  p.N = N;
  p.dt = 0.1;
  p.x_init = rand_vector(n_x, 0.3);

  const Eigen::MatrixXd A =
      Eigen::MatrixXd::Identity(n_x, n_x) + rand_matrix(n_x, n_x, 0.2);
  const Eigen::MatrixXd B = rand_matrix(n_x, n_u, 0.4);
  const Eigen::VectorXd d = rand_vector(n_x, 0.05);
  p.dynamics = [A, B, d](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(A * x + B * u + d);
  };

  const Eigen::MatrixXd Rx = rand_matrix(n_x, n_x, 0.5);
  const Eigen::MatrixXd Ru = rand_matrix(n_x, n_u, 0.5);
  const Eigen::VectorXd rr = rand_vector(n_x, 0.2);
  p.stage_residual = [Rx, Ru, rr](int, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(Rx * x + Ru * u + rr);
  };
  const Eigen::MatrixXd Rt = rand_matrix(n_x, n_x, 0.5);
  const Eigen::VectorXd rt = rand_vector(n_x, 0.2);
  p.terminal_residual = [Rt, rt](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(Rt * x + rt);
  };

  const Eigen::MatrixXd Cx = rand_matrix(2, n_x, 0.1);
  const Eigen::MatrixXd Cu = rand_matrix(2, n_u, 0.1);
  p.constraints = [Cx, Cu](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(Cx * x + Cu * u + Eigen::VectorXd::Constant(2, 50.0));
  };

  p.default_trust_region.delta_x = Eigen::VectorXd::Constant(n_x, 0.5);
  p.default_trust_region.delta_u = Eigen::VectorXd::Constant(n_u, 0.5);
  p.default_initial_guess = [p_nx = n_x, p_nu = n_u, N]() {
    Trajectory traj;
    for (int k = 0; k < N; ++k) traj.states.push_back(Eigen::VectorXd::Zero(p_nx));
    for (int k = 0; k + 1 < N; ++k) traj.controls.push_back(Eigen::VectorXd::Zero(p_nu));
    return traj;
  };
  return p;
}

/// Dynamics-feasible rollout from x_init under bounded random controls.
inline Trajectory feasible_rollout(const ProblemDefinition& p, std::mt19937_64& gen,
                                   double control_scale = 0.3) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Trajectory traj;
  traj.states.push_back(p.x_init);
  for (int k = 0; k + 1 < p.N; ++k) {
    Eigen::VectorXd u(p.n_u);
    for (int i = 0; i < p.n_u; ++i) u[i] = control_scale * unif(gen);
    traj.controls.push_back(u);
    traj.states.push_back(p.dynamics(traj.states.back(), u));
  }
  return traj;
}

inline double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  double w = std::fmod(a + M_PI, two_pi);
  if (w < 0.0) w += two_pi;
  return w - M_PI;
}

}  // namespace tbopt::testutil

#endif  // TBOPT_TESTS_TEST_HELPERS_HPP
