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

#ifndef TBOPT_PROBLEMS_HPP
#define TBOPT_PROBLEMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tbopt/problem.hpp"

namespace tbopt {

struct Disk {
  double x = 0.0;
  double y = 0.0;
  double radius = 1.0;
};

/// Planar point mass with acceleration inputs, exact discrete dynamics for
/// piecewise-constant acceleration. State [px, py, vx, vy]. Constraints:
/// squared clearance from each disk plus an acceleration box.
struct DoubleIntegratorParams {
  int N = 40;
  double dt = 0.25;
  Eigen::Vector4d x_init{0.0, 0.0, 0.0, 0.0};
  Eigen::Vector4d x_goal{10.0, 10.0, 0.0, 0.0};
  std::vector<Disk> obstacles{{2.5, 2.0, 1.0}, {5.0, 5.5, 1.2}, {7.5, 7.0, 1.0}};
  double u_max = 3.0;
  double w_pos = 0.05;   ///< stage weight on position-to-goal error
  double w_vel = 0.05;   ///< stage weight on velocity
  double w_u = 0.2;      ///< stage weight on acceleration
  double w_terminal = 5.0;
};

ProblemDefinition double_integrator_obstacles();
ProblemDefinition double_integrator_obstacles(const DoubleIntegratorParams& p);

/// Frictionless cart-pole swing-up. State [cart position, cart velocity,
/// pole angle, pole rate] with angle 0 hanging down and pi upright; one
/// horizontal force input, RK4 integration in analytic mode or a loaded
/// ReLU network in MLP mode.
struct CartpoleParams {
  int N = 50;
  double dt = 0.05;
  double cart_mass = 1.0;
  double pole_mass = 0.2;
  double pole_length = 0.5;
  double gravity = 9.81;
  double u_max = 10.0;
  double w_pos = 0.02;
  double w_vel = 0.02;
  double w_angle = 0.05;
  double w_rate = 0.02;
  double w_u = 0.05;
  double w_terminal = 30.0;
};

ProblemDefinition cartpole(bool analytic = true,
                           const std::optional<std::string>& weights_path = std::nullopt);
ProblemDefinition cartpole(const CartpoleParams& p, bool analytic = true,
                           const std::optional<std::string>& weights_path = std::nullopt);

/// Continuous cart-pole acceleration terms, exposed for integrator checks.
Eigen::Vector4d cartpole_derivative(const CartpoleParams& p, const Eigen::Vector4d& x, double u);

/// Total mechanical energy of the unforced cart-pole.
double cartpole_energy(const CartpoleParams& p, const Eigen::Vector4d& x);

/// Torque-limited pendulum swing-up, state [angle, rate], angle 0 down.
struct PendulumParams {
  int N = 30;
  double dt = 0.1;
  double mass = 1.0;
  double length = 1.0;
  double gravity = 9.81;
  double u_max = 10.0;
  double w_angle = 0.1;
  double w_rate = 0.1;
  double w_u = 0.1;
  double w_terminal = 5.0;
};

ProblemDefinition pendulum();
ProblemDefinition pendulum(const PendulumParams& p);

Eigen::Vector2d pendulum_derivative(const PendulumParams& p, const Eigen::Vector2d& x, double u);

std::vector<std::string> library_problem_names();

/// Looks a problem up by its listed name; "cartpole_mlp" requires
/// weights_path. Throws std::invalid_argument for unknown names.
ProblemDefinition make_problem(const std::string& name,
                               const std::optional<std::string>& weights_path = std::nullopt);

}  // namespace tbopt

#endif  // TBOPT_PROBLEMS_HPP
