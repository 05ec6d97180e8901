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

#include "tbopt/problems.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "tbopt/mlp.hpp"

namespace tbopt {

namespace {

template <typename Deriv>
Eigen::VectorXd rk4_step(const Deriv& deriv, const Eigen::VectorXd& x, double dt) {
  const Eigen::VectorXd k1 = deriv(x);
  const Eigen::VectorXd k2 = deriv(x + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = deriv(x + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = deriv(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

ProblemDefinition double_integrator_obstacles() {
  return double_integrator_obstacles(DoubleIntegratorParams{});
}

ProblemDefinition double_integrator_obstacles(const DoubleIntegratorParams& p) {
  for (const auto& d : p.obstacles) {
    const auto clear = [&d](const Eigen::Vector4d& x) {
      return std::hypot(x(0) - d.x, x(1) - d.y) > d.radius;
    };
    if (!clear(p.x_init) || !clear(p.x_goal)) {
      throw std::invalid_argument(
          "double_integrator_obstacles: start or goal lies inside an obstacle disk");
    }
  }

  ProblemDefinition def;
  def.name = "double_integrator";
  def.n_x = 4;
  def.n_u = 2;
  def.n_r = 6;
  def.n_r_terminal = 4;
  def.n_c = static_cast<int>(p.obstacles.size()) + 4;
  def.N = p.N;
  def.dt = p.dt;
  def.x_init = p.x_init;

  const double dt = p.dt;
  def.dynamics = [dt](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd next(4);
    next(0) = x(0) + x(2) * dt + 0.5 * u(0) * dt * dt;
    next(1) = x(1) + x(3) * dt + 0.5 * u(1) * dt * dt;
    next(2) = x(2) + u(0) * dt;
    next(3) = x(3) + u(1) * dt;
    return next;
  };

  const Eigen::Vector4d goal = p.x_goal;
  const double w_pos = p.w_pos, w_vel = p.w_vel, w_u = p.w_u;
  def.stage_residual = [goal, w_pos, w_vel, w_u](int, const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& u) {
    Eigen::VectorXd r(6);
    r(0) = w_pos * (x(0) - goal(0));
    r(1) = w_pos * (x(1) - goal(1));
    r(2) = w_vel * x(2);
    r(3) = w_vel * x(3);
    r(4) = w_u * u(0);
    r(5) = w_u * u(1);
    return r;
  };
  const double w_term = p.w_terminal;
  def.terminal_residual = [goal, w_term](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(w_term * (x - goal));
  };

  const auto obstacles = p.obstacles;
  const double u_max = p.u_max;
  def.constraints = [obstacles, u_max](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd c(obstacles.size() + 4);
    for (std::size_t j = 0; j < obstacles.size(); ++j) {
      const double dx = x(0) - obstacles[j].x;
      const double dy = x(1) - obstacles[j].y;
      c(static_cast<int>(j)) = dx * dx + dy * dy - obstacles[j].radius * obstacles[j].radius;
    }
    const auto base = static_cast<int>(obstacles.size());
    c(base + 0) = u_max - u(0);
    c(base + 1) = u(0) + u_max;
    c(base + 2) = u_max - u(1);
    c(base + 3) = u(1) + u_max;
    return c;
  };

  def.default_trust_region.delta_x = Eigen::Vector4d::Constant(1.0);
  def.default_trust_region.delta_u = Eigen::Vector2d::Constant(1.0);
  const int N = p.N;
  const Eigen::Vector4d x0 = p.x_init;
  def.default_initial_guess = [x0, goal, N]() {
    return interpolated_guess(x0, goal, N, 2);
  };
  def.validate();
  return def;
}

Eigen::Vector4d cartpole_derivative(const CartpoleParams& p, const Eigen::Vector4d& x,
                                    double u) {
  const double s = std::sin(x(2));
  const double c = std::cos(x(2));
  const double w = x(3);
  const double denom = p.cart_mass + p.pole_mass * s * s;
  const double xdd =
      (u + p.pole_mass * s * (p.pole_length * w * w + p.gravity * c)) / denom;
  const double tdd = (-u * c - p.pole_mass * p.pole_length * w * w * c * s -
                      (p.cart_mass + p.pole_mass) * p.gravity * s) /
                     (p.pole_length * denom);
  return {x(1), xdd, w, tdd};
}

double cartpole_energy(const CartpoleParams& p, const Eigen::Vector4d& x) {
  const double v = x(1);
  const double w = x(3);
  const double c = std::cos(x(2));
  return 0.5 * (p.cart_mass + p.pole_mass) * v * v +
         p.pole_mass * p.pole_length * v * w * c +
         0.5 * p.pole_mass * p.pole_length * p.pole_length * w * w -
         p.pole_mass * p.gravity * p.pole_length * c;
}

ProblemDefinition cartpole(bool analytic, const std::optional<std::string>& weights_path) {
  return cartpole(CartpoleParams{}, analytic, weights_path);
}

ProblemDefinition cartpole(const CartpoleParams& p, bool analytic,
                           const std::optional<std::string>& weights_path) {
  ProblemDefinition def;
  def.name = analytic ? "cartpole" : "cartpole_mlp";
  def.n_x = 4;
  def.n_u = 1;
  def.n_r = 5;
  def.n_r_terminal = 4;
  def.n_c = 2;
  def.N = p.N;
  def.dt = p.dt;
  def.x_init = Eigen::Vector4d::Zero();

  if (analytic) {
    const CartpoleParams params = p;
    def.dynamics = [params](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
      const double force = u(0);
      const auto deriv = [&params, force](const Eigen::VectorXd& s) {
        return Eigen::VectorXd(cartpole_derivative(params, s, force));
      };
      return rk4_step(deriv, x, params.dt);
    };
  } else {
    if (!weights_path) {
      throw std::invalid_argument("cartpole: MLP mode requires a weights path");
    }
    auto weights = std::make_shared<const MlpWeights>(load_mlp_weights(*weights_path));
    if (weights->n_in != 5 || weights->n_out != 4) {
      throw std::runtime_error("cartpole: weights must map 5 inputs to 4 outputs, got " +
                               std::to_string(weights->n_in) + " to " +
                               std::to_string(weights->n_out));
    }
    def.dynamics = [weights](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
      Eigen::VectorXd input(5);
      input << x, u;
      return mlp_forward(*weights, input);
    };
  }

  const Eigen::Vector4d goal{0.0, 0.0, M_PI, 0.0};
  const double w_pos = p.w_pos, w_vel = p.w_vel, w_angle = p.w_angle, w_rate = p.w_rate,
               w_u = p.w_u;
  def.stage_residual = [=](int, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd r(5);
    r(0) = w_pos * x(0);
    r(1) = w_vel * x(1);
    r(2) = w_angle * (x(2) - goal(2));
    r(3) = w_rate * x(3);
    r(4) = w_u * u(0);
    return r;
  };
  const double w_term = p.w_terminal;
  def.terminal_residual = [goal, w_term](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(w_term * (x - goal));
  };

  const double u_max = p.u_max;
  def.constraints = [u_max](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
    Eigen::VectorXd c(2);
    c(0) = u_max - u(0);
    c(1) = u(0) + u_max;
    return c;
  };

  def.default_trust_region.delta_x = Eigen::Vector4d{0.5, 1.0, 0.5, 1.0};
  def.default_trust_region.delta_u = Eigen::VectorXd::Constant(1, 2.5);
  const int N = p.N;
  def.default_initial_guess = [goal, N]() {
    return interpolated_guess(Eigen::Vector4d::Zero(), goal, N, 1);
  };
  def.validate();
  return def;
}

Eigen::Vector2d pendulum_derivative(const PendulumParams& p, const Eigen::Vector2d& x,
                                    double u) {
  const double inertia = p.mass * p.length * p.length;
  return {x(1), (u - p.mass * p.gravity * p.length * std::sin(x(0))) / inertia};
}

ProblemDefinition pendulum() { return pendulum(PendulumParams{}); }

ProblemDefinition pendulum(const PendulumParams& p) {
  ProblemDefinition def;
  def.name = "pendulum";
  def.n_x = 2;
  def.n_u = 1;
  def.n_r = 3;
  def.n_r_terminal = 2;
  def.n_c = 2;
  def.N = p.N;
  def.dt = p.dt;
  def.x_init = Eigen::Vector2d::Zero();

  const PendulumParams params = p;
  def.dynamics = [params](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    const double torque = u(0);
    const auto deriv = [&params, torque](const Eigen::VectorXd& s) {
      return Eigen::VectorXd(pendulum_derivative(params, s, torque));
    };
    return rk4_step(deriv, x, params.dt);
  };

  const double w_angle = p.w_angle, w_rate = p.w_rate, w_u = p.w_u;
  def.stage_residual = [=](int, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd r(3);
    r(0) = w_angle * (x(0) - M_PI);
    r(1) = w_rate * x(1);
    r(2) = w_u * u(0);
    return r;
  };
  const double w_term = p.w_terminal;
  def.terminal_residual = [w_term](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(2);
    r(0) = w_term * (x(0) - M_PI);
    r(1) = w_term * x(1);
    return r;
  };

  const double u_max = p.u_max;
  def.constraints = [u_max](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
    Eigen::VectorXd c(2);
    c(0) = u_max - u(0);
    c(1) = u(0) + u_max;
    return c;
  };

  def.default_trust_region.delta_x = Eigen::Vector2d{0.5, 1.0};
  def.default_trust_region.delta_u = Eigen::VectorXd::Constant(1, 2.0);
  const int N = p.N;
  def.default_initial_guess = [N]() {
    return interpolated_guess(Eigen::Vector2d::Zero(), Eigen::Vector2d{M_PI, 0.0}, N, 1);
  };
  def.validate();
  return def;
}

std::vector<std::string> library_problem_names() {
  return {"double_integrator", "cartpole", "cartpole_mlp", "pendulum"};
}

ProblemDefinition make_problem(const std::string& name,
                               const std::optional<std::string>& weights_path) {
  if (name == "double_integrator") {
    return double_integrator_obstacles();
  }
  if (name == "cartpole") {
    return cartpole(true);
  }
  if (name == "cartpole_mlp") {
    if (!weights_path) {
      throw std::invalid_argument("make_problem: cartpole_mlp requires a weights path");
    }
    return cartpole(false, weights_path);
  }
  if (name == "pendulum") {
    return pendulum();
  }
  throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

}  // namespace tbopt
