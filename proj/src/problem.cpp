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

#include "tbopt/problem.hpp"

#include <stdexcept>

namespace tbopt {

void TrustRegion::validate() const {
  if (delta_x.size() > 0 && delta_x.minCoeff() <= 0.0) {
    throw std::invalid_argument("TrustRegion: delta_x entries must be > 0");
  }
  if (delta_u.size() > 0 && delta_u.minCoeff() <= 0.0) {
    throw std::invalid_argument("TrustRegion: delta_u entries must be > 0");
  }
}

void ProblemDefinition::validate() const {
  if (n_x < 1) throw std::invalid_argument("ProblemDefinition: n_x must be >= 1");
  if (n_u < 1) throw std::invalid_argument("ProblemDefinition: n_u must be >= 1");
  if (n_r < 1) throw std::invalid_argument("ProblemDefinition: n_r must be >= 1");
  if (n_r_terminal < 1) throw std::invalid_argument("ProblemDefinition: n_r_terminal must be >= 1");
  if (n_c < 0) throw std::invalid_argument("ProblemDefinition: n_c must be >= 0");
  if (N < 2) throw std::invalid_argument("ProblemDefinition: N must be >= 2");
  if (x_init.size() != n_x) {
    throw std::invalid_argument("ProblemDefinition: x_init has dimension " +
                                std::to_string(x_init.size()) + ", expected n_x = " +
                                std::to_string(n_x));
  }
  if (!dynamics) throw std::invalid_argument("ProblemDefinition: missing dynamics evaluator");
  if (!stage_residual) throw std::invalid_argument("ProblemDefinition: missing stage residual");
  if (!terminal_residual) {
    throw std::invalid_argument("ProblemDefinition: missing terminal residual");
  }
  if (n_c > 0 && !constraints) {
    throw std::invalid_argument("ProblemDefinition: n_c > 0 but no constraint evaluator");
  }
  if (default_trust_region.delta_x.size() != n_x ||
      default_trust_region.delta_u.size() != n_u) {
    throw std::invalid_argument("ProblemDefinition: default trust region dimensions mismatch");
  }
  default_trust_region.validate();
}

Trajectory interpolated_guess(const Eigen::VectorXd& x_init, const Eigen::VectorXd& x_goal, int N,
                              int n_u) {
  if (N < 2) throw std::invalid_argument("interpolated_guess: N must be >= 2");
  if (x_init.size() != x_goal.size()) {
    throw std::invalid_argument("interpolated_guess: x_init/x_goal dimension mismatch");
  }
  std::vector<Eigen::VectorXd> xs(static_cast<size_t>(N));
  std::vector<Eigen::VectorXd> us(static_cast<size_t>(N - 1), Eigen::VectorXd::Zero(n_u));
  for (int k = 0; k < N; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(N - 1);
    xs[static_cast<size_t>(k)] = (1.0 - t) * x_init + t * x_goal;
  }
  return Trajectory(std::move(xs), std::move(us));
}

}  // namespace tbopt
