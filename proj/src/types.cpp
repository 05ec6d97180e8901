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

#include "tbopt/types.hpp"

#include <cmath>
#include <stdexcept>

namespace tbopt {

Trajectory::Trajectory(std::vector<Eigen::VectorXd> xs, std::vector<Eigen::VectorXd> us)
    : states(std::move(xs)), controls(std::move(us)) {
  validate();
}

void Trajectory::validate() const {
  if (states.empty()) {
    throw std::invalid_argument("Trajectory: must contain at least one state");
  }
  if (controls.size() + 1 != states.size()) {
    throw std::invalid_argument("Trajectory: expected " + std::to_string(states.size() - 1) +
                                " controls for " + std::to_string(states.size()) +
                                " states, got " + std::to_string(controls.size()));
  }
  const auto n_x = states.front().size();
  for (const auto& x : states) {
    if (x.size() != n_x) {
      throw std::invalid_argument("Trajectory: state dimension mismatch (" +
                                  std::to_string(x.size()) + " vs " + std::to_string(n_x) + ")");
    }
  }
  if (!controls.empty()) {
    const auto n_u = controls.front().size();
    for (const auto& u : controls) {
      if (u.size() != n_u) {
        throw std::invalid_argument("Trajectory: control dimension mismatch (" +
                                    std::to_string(u.size()) + " vs " + std::to_string(n_u) + ")");
      }
    }
  }
}

bool SimplexWeights::is_valid(double eps) const {
  if (alpha.size() == 0) return false;
  if (alpha.minCoeff() < -eps) return false;
  return std::abs(alpha.sum() - 1.0) <= eps;
}

void SimplexWeights::validate(double eps) const {
  if (alpha.size() == 0) {
    throw std::invalid_argument("SimplexWeights: empty weight vector");
  }
  if (alpha.minCoeff() < -eps) {
    throw std::invalid_argument("SimplexWeights: entry " + std::to_string(alpha.minCoeff()) +
                                " below -" + std::to_string(eps));
  }
  const double s = alpha.sum();
  if (std::abs(s - 1.0) > eps) {
    throw std::invalid_argument("SimplexWeights: entries sum to " + std::to_string(s) +
                                ", expected 1 within " + std::to_string(eps));
  }
}

void KnotBundle::validate() const {
  const auto m = W_x.cols();
  if (W_u.cols() != m || W_r.cols() != m || W_f.cols() != m || W_c.cols() != m) {
    throw std::invalid_argument("KnotBundle: sample-count mismatch across W matrices");
  }
  if (m < 1) {
    throw std::invalid_argument("KnotBundle: needs at least one sample column");
  }
}

}  // namespace tbopt
