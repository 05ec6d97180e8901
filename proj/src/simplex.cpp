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

#include "tbopt/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbopt {

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v, double target_sum) {
  if (v.size() == 0) {
    throw std::invalid_argument("project_to_simplex: empty input");
  }
  if (!(target_sum > 0.0) || !std::isfinite(target_sum)) {
    throw std::invalid_argument("project_to_simplex: target_sum must be positive and finite");
  }

  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  double running = 0.0;
  double tau = (sorted[0] - target_sum);
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate = (running - target_sum) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      tau = candidate;
    } else {
      break;
    }
  }

  return v.array().unaryExpr([tau](double x) { return std::max(x - tau, 0.0); });
}

Eigen::VectorXd solve_entropy_regularized(const Eigen::VectorXd& costs, double lambda) {
  const auto m = static_cast<int>(costs.size());
  if (m == 0) {
    throw std::invalid_argument("solve_entropy_regularized: empty cost vector");
  }
  if (std::isnan(lambda) || lambda < 0.0) {
    throw std::invalid_argument("solve_entropy_regularized: lambda must be >= 0, got " +
                                std::to_string(lambda));
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  double min_cost = kInf;
  int min_index = -1;
  for (int i = 0; i < m; ++i) {
    if (std::isnan(costs(i))) {
      throw std::invalid_argument("solve_entropy_regularized: cost " + std::to_string(i) +
                                  " is NaN");
    }
    if (costs(i) == -kInf) {
      throw std::invalid_argument("solve_entropy_regularized: cost " + std::to_string(i) +
                                  " is -inf");
    }
    if (costs(i) < min_cost) {
      min_cost = costs(i);
      min_index = i;
    }
  }
  if (min_index < 0) {
    throw std::invalid_argument("solve_entropy_regularized: every cost is +inf");
  }

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  if (lambda == 0.0) {
    alpha(min_index) = 1.0;
    return alpha;
  }

  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    if (costs(i) == kInf) {
      continue;
    }
    alpha(i) = std::exp(-(costs(i) - min_cost) / lambda);
    total += alpha(i);
  }
  alpha /= total;
  return alpha;
}

}  // namespace tbopt
