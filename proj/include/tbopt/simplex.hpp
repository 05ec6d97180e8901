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

#ifndef TBOPT_SIMPLEX_HPP
#define TBOPT_SIMPLEX_HPP

#include <Eigen/Dense>

namespace tbopt {

/// Euclidean projection onto { x : x >= 0, sum(x) = target_sum }.
/// Sort-based, O(m log m). target_sum must be positive.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v, double target_sum = 1.0);

/// Minimizer of  costs . alpha + lambda * sum_i alpha_i log alpha_i  over the
/// unit simplex. For lambda > 0 this is the softmax of -costs/lambda,
/// computed with the minimum cost subtracted so large costs cannot overflow.
/// Entries with cost +inf get weight zero; if every cost is +inf the problem
/// has no finite minimizer and we throw. lambda == 0 returns the one-hot
/// vector of the smallest cost (lowest index on ties). lambda < 0 or NaN
/// costs throw std::invalid_argument.
Eigen::VectorXd solve_entropy_regularized(const Eigen::VectorXd& costs, double lambda);

}  // namespace tbopt

#endif  // TBOPT_SIMPLEX_HPP
