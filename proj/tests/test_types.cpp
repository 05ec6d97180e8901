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

#include <doctest.h>

#include "tbopt/types.hpp"

using namespace tbopt;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("trajectory with N states and N-1 controls validates") {
  Trajectory traj({vec({0, 0}), vec({1, 0}), vec({2, 0})}, {vec({1}), vec({1})});
  CHECK_NOTHROW(traj.validate());
  CHECK(traj.knot_count() == 3);
  CHECK(traj.state_dim() == 2);
  CHECK(traj.control_dim() == 1);
}

TEST_CASE("trajectory control count must be one less than state count") {
  CHECK_THROWS_AS(Trajectory({vec({0}), vec({1})}, {vec({1}), vec({1})}),
                  std::invalid_argument);
}

TEST_CASE("trajectory state dimensions must agree") {
  CHECK_THROWS_AS(Trajectory({vec({0, 0}), vec({1})}, {vec({1})}), std::invalid_argument);
}

TEST_CASE("trajectory control dimensions must agree") {
  CHECK_THROWS_AS(Trajectory({vec({0}), vec({1}), vec({2})}, {vec({1}), vec({1, 2})}),
                  std::invalid_argument);
}

TEST_CASE("empty trajectory is rejected") {
  Trajectory traj;
  CHECK_THROWS_AS(traj.validate(), std::invalid_argument);
}

TEST_CASE("simplex weights accept exact and near-feasible vectors") {
  CHECK(SimplexWeights(vec({0.5, 0.5})).is_valid());
  CHECK(SimplexWeights(vec({1.0})).is_valid());
  CHECK(SimplexWeights(vec({0.25, 0.25, 0.5 + 1e-10})).is_valid());
}

TEST_CASE("simplex weights reject negative entries and bad sums") {
  CHECK_FALSE(SimplexWeights(vec({1.1, -0.1})).is_valid(1e-8));
  CHECK_FALSE(SimplexWeights(vec({0.4, 0.4})).is_valid());
  CHECK_FALSE(SimplexWeights(vec({0.6, 0.6})).is_valid());
  CHECK_THROWS_AS(SimplexWeights(vec({0.4, 0.4})).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SimplexWeights(Eigen::VectorXd()).validate(), std::invalid_argument);
}

TEST_CASE("simplex weight tolerance is adjustable") {
  SimplexWeights w(vec({0.52, 0.5}));
  CHECK_FALSE(w.is_valid(1e-8));
  CHECK(w.is_valid(0.05));
}

TEST_CASE("knot bundle column counts must agree") {
  KnotBundle b;
  b.W_x = Eigen::MatrixXd::Zero(2, 3);
  b.W_u = Eigen::MatrixXd::Zero(1, 3);
  b.W_r = Eigen::MatrixXd::Zero(2, 3);
  b.W_f = Eigen::MatrixXd::Zero(2, 3);
  b.W_c = Eigen::MatrixXd::Zero(1, 3);
  CHECK_NOTHROW(b.validate());
  CHECK(b.sample_count() == 3);
  CHECK_FALSE(b.is_terminal());

  b.W_u = Eigen::MatrixXd::Zero(1, 2);
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("terminal bundle has zero-row dynamics and control blocks") {
  KnotBundle b;
  b.W_x = Eigen::MatrixXd::Zero(2, 4);
  b.W_u = Eigen::MatrixXd::Zero(0, 4);
  b.W_r = Eigen::MatrixXd::Zero(1, 4);
  b.W_f = Eigen::MatrixXd::Zero(0, 4);
  b.W_c = Eigen::MatrixXd::Zero(0, 4);
  CHECK_NOTHROW(b.validate());
  CHECK(b.is_terminal());
}
