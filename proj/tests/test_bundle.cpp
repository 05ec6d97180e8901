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

#include <random>

#include "tbopt/bundle.hpp"
#include "test_helpers.hpp"

using namespace tbopt;

TEST_CASE("interpolation averages sample columns") {
  Eigen::MatrixXd W(1, 2);
  W << 0.0, 1.0;
  SimplexWeights alpha(Eigen::Vector2d(0.5, 0.5));
  const Eigen::VectorXd y = interpolate(W, alpha);
  CHECK(y.size() == 1);
  CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("one-hot weights select a single column") {
  Eigen::MatrixXd W(2, 3);
  W << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  Eigen::Vector3d a(0.0, 1.0, 0.0);
  const Eigen::VectorXd y = interpolate(W, SimplexWeights(a));
  CHECK(y[0] == 2.0);
  CHECK(y[1] == 5.0);
}

TEST_CASE("interpolation rejects mismatched weight length") {
  Eigen::MatrixXd W(1, 2);
  W << 0.0, 1.0;
  CHECK_THROWS_AS(interpolate(W, SimplexWeights(Eigen::Vector3d(0.3, 0.3, 0.4))),
                  std::invalid_argument);
}

TEST_CASE("affine maps are reproduced exactly on the sample hull") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    const int m = 2 + trial % 5;
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      b[i] = unif(gen);
      for (int j = 0; j < n; ++j) A(i, j) = unif(gen);
    }
    Eigen::MatrixXd W_in(n, m);
    Eigen::MatrixXd W_out(n, m);
    for (int s = 0; s < m; ++s) {
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = unif(gen);
      W_in.col(s) = z;
      W_out.col(s) = A * z + b;
    }
    Eigen::VectorXd raw(m);
    for (int s = 0; s < m; ++s) raw[s] = unif(gen) + 1.5;
    SimplexWeights alpha(raw / raw.sum());

    const Eigen::VectorXd via_samples = interpolate(W_out, alpha);
    const Eigen::VectorXd direct = A * interpolate(W_in, alpha) + b;
    CHECK((via_samples - direct).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("stage bundle columns are the evaluators applied per sample") {
  const ProblemDefinition p = testutil::make_scalar_problem();
  std::vector<Eigen::VectorXd> xs = {Eigen::VectorXd::Constant(1, 0.0),
                                     Eigen::VectorXd::Constant(1, 1.0)};
  std::vector<Eigen::VectorXd> us = {Eigen::VectorXd::Constant(1, 2.0),
                                     Eigen::VectorXd::Constant(1, -1.0)};
  const KnotBundle b = assemble_bundle(xs, us, p, 0);
  CHECK(b.sample_count() == 2);
  CHECK_FALSE(b.is_terminal());
  CHECK(b.W_x(0, 0) == 0.0);
  CHECK(b.W_u(0, 1) == -1.0);
  CHECK(b.W_f(0, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(b.W_f(0, 1) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(b.W_r(0, 0) == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK(b.W_r(1, 1) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(b.W_c(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b.W_c(1, 0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_NOTHROW(b.validate());
}

TEST_CASE("a single-sample bundle is allowed") {
  const ProblemDefinition p = testutil::make_scalar_problem();
  std::vector<Eigen::VectorXd> xs = {Eigen::VectorXd::Constant(1, 0.5)};
  std::vector<Eigen::VectorXd> us = {Eigen::VectorXd::Constant(1, 0.0)};
  const KnotBundle b = assemble_bundle(xs, us, p, 0);
  CHECK(b.sample_count() == 1);
  const Eigen::VectorXd y = interpolate(b.W_f, SimplexWeights(Eigen::VectorXd::Ones(1)));
  CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("terminal bundle carries terminal residuals only") {
  const ProblemDefinition p = testutil::make_scalar_problem();
  std::vector<Eigen::VectorXd> xs = {Eigen::VectorXd::Constant(1, 0.0),
                                     Eigen::VectorXd::Constant(1, 2.0)};
  const KnotBundle b = assemble_terminal_bundle(xs, p);
  CHECK(b.is_terminal());
  CHECK(b.W_u.rows() == 0);
  CHECK(b.W_f.rows() == 0);
  CHECK(b.W_c.rows() == 0);
  CHECK(b.W_r(0, 0) == -1.0);
  CHECK(b.W_r(0, 1) == 1.0);
}

TEST_CASE("non-finite evaluator output is a hard error naming the evaluator") {
  ProblemDefinition p = testutil::make_scalar_problem();
  p.dynamics = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return Eigen::VectorXd(x * std::numeric_limits<double>::quiet_NaN());
  };
  std::vector<Eigen::VectorXd> xs = {Eigen::VectorXd::Constant(1, 1.0)};
  std::vector<Eigen::VectorXd> us = {Eigen::VectorXd::Constant(1, 0.0)};
  CHECK_THROWS_WITH_AS(assemble_bundle(xs, us, p, 0),
                       doctest::Contains("dynamics"), std::runtime_error);
}

TEST_CASE("interpolated trajectory recovers states and controls from weights") {
  const ProblemDefinition p = testutil::make_scalar_problem(3);
  std::mt19937_64 gen(3);
  const Trajectory guess = testutil::feasible_rollout(p, gen);

  std::vector<KnotBundle> bundles;
  std::vector<SimplexWeights> weights;
  for (int k = 0; k + 1 < p.N; ++k) {
    std::vector<Eigen::VectorXd> xs = {guess.states[k],
                                       guess.states[k] + Eigen::VectorXd::Constant(1, 0.1)};
    std::vector<Eigen::VectorXd> us = {guess.controls[k],
                                       guess.controls[k] + Eigen::VectorXd::Constant(1, 0.1)};
    bundles.push_back(assemble_bundle(xs, us, p, k));
    weights.emplace_back(Eigen::Vector2d(1.0, 0.0));
  }
  bundles.push_back(assemble_terminal_bundle({guess.states.back()}, p));
  weights.emplace_back(Eigen::VectorXd::Ones(1));

  const Trajectory traj = interpolated_trajectory(bundles, weights);
  REQUIRE(traj.knot_count() == p.N);
  for (int k = 0; k < p.N; ++k) {
    CHECK((traj.states[k] - guess.states[k]).lpNorm<Eigen::Infinity>() == 0.0);
  }
  for (int k = 0; k + 1 < p.N; ++k) {
    CHECK((traj.controls[k] - guess.controls[k]).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("interpolated points stay inside the sample hull box") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd W(2, 4);
  W << 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd raw(4);
    for (int i = 0; i < 4; ++i) raw[i] = unif(gen) + 0.1;
    const Eigen::VectorXd y = interpolate(W, SimplexWeights(raw / raw.sum()));
    CHECK(y.minCoeff() >= -1e-15);
    CHECK(y.maxCoeff() <= 1.0 + 1e-15);
  }
}
