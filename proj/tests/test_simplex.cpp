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

#include <limits>
#include <random>

#include "tbopt/simplex.hpp"

using namespace tbopt;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("points already on the simplex project to themselves") {
  Eigen::Vector3d v(0.2, 0.3, 0.5);
  CHECK((project_to_simplex(v) - v).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("projection matches a hand-worked example") {
  Eigen::Vector3d v(0.5, 0.5, 1.0);
  const Eigen::VectorXd p = project_to_simplex(v);
  CHECK(p[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("projection clips dominated coordinates to zero") {
  Eigen::Vector3d v(-5.0, 0.0, 2.0);
  const Eigen::VectorXd p = project_to_simplex(v);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("projection output is feasible and optimal among random candidates") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 8;
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) v[i] = unif(gen);
    const Eigen::VectorXd p = project_to_simplex(v);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (int probe = 0; probe < 5; ++probe) {
      Eigen::VectorXd s(m);
      for (int i = 0; i < m; ++i) s[i] = pos(gen);
      s /= s.sum();
      CHECK((p - v).squaredNorm() <= (s - v).squaredNorm() + 1e-12);
    }
  }
}

TEST_CASE("projection respects a non-unit target sum") {
  Eigen::Vector2d v(5.0, 5.0);
  const Eigen::VectorXd p = project_to_simplex(v, 2.0);
  CHECK(p.sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("entropy weights for a two-cost gap of one at unit temperature") {
  Eigen::Vector2d costs(0.0, 1.0);
  const Eigen::VectorXd w = solve_entropy_regularized(costs, 1.0);
  CHECK(w[0] == doctest::Approx(0.7310585786300049).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.2689414213699951).epsilon(1e-15));
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("equal costs weight uniformly") {
  const Eigen::VectorXd w = solve_entropy_regularized(Eigen::Vector3d(4.0, 4.0, 4.0), 0.7);
  for (int i = 0; i < 3; ++i) CHECK(w[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("weights are invariant to a shared cost offset") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  Eigen::VectorXd costs(6);
  for (int i = 0; i < 6; ++i) costs[i] = unif(gen);
  const Eigen::VectorXd w0 = solve_entropy_regularized(costs, 0.5);
  const Eigen::VectorXd w1 =
      solve_entropy_regularized(costs + Eigen::VectorXd::Constant(6, 1000.0), 0.5);
  CHECK((w0 - w1).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("huge cost scales do not overflow the weights") {
  Eigen::Vector3d costs(1e8, 2e8, 3e8);
  const Eigen::VectorXd w = solve_entropy_regularized(costs, 1.0);
  CHECK(w.allFinite());
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero temperature returns the one-hot argmin, lowest index on ties") {
  const Eigen::VectorXd w = solve_entropy_regularized(Eigen::Vector3d(2.0, 1.0, 1.0), 0.0);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 1.0);
  CHECK(w[2] == 0.0);
}

TEST_CASE("infinite-cost samples get exactly zero weight") {
  Eigen::Vector3d costs(0.0, kInf, 1.0);
  const Eigen::VectorXd w = solve_entropy_regularized(costs, 2.0);
  CHECK(w[1] == 0.0);
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[0] > w[2]);
}

TEST_CASE("degenerate entropy inputs are rejected") {
  CHECK_THROWS_AS(solve_entropy_regularized(Eigen::VectorXd(), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_entropy_regularized(Eigen::Vector2d(0.0, 1.0), -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_entropy_regularized(Eigen::Vector2d(kInf, kInf), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      solve_entropy_regularized(Eigen::Vector2d(std::numeric_limits<double>::quiet_NaN(), 0.0),
                                1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(solve_entropy_regularized(Eigen::Vector2d(-kInf, 0.0), 1.0),
                  std::invalid_argument);
}
