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

#include "tbopt/qp_solver.hpp"

using namespace tbopt;

namespace {

/// Two-knot chain with a pinned scalar start, stage residual row W_r,
/// stage dynamics samples {0, 1}, and terminal state samples given by
/// terminal_x.
ConvexSubproblem chain_qp(const Eigen::RowVector2d& W_r, const Eigen::RowVector2d& terminal_x,
                          double mu) {
  KnotBundle stage;
  stage.W_x = Eigen::MatrixXd::Zero(1, 2);
  stage.W_u = (Eigen::MatrixXd(1, 2) << 0.0, 1.0).finished();
  stage.W_r = W_r;
  stage.W_f = (Eigen::MatrixXd(1, 2) << 0.0, 1.0).finished();
  stage.W_c = (Eigen::MatrixXd(1, 2) << 1.0, 2.0).finished();

  KnotBundle terminal;
  terminal.W_x = terminal_x;
  terminal.W_u = Eigen::MatrixXd::Zero(0, 2);
  terminal.W_r = Eigen::MatrixXd::Zero(1, 2);
  terminal.W_f = Eigen::MatrixXd::Zero(0, 2);
  terminal.W_c = Eigen::MatrixXd::Zero(0, 2);
  return transcribe({stage, terminal}, mu, Eigen::VectorXd::Zero(1));
}

double feasibility_error(const ConvexSubproblem& sp, const Eigen::VectorXd& xi) {
  double err = (sp.A_eq * xi - sp.b_eq).lpNorm<Eigen::Infinity>();
  const Eigen::VectorXd gap = sp.A_ineq * xi - sp.b_ineq;
  err = std::max(err, std::max(0.0, -gap.minCoeff()));
  return err;
}

}  // namespace

TEST_CASE("minimizing a squared residual row picks the cheap vertex") {
  const ConvexSubproblem sp = chain_qp({1.0, 3.0}, {0.0, 1.0}, 10.0);
  const SubproblemSolution sol = solve(sp, 1e-9);
  REQUIRE(sol.status == SolverStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.weights[0].alpha[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.weights[0].alpha[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(sol.slack_l1() <= 1e-8);
  CHECK(feasibility_error(sp, sol.xi) <= 1e-8);
  CHECK(sol.weights[0].is_valid());
  CHECK(sol.weights[1].is_valid());
}

TEST_CASE("a sign-balanced residual row splits the weights evenly") {
  const ConvexSubproblem sp = chain_qp({1.0, -1.0}, {0.0, 1.0}, 10.0);
  const SubproblemSolution sol = solve(sp, 1e-9);
  REQUIRE(sol.status == SolverStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
  CHECK(sol.weights[0].alpha[0] == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("an unreachable coupling engages the penalty slack optimally") {
  const double mu = 10.0;
  const ConvexSubproblem sp = chain_qp({1.0, 3.0}, {2.0, 3.0}, mu);
  const SubproblemSolution sol = solve(sp, 1e-9);
  REQUIRE(sol.status == SolverStatus::kOptimal);
  // minimize (a1 + 3 a2)^2 + mu (2 - a2) over the stage simplex: a2 = 3/4.
  // The reachable terminal states {2, 3} sit above the dynamics samples
  // {0, 1}, so the coupling gap is positive: s_pos carries it all.
  CHECK(sol.objective == doctest::Approx(18.75).epsilon(1e-6));
  CHECK(sol.weights[0].alpha[1] == doctest::Approx(0.75).epsilon(1e-5));
  CHECK(sol.slack_l1() == doctest::Approx(1.25).epsilon(1e-5));
  CHECK(sol.dyn_slack[0][0] == doctest::Approx(1.25).epsilon(1e-5));
}

TEST_CASE("scaling the residual row scales the optimal objective quadratically") {
  const SubproblemSolution base = solve(chain_qp({1.0, 3.0}, {0.0, 1.0}, 10.0), 1e-9);
  const SubproblemSolution scaled = solve(chain_qp({2.0, 6.0}, {0.0, 1.0}, 10.0), 1e-9);
  REQUIRE(base.status == SolverStatus::kOptimal);
  REQUIRE(scaled.status == SolverStatus::kOptimal);
  CHECK(scaled.objective == doctest::Approx(4.0 * base.objective).epsilon(1e-6));
}

TEST_CASE("fixed-penalty fixed-point steps are monotonically nonincreasing") {
  const ConvexSubproblem sp = chain_qp({1.0, 3.0}, {2.0, 3.0}, 10.0);
  QpSettings settings;
  settings.adaptive_rho = false;
  settings.record_merit = true;
  settings.polish = false;
  settings.tol = 1e-10;
  settings.max_iter = 2000;
  const SubproblemSolution sol = solve(sp, settings);
  REQUIRE(sol.merit_history.size() > 10);
  for (std::size_t i = 1; i < sol.merit_history.size(); ++i) {
    CHECK(sol.merit_history[i] <= sol.merit_history[i - 1] + 1e-12);
  }
}

TEST_CASE("repeated solves are bitwise identical") {
  const ConvexSubproblem sp = chain_qp({1.0, 3.0}, {2.0, 3.0}, 10.0);
  const SubproblemSolution a = solve(sp, 1e-9);
  const SubproblemSolution b = solve(sp, 1e-9);
  REQUIRE(a.xi.size() == b.xi.size());
  CHECK((a.xi - b.xi).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("a tiny iteration budget reports the cap instead of lying") {
  const ConvexSubproblem sp = chain_qp({1.0, 3.0}, {2.0, 3.0}, 10.0);
  QpSettings settings;
  settings.max_iter = 3;
  settings.polish = false;
  settings.tol = 1e-12;
  const SubproblemSolution sol = solve(sp, settings);
  CHECK(sol.status == SolverStatus::kMaxIter);
  CHECK(sol.iterations == 3);
  CHECK(!sol.message.empty());
}

TEST_CASE("status strings are stable") {
  CHECK(std::string(to_string(SolverStatus::kOptimal)) == "optimal");
  CHECK(std::string(to_string(SolverStatus::kMaxIter)) == "max_iter");
  CHECK(std::string(to_string(SolverStatus::kNumericalFailure)) == "numerical_failure");
}

TEST_CASE("random chains solve to tight feasibility and near-grid objectives") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> pos_entry(0, 3);
  int solved = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::RowVector2d w_r(entry(gen), entry(gen));
    Eigen::RowVector2d term(pos_entry(gen), pos_entry(gen));
    const ConvexSubproblem sp = chain_qp(w_r, term, 10.0);
    const SubproblemSolution sol = solve(sp, 1e-9);
    REQUIRE(sol.status == SolverStatus::kOptimal);
    CHECK(feasibility_error(sp, sol.xi) <= 1e-8);

    // Brute force over both simplices at resolution 1e-3.
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      const double a2 = i / 1000.0;
      for (int j = 0; j <= 1000; ++j) {
        const double b2 = j / 1000.0;
        const double defect_gap = term[0] + (term[1] - term[0]) * b2 - a2;
        const double constraint = 1.0 + a2;
        const double w = std::max(0.0, -constraint);
        const double r = w_r[0] + (w_r[1] - w_r[0]) * a2;
        const double obj = r * r + 10.0 * (std::abs(defect_gap) + w);
        best = std::min(best, obj);
      }
    }
    CHECK(sol.objective <= best + 1e-3);
    CHECK(sol.objective >= best - 1e-3);
    ++solved;
  }
  CHECK(solved == 10);
}
