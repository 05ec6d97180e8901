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

#include "tbopt/subproblem.hpp"

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace tbopt {

namespace {

using Triplet = Eigen::Triplet<double>;

void add_block(std::vector<Triplet>& trips, const Eigen::MatrixXd& block, int row0, int col0) {
  for (int c = 0; c < block.cols(); ++c) {
    for (int r = 0; r < block.rows(); ++r) {
      if (block(r, c) != 0.0) {
        trips.emplace_back(row0 + r, col0 + c, block(r, c));
      }
    }
  }
}

nlohmann::json dense_rows(const Eigen::SparseMatrix<double>& m) {
  nlohmann::json rows = nlohmann::json::array();
  Eigen::MatrixXd dense(m);
  for (int r = 0; r < dense.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < dense.cols(); ++c) {
      row.push_back(dense(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

double ConvexSubproblem::objective_at(const Eigen::VectorXd& xi) const {
  return xi.dot(P * xi) + q.dot(xi);
}

void ConvexSubproblem::validate() const {
  const auto n = static_cast<int>(q.size());
  if (P.rows() != n || P.cols() != n) {
    throw std::invalid_argument("ConvexSubproblem: P is " + std::to_string(P.rows()) + "x" +
                                std::to_string(P.cols()) + " but q has length " +
                                std::to_string(n));
  }
  if (A_eq.cols() != n || A_eq.rows() != b_eq.size()) {
    throw std::invalid_argument("ConvexSubproblem: equality block shape mismatch");
  }
  if (A_ineq.cols() != n || A_ineq.rows() != b_ineq.size()) {
    throw std::invalid_argument("ConvexSubproblem: inequality block shape mismatch");
  }
  if (layout.total != n) {
    throw std::invalid_argument("ConvexSubproblem: layout covers " +
                                std::to_string(layout.total) + " variables, q has " +
                                std::to_string(n));
  }
}

ConvexSubproblem transcribe(const std::vector<KnotBundle>& bundles, double mu,
                            const Eigen::VectorXd& x_init) {
  const auto N = static_cast<int>(bundles.size());
  if (N < 2) {
    throw std::invalid_argument("transcribe: need at least 2 knots, got " + std::to_string(N));
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("transcribe: mu must be positive");
  }
  for (const auto& b : bundles) {
    b.validate();
  }

  const auto n_x = static_cast<int>(bundles.front().W_x.rows());
  const auto n_c = static_cast<int>(bundles.front().W_c.rows());
  for (int k = 0; k + 1 < N; ++k) {
    if (bundles[k].W_x.rows() != n_x || bundles[k].W_f.rows() != n_x) {
      throw std::invalid_argument("transcribe: knot " + std::to_string(k + 1) +
                                  " state dimension differs from knot 1");
    }
    if (bundles[k].W_c.rows() != n_c) {
      throw std::invalid_argument("transcribe: knot " + std::to_string(k + 1) +
                                  " constraint dimension differs from knot 1");
    }
  }
  if (bundles.back().W_x.rows() != n_x) {
    throw std::invalid_argument("transcribe: terminal knot state dimension mismatch");
  }
  if (!bundles.back().is_terminal()) {
    throw std::invalid_argument("transcribe: final bundle must be terminal (no dynamics rows)");
  }

  if (x_init.size() != n_x) {
    throw std::invalid_argument("transcribe: x_init has length " + std::to_string(x_init.size()) +
                                ", bundles have n_x = " + std::to_string(n_x));
  }
  for (int j = 0; j < bundles.front().sample_count(); ++j) {
    if (!(bundles.front().W_x.col(j).array() == x_init.array()).all()) {
      throw std::invalid_argument(
          "transcribe: knot-1 state sample " + std::to_string(j + 1) +
          " differs from x_init; knot 1 must be sampled with its state pinned");
    }
  }

  ConvexSubproblem sp;
  auto& layout = sp.layout;
  layout.n_x = n_x;
  layout.n_c = n_c;
  int offset = 0;
  for (int k = 0; k < N; ++k) {
    layout.alpha_offset.push_back(offset);
    layout.alpha_size.push_back(bundles[k].sample_count());
    offset += bundles[k].sample_count();
  }
  for (int k = 0; k + 1 < N; ++k) {
    layout.s_pos_offset.push_back(offset);
    offset += n_x;
  }
  for (int k = 0; k + 1 < N; ++k) {
    layout.s_neg_offset.push_back(offset);
    offset += n_x;
  }
  for (int k = 0; k + 1 < N; ++k) {
    layout.w_offset.push_back(offset);
    offset += n_c;
  }
  layout.total = offset;

  sp.q = Eigen::VectorXd::Zero(layout.total);
  for (int k = 0; k + 1 < N; ++k) {
    sp.q.segment(layout.s_pos_offset[k], n_x).setConstant(mu);
    sp.q.segment(layout.s_neg_offset[k], n_x).setConstant(mu);
    sp.q.segment(layout.w_offset[k], n_c).setConstant(mu);
  }

  std::vector<Triplet> p_trips;
  for (int k = 0; k < N; ++k) {
    Eigen::MatrixXd gram = bundles[k].W_r.transpose() * bundles[k].W_r;
    add_block(p_trips, gram, layout.alpha_offset[k], layout.alpha_offset[k]);
  }
  sp.P.resize(layout.total, layout.total);
  sp.P.setFromTriplets(p_trips.begin(), p_trips.end());

  const int eq_rows = (N - 1) * n_x + N;
  std::vector<Triplet> eq_trips;
  sp.b_eq = Eigen::VectorXd::Zero(eq_rows);
  int row = 0;
  for (int k = 0; k + 1 < N; ++k) {
    add_block(eq_trips, bundles[k + 1].W_x, row, layout.alpha_offset[k + 1]);
    add_block(eq_trips, -bundles[k].W_f, row, layout.alpha_offset[k]);
    for (int i = 0; i < n_x; ++i) {
      eq_trips.emplace_back(row + i, layout.s_pos_offset[k] + i, -1.0);
      eq_trips.emplace_back(row + i, layout.s_neg_offset[k] + i, 1.0);
    }
    row += n_x;
  }
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < layout.alpha_size[k]; ++j) {
      eq_trips.emplace_back(row, layout.alpha_offset[k] + j, 1.0);
    }
    sp.b_eq(row) = 1.0;
    ++row;
  }
  sp.A_eq.resize(eq_rows, layout.total);
  sp.A_eq.setFromTriplets(eq_trips.begin(), eq_trips.end());

  const int path_rows = (N - 1) * n_c;
  const int slack_vars = 2 * (N - 1) * n_x + (N - 1) * n_c;
  const int alpha_vars = layout.total - slack_vars;
  const int ineq_rows = path_rows + alpha_vars + slack_vars;
  std::vector<Triplet> ineq_trips;
  sp.b_ineq = Eigen::VectorXd::Zero(ineq_rows);
  row = 0;
  for (int k = 0; k + 1 < N; ++k) {
    add_block(ineq_trips, bundles[k].W_c, row, layout.alpha_offset[k]);
    for (int i = 0; i < n_c; ++i) {
      ineq_trips.emplace_back(row + i, layout.w_offset[k] + i, 1.0);
    }
    row += n_c;
  }
  for (int v = 0; v < layout.total; ++v) {
    ineq_trips.emplace_back(row, v, 1.0);
    ++row;
  }
  sp.A_ineq.resize(ineq_rows, layout.total);
  sp.A_ineq.setFromTriplets(ineq_trips.begin(), ineq_trips.end());

  sp.validate();
  return sp;
}

void dump_subproblem_json(const ConvexSubproblem& sp, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = "tbopt-subproblem";
  doc["version"] = 1;
  doc["objective_convention"] = "xi'P xi + q'xi";
  doc["inequality_convention"] = "A_ineq xi >= b_ineq";
  doc["num_variables"] = sp.layout.total;
  doc["P"] = dense_rows(sp.P);
  doc["q"] = std::vector<double>(sp.q.data(), sp.q.data() + sp.q.size());
  doc["A_eq"] = dense_rows(sp.A_eq);
  doc["b_eq"] = std::vector<double>(sp.b_eq.data(), sp.b_eq.data() + sp.b_eq.size());
  doc["A_ineq"] = dense_rows(sp.A_ineq);
  doc["b_ineq"] = std::vector<double>(sp.b_ineq.data(), sp.b_ineq.data() + sp.b_ineq.size());
  doc["layout"] = {{"alpha_offset", sp.layout.alpha_offset},
                   {"alpha_size", sp.layout.alpha_size},
                   {"s_pos_offset", sp.layout.s_pos_offset},
                   {"s_neg_offset", sp.layout.s_neg_offset},
                   {"w_offset", sp.layout.w_offset},
                   {"n_x", sp.layout.n_x},
                   {"n_c", sp.layout.n_c}};

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("dump_subproblem_json: cannot open " + path);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace tbopt
