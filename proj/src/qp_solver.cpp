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

#include "tbopt/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>

#include "tbopt/simplex.hpp"

namespace tbopt {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SimplexBlockRef {
  int offset = 0;
  int size = 0;
};

// The QP with general inequality rows rewritten as equality rows carrying a
// nonnegative gap variable, and single-variable rows folded into box bounds.
struct ExtendedQp {
  int n = 0;
  int n_ext = 0;
  int m = 0;
  SpMat P;
  Eigen::VectorXd q;
  SpMat A;
  Eigen::VectorXd b;
  Eigen::VectorXd lb, ub;
  std::vector<char> is_alpha;
  std::vector<SimplexBlockRef> blocks;
};

struct Projector {
  const ExtendedQp* qp = nullptr;
  std::vector<double> targets;
  Eigen::VectorXd lb, ub;

  Eigen::VectorXd apply(Eigen::VectorXd v) const {
    for (std::size_t i = 0; i < qp->blocks.size(); ++i) {
      const auto& blk = qp->blocks[i];
      v.segment(blk.offset, blk.size) =
          project_to_simplex(v.segment(blk.offset, blk.size), targets[i]);
    }
    for (int j = 0; j < qp->n_ext; ++j) {
      if (!qp->is_alpha[j]) {
        v(j) = std::min(std::max(v(j), lb(j)), ub(j));
      }
    }
    return v;
  }
};

ExtendedQp extend(const ConvexSubproblem& sp) {
  ExtendedQp qp;
  qp.n = sp.layout.total;
  qp.is_alpha.assign(qp.n, 0);
  for (int k = 0; k < sp.layout.knot_count(); ++k) {
    qp.blocks.push_back({sp.layout.alpha_offset[k], sp.layout.alpha_size[k]});
    for (int j = 0; j < sp.layout.alpha_size[k]; ++j) {
      qp.is_alpha[sp.layout.alpha_offset[k] + j] = 1;
    }
  }

  Eigen::VectorXd lb = Eigen::VectorXd::Constant(qp.n, -kInf);
  Eigen::VectorXd ub = Eigen::VectorXd::Constant(qp.n, kInf);

  struct GenRow {
    std::vector<std::pair<int, double>> coefs;
    double rhs = 0.0;
  };
  std::vector<GenRow> general;

  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows(sp.A_ineq);
  for (int r = 0; r < rows.rows(); ++r) {
    std::vector<std::pair<int, double>> coefs;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, r); it; ++it) {
      if (it.value() != 0.0) {
        coefs.emplace_back(static_cast<int>(it.col()), it.value());
      }
    }
    const double rhs = sp.b_ineq(r);
    if (coefs.empty()) {
      if (rhs > 0.0) {
        throw std::invalid_argument("solve: inequality row " + std::to_string(r + 1) +
                                    " has no coefficients but positive right-hand side");
      }
      continue;
    }
    if (coefs.size() == 1) {
      const auto [j, a] = coefs.front();
      if (qp.is_alpha[j]) {
        if (a > 0.0 && rhs / a <= 0.0) {
          continue;  // implied by the simplex block
        }
        general.push_back({std::move(coefs), rhs});
        continue;
      }
      if (a > 0.0) {
        lb(j) = std::max(lb(j), rhs / a);
      } else {
        ub(j) = std::min(ub(j), rhs / a);
      }
      if (lb(j) > ub(j)) {
        throw std::invalid_argument("solve: contradictory bounds on variable " +
                                    std::to_string(j + 1));
      }
      continue;
    }
    general.push_back({std::move(coefs), rhs});
  }

  const auto n_gen = static_cast<int>(general.size());
  qp.n_ext = qp.n + n_gen;

  qp.is_alpha.resize(qp.n_ext, 0);
  qp.lb = Eigen::VectorXd::Constant(qp.n_ext, -kInf);
  qp.ub = Eigen::VectorXd::Constant(qp.n_ext, kInf);
  qp.lb.head(qp.n) = lb;
  qp.ub.head(qp.n) = ub;
  qp.lb.tail(n_gen).setZero();

  std::vector<int> block_of(qp.n, -1);
  for (std::size_t i = 0; i < qp.blocks.size(); ++i) {
    for (int j = 0; j < qp.blocks[i].size; ++j) {
      block_of[qp.blocks[i].offset + j] = static_cast<int>(i);
    }
  }

  // Equality rows that restate a whole simplex block (uniform coefficient
  // over exactly one block) are enforced by the projection already; keeping
  // them duplicates the constraint and stalls the dual iterates.
  const Eigen::SparseMatrix<double, Eigen::RowMajor> eq(sp.A_eq);
  std::vector<Triplet> a_trips;
  std::vector<double> b_kept;
  for (int r = 0; r < eq.rows(); ++r) {
    int blk = -1;
    double coef = 0.0;
    int support = 0;
    bool uniform = true;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(eq, r); it; ++it) {
      if (it.value() == 0.0) {
        continue;
      }
      ++support;
      if (support == 1) {
        blk = block_of[static_cast<int>(it.col())];
        coef = it.value();
      } else if (block_of[static_cast<int>(it.col())] != blk ||
                 std::abs(it.value() - coef) > 1e-12 * std::abs(coef)) {
        uniform = false;
      }
    }
    if (uniform && blk >= 0 && support == qp.blocks[blk].size) {
      if (std::abs(sp.b_eq(r) - coef) > 1e-9 * std::max(1.0, std::abs(coef))) {
        throw std::invalid_argument("solve: equality row " + std::to_string(r + 1) +
                                    " contradicts its weight block");
      }
      continue;
    }
    const auto out = static_cast<int>(b_kept.size());
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(eq, r); it; ++it) {
      a_trips.emplace_back(out, it.col(), it.value());
    }
    b_kept.push_back(sp.b_eq(r));
  }

  const auto eq_rows = static_cast<int>(b_kept.size());
  qp.m = eq_rows + n_gen;
  Eigen::VectorXd b(qp.m);
  for (int r = 0; r < eq_rows; ++r) {
    b(r) = b_kept[r];
  }
  for (int g = 0; g < n_gen; ++g) {
    for (const auto& [j, a] : general[g].coefs) {
      a_trips.emplace_back(eq_rows + g, j, a);
    }
    a_trips.emplace_back(eq_rows + g, qp.n + g, -1.0);
    b(eq_rows + g) = general[g].rhs;
  }
  qp.A.resize(qp.m, qp.n_ext);
  qp.A.setFromTriplets(a_trips.begin(), a_trips.end());
  qp.b = std::move(b);

  std::vector<Triplet> p_trips;
  for (int k = 0; k < sp.P.outerSize(); ++k) {
    for (SpMat::InnerIterator it(sp.P, k); it; ++it) {
      p_trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  qp.P.resize(qp.n_ext, qp.n_ext);
  qp.P.setFromTriplets(p_trips.begin(), p_trips.end());

  qp.q = Eigen::VectorXd::Zero(qp.n_ext);
  qp.q.head(qp.n) = sp.q;
  return qp;
}

struct Scaling {
  Eigen::VectorXd D, E;
  double c = 1.0;
};

Scaling equilibrate(const ExtendedQp& qp, const QpSettings& st) {
  Scaling s;
  s.D = Eigen::VectorXd::Ones(qp.m);
  s.E = Eigen::VectorXd::Ones(qp.n_ext);
  if (!st.scaling) {
    return s;
  }

  for (int pass = 0; pass < st.scaling_iters; ++pass) {
    Eigen::VectorXd cmax = Eigen::VectorXd::Zero(qp.n_ext);
    for (int k = 0; k < qp.A.outerSize(); ++k) {
      for (SpMat::InnerIterator it(qp.A, k); it; ++it) {
        const double v = std::abs(s.D(it.row()) * it.value() * s.E(it.col()));
        cmax(it.col()) = std::max(cmax(it.col()), v);
      }
    }
    for (int k = 0; k < qp.P.outerSize(); ++k) {
      for (SpMat::InnerIterator it(qp.P, k); it; ++it) {
        const double v = std::abs(s.E(it.row()) * it.value() * s.E(it.col()));
        cmax(it.row()) = std::max(cmax(it.row()), v);
        cmax(it.col()) = std::max(cmax(it.col()), v);
      }
    }
    for (const auto& blk : qp.blocks) {
      const double g = cmax.segment(blk.offset, blk.size).maxCoeff();
      cmax.segment(blk.offset, blk.size).setConstant(g);
    }
    for (int j = 0; j < qp.n_ext; ++j) {
      if (cmax(j) > 1e-10) {
        s.E(j) /= std::sqrt(cmax(j));
      }
    }

    Eigen::VectorXd rmax = Eigen::VectorXd::Zero(qp.m);
    for (int k = 0; k < qp.A.outerSize(); ++k) {
      for (SpMat::InnerIterator it(qp.A, k); it; ++it) {
        const double v = std::abs(s.D(it.row()) * it.value() * s.E(it.col()));
        rmax(it.row()) = std::max(rmax(it.row()), v);
      }
    }
    for (int i = 0; i < qp.m; ++i) {
      if (rmax(i) > 1e-10) {
        s.D(i) /= std::sqrt(rmax(i));
      }
    }
  }

  Eigen::VectorXd pcol = Eigen::VectorXd::Zero(qp.n_ext);
  for (int k = 0; k < qp.P.outerSize(); ++k) {
    for (SpMat::InnerIterator it(qp.P, k); it; ++it) {
      const double v = std::abs(s.E(it.row()) * it.value() * s.E(it.col()));
      pcol(it.col()) = std::max(pcol(it.col()), v);
    }
  }
  const double pmean = qp.P.nonZeros() > 0 ? pcol.mean() : 0.0;
  const double qn = (s.E.cwiseProduct(qp.q)).lpNorm<Eigen::Infinity>();
  const double denom = std::max(pmean, qn);
  if (denom > 1e-12) {
    s.c = std::clamp(1.0 / denom, 1e-6, 1e6);
  }
  return s;
}

SpMat build_kkt(const SpMat& P2, const SpMat& A, double shift_primal, double reg_dual) {
  const auto n = static_cast<int>(P2.rows());
  const auto m = static_cast<int>(A.rows());
  std::vector<Triplet> t;
  t.reserve(P2.nonZeros() + 2 * static_cast<std::size_t>(A.nonZeros()) + n + m);
  for (int k = 0; k < P2.outerSize(); ++k) {
    for (SpMat::InnerIterator it(P2, k); it; ++it) {
      t.emplace_back(it.row(), it.col(), 2.0 * it.value());
    }
  }
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, shift_primal);
  }
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SpMat::InnerIterator it(A, k); it; ++it) {
      t.emplace_back(n + it.row(), it.col(), it.value());
      t.emplace_back(it.col(), n + it.row(), it.value());
    }
  }
  for (int i = 0; i < m; ++i) {
    t.emplace_back(n + i, n + i, -reg_dual);
  }
  SpMat M(n + m, n + m);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

// Solves against the factored regularized matrix, then refines toward the
// unregularized KKT system (reg_primal/reg_dual are the diagonal shifts that
// must be backed out; pass 0 for a shift that is part of the true system).
Eigen::VectorXd kkt_solve(const Eigen::SimplicialLDLT<SpMat>& ldlt, const SpMat& M, int n, int m,
                          double reg_primal, double reg_dual, const Eigen::VectorXd& rhs,
                          int passes) {
  Eigen::VectorXd x = ldlt.solve(rhs);
  for (int p = 0; p < passes; ++p) {
    Eigen::VectorXd r = rhs - M * x;
    if (reg_primal != 0.0) {
      r.head(n) += reg_primal * x.head(n);
    }
    if (reg_dual != 0.0 && m > 0) {
      r.tail(m) -= reg_dual * x.tail(m);
    }
    x += ldlt.solve(r);
  }
  return x;
}

struct ResidualEval {
  double prim = kInf;
  double prim_rel = kInf;
  double dual = kInf;
};

ResidualEval evaluate(const ExtendedQp& qp, const Projector& uproj, const Eigen::VectorXd& xi,
                      const Eigen::VectorXd& nu) {
  ResidualEval out;
  double prim = 0.0;
  double ax_norm = 0.0;
  Eigen::VectorXd g = 2.0 * (qp.P * xi) + qp.q;
  double atn_norm = 0.0;
  if (qp.m > 0) {
    Eigen::VectorXd ax = qp.A * xi;
    prim = (ax - qp.b).lpNorm<Eigen::Infinity>();
    ax_norm = ax.lpNorm<Eigen::Infinity>();
    Eigen::VectorXd atn = qp.A.transpose() * nu;
    atn_norm = atn.lpNorm<Eigen::Infinity>();
    g += atn;
  }
  for (int j = 0; j < qp.n_ext; ++j) {
    if (qp.is_alpha[j]) {
      prim = std::max(prim, -xi(j));
    } else {
      prim = std::max(prim, qp.lb(j) - xi(j));
      prim = std::max(prim, xi(j) - qp.ub(j));
    }
  }
  for (const auto& blk : qp.blocks) {
    prim = std::max(prim, std::abs(xi.segment(blk.offset, blk.size).sum() - 1.0));
  }
  prim = std::max(prim, 0.0);

  const Eigen::VectorXd pg = xi - uproj.apply(xi - g);
  const double scale =
      std::max({1.0, (2.0 * (qp.P * xi)).lpNorm<Eigen::Infinity>(),
                qp.q.lpNorm<Eigen::Infinity>(), atn_norm});
  out.prim = prim;
  out.prim_rel =
      prim / std::max({1.0, ax_norm, qp.m > 0 ? qp.b.lpNorm<Eigen::Infinity>() : 0.0});
  out.dual = pg.lpNorm<Eigen::Infinity>() / scale;
  return out;
}

// Interior-point refinement: a short primal-dual path-following run on the
// QP with the weight-sum rows made explicit. The barrier keeps every Newton
// system positive definite even where the objective is flat, so this reaches
// tight KKT residuals on degenerate instances where the splitting iteration
// creeps and an active-set guess would thrash.
bool polish_attempt(const ExtendedQp& qp, const Projector& uproj, double tol,
                    const Eigen::VectorXd& seed, Eigen::VectorXd& xi_out,
                    Eigen::VectorXd& nu_out, ResidualEval& res_out) {
  const int n = qp.n_ext;
  const auto n_blocks = static_cast<int>(qp.blocks.size());
  const int m2 = qp.m + n_blocks;

  std::vector<Triplet> a2_trips;
  for (int k = 0; k < qp.A.outerSize(); ++k) {
    for (SpMat::InnerIterator it(qp.A, k); it; ++it) {
      a2_trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int i = 0; i < n_blocks; ++i) {
    for (int j = 0; j < qp.blocks[i].size; ++j) {
      a2_trips.emplace_back(qp.m + i, qp.blocks[i].offset + j, 1.0);
    }
  }
  SpMat A2(m2, n);
  A2.setFromTriplets(a2_trips.begin(), a2_trips.end());
  Eigen::VectorXd b2(m2);
  b2.head(qp.m) = qp.b;
  b2.tail(n_blocks).setOnes();

  Eigen::VectorXd lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    lo(j) = qp.is_alpha[j] ? 0.0 : qp.lb(j);
    hi(j) = qp.is_alpha[j] ? kInf : qp.ub(j);
  }

  const double qn = std::max(1.0, qp.q.lpNorm<Eigen::Infinity>());
  const double bn = std::max(1.0, b2.lpNorm<Eigen::Infinity>());

  Eigen::VectorXd xi = seed;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  const double z_init = std::max(1.0, std::sqrt(qn));
  int n_pairs = 0;
  for (int j = 0; j < n; ++j) {
    const bool fl = std::isfinite(lo(j));
    const bool fh = std::isfinite(hi(j));
    if (fl && fh) {
      const double pad = std::min(0.1, (hi(j) - lo(j)) / 3.0);
      xi(j) = std::clamp(xi(j), lo(j) + pad, hi(j) - pad);
    } else if (fl) {
      xi(j) = std::max(xi(j), lo(j) + 0.1);
    } else if (fh) {
      xi(j) = std::min(xi(j), hi(j) - 0.1);
    }
    if (fl) {
      z(j) = z_init;
      ++n_pairs;
    }
    if (fh) {
      w(j) = z_init;
      ++n_pairs;
    }
  }
  Eigen::VectorXd nu2 = Eigen::VectorXd::Zero(m2);

  std::vector<Triplet> base;
  base.reserve(qp.P.nonZeros() + 2 * a2_trips.size());
  for (int k = 0; k < qp.P.outerSize(); ++k) {
    for (SpMat::InnerIterator it(qp.P, k); it; ++it) {
      base.emplace_back(it.row(), it.col(), 2.0 * it.value());
    }
  }
  for (const auto& t : a2_trips) {
    base.emplace_back(n + t.row(), t.col(), t.value());
    base.emplace_back(t.col(), n + t.row(), t.value());
  }

  Eigen::SimplicialLDLT<SpMat> ldlt;
  SpMat M(n + m2, n + m2);
  bool analyzed = false;
  double reg_p = 1e-11;
  double reg_d = 1e-9;
  Eigen::VectorXd s = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd t = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd rhs(n + m2);

  for (int pass = 0; pass < 50; ++pass) {
    double comp = 0.0;
    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lo(j))) {
        s(j) = xi(j) - lo(j);
        comp += s(j) * z(j);
      }
      if (std::isfinite(hi(j))) {
        t(j) = hi(j) - xi(j);
        comp += t(j) * w(j);
      }
    }
    const double mu = n_pairs > 0 ? comp / n_pairs : 0.0;
    const Eigen::VectorXd rp = A2 * xi - b2;
    const Eigen::VectorXd grad = 2.0 * (qp.P * xi) + qp.q + A2.transpose() * nu2;
    const Eigen::VectorXd rd = grad - z + w;
    if (mu <= 1e-13 * qn && rp.lpNorm<Eigen::Infinity>() <= 1e-12 * bn &&
        rd.lpNorm<Eigen::Infinity>() <= 1e-10 * qn) {
      break;
    }

    bool factored = false;
    for (int attempt = 0; attempt < 3 && !factored; ++attempt) {
      std::vector<Triplet> trips = base;
      for (int j = 0; j < n; ++j) {
        double theta = reg_p;
        if (std::isfinite(lo(j))) {
          theta += z(j) / s(j);
        }
        if (std::isfinite(hi(j))) {
          theta += w(j) / t(j);
        }
        trips.emplace_back(j, j, theta);
      }
      for (int i = 0; i < m2; ++i) {
        trips.emplace_back(n + i, n + i, -reg_d);
      }
      M.setFromTriplets(trips.begin(), trips.end());
      if (!analyzed) {
        ldlt.analyzePattern(M);
        analyzed = true;
      }
      ldlt.factorize(M);
      if (ldlt.info() == Eigen::Success) {
        factored = true;
      } else {
        reg_p *= 100.0;
        reg_d *= 100.0;
      }
    }
    if (!factored) {
      return false;
    }

    rhs.head(n) = -grad;
    rhs.tail(m2) = -rp;
    const Eigen::VectorXd d_aff = ldlt.solve(rhs);
    if (!d_aff.allFinite()) {
      return false;
    }
    Eigen::VectorXd dz_aff = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dw_aff = Eigen::VectorXd::Zero(n);
    double ap_aff = 1.0;
    double ad_aff = 1.0;
    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lo(j))) {
        dz_aff(j) = -z(j) - z(j) / s(j) * d_aff(j);
        if (d_aff(j) < 0.0) {
          ap_aff = std::min(ap_aff, -s(j) / d_aff(j));
        }
        if (dz_aff(j) < 0.0) {
          ad_aff = std::min(ad_aff, -z(j) / dz_aff(j));
        }
      }
      if (std::isfinite(hi(j))) {
        dw_aff(j) = -w(j) + w(j) / t(j) * d_aff(j);
        if (d_aff(j) > 0.0) {
          ap_aff = std::min(ap_aff, t(j) / d_aff(j));
        }
        if (dw_aff(j) < 0.0) {
          ad_aff = std::min(ad_aff, -w(j) / dw_aff(j));
        }
      }
    }
    double comp_aff = 0.0;
    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lo(j))) {
        comp_aff += (s(j) + ap_aff * d_aff(j)) * (z(j) + ad_aff * dz_aff(j));
      }
      if (std::isfinite(hi(j))) {
        comp_aff += (t(j) - ap_aff * d_aff(j)) * (w(j) + ad_aff * dw_aff(j));
      }
    }
    const double mu_aff = n_pairs > 0 ? comp_aff / n_pairs : 0.0;
    const double ratio = mu > 0.0 ? std::max(mu_aff, 0.0) / mu : 0.0;
    const double sigma = std::clamp(ratio * ratio * ratio, 1e-8, 1.0);

    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lo(j))) {
        rhs(j) += (sigma * mu - d_aff(j) * dz_aff(j)) / s(j);
      }
      if (std::isfinite(hi(j))) {
        rhs(j) -= (sigma * mu + d_aff(j) * dw_aff(j)) / t(j);
      }
    }
    const Eigen::VectorXd d = ldlt.solve(rhs);
    if (!d.allFinite()) {
      return false;
    }
    const Eigen::VectorXd dxi = d.head(n);
    Eigen::VectorXd dz = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dw = Eigen::VectorXd::Zero(n);
    double sp = 1.0;
    double sd = 1.0;
    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lo(j))) {
        dz(j) = (sigma * mu - s(j) * z(j) - d_aff(j) * dz_aff(j)) / s(j) - z(j) / s(j) * dxi(j);
        if (dxi(j) < 0.0) {
          sp = std::min(sp, -s(j) / dxi(j));
        }
        if (dz(j) < 0.0) {
          sd = std::min(sd, -z(j) / dz(j));
        }
      }
      if (std::isfinite(hi(j))) {
        dw(j) = (sigma * mu - t(j) * w(j) + d_aff(j) * dw_aff(j)) / t(j) + w(j) / t(j) * dxi(j);
        if (dxi(j) > 0.0) {
          sp = std::min(sp, t(j) / dxi(j));
        }
        if (dw(j) < 0.0) {
          sd = std::min(sd, -w(j) / dw(j));
        }
      }
    }
    const double a_p = std::min(1.0, 0.995 * sp);
    const double a_d = std::min(1.0, 0.995 * sd);
    if (a_p < 1e-12 && a_d < 1e-12) {
      return false;
    }
    xi += a_p * dxi;
    nu2 += a_d * d.tail(m2);
    z += a_d * dz;
    w += a_d * dw;
  }

  Eigen::VectorXd nu_head = nu2.head(qp.m);
  const ResidualEval res = evaluate(qp, uproj, xi, nu_head);
  if (res.prim <= tol && res.dual <= tol) {
    xi_out = std::move(xi);
    nu_out = std::move(nu_head);
    res_out = res;
    return true;
  }
  return false;
}

}  // namespace

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kOptimal:
      return "optimal";
    case SolverStatus::kMaxIter:
      return "max_iter";
    case SolverStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

double SubproblemSolution::slack_l1() const {
  double total = 0.0;
  for (const auto& s : dyn_slack) {
    total += s.lpNorm<1>();
  }
  for (const auto& w : ineq_slack) {
    total += w.lpNorm<1>();
  }
  return total;
}

SubproblemSolution solve(const ConvexSubproblem& sp, const QpSettings& settings) {
  sp.validate();
  SubproblemSolution sol;

  const ExtendedQp qp = extend(sp);
  const Scaling sc = equilibrate(qp, settings);

  SpMat P_s = sc.E.asDiagonal() * qp.P * sc.E.asDiagonal();
  P_s *= sc.c;
  const SpMat A_s = sc.D.asDiagonal() * qp.A * sc.E.asDiagonal();
  const Eigen::VectorXd q_s = sc.c * sc.E.cwiseProduct(qp.q);
  const Eigen::VectorXd b_s = sc.D.cwiseProduct(qp.b);

  Projector sproj{&qp, {}, qp.lb.cwiseQuotient(sc.E), qp.ub.cwiseQuotient(sc.E)};
  Projector uproj{&qp, {}, qp.lb, qp.ub};
  for (const auto& blk : qp.blocks) {
    sproj.targets.push_back(1.0 / sc.E(blk.offset));
    uproj.targets.push_back(1.0);
  }

  double rho = settings.rho;
  const double gamma = settings.over_relax;
  const int check_every = std::max(1, settings.check_interval);
  const int max_iter = std::max(1, settings.max_iter);

  SpMat M = build_kkt(P_s, A_s, rho, settings.reg);
  Eigen::SimplicialLDLT<SpMat> ldlt;
  ldlt.analyzePattern(M);
  ldlt.factorize(M);
  if (ldlt.info() != Eigen::Success) {
    sol.message = "KKT factorization failed";
    return sol;
  }

  Eigen::VectorXd zeta = Eigen::VectorXd::Zero(qp.n_ext);
  for (std::size_t i = 0; i < qp.blocks.size(); ++i) {
    const auto& blk = qp.blocks[i];
    zeta.segment(blk.offset, blk.size).setConstant(sproj.targets[i] / blk.size);
  }
  zeta = sproj.apply(zeta);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(qp.n_ext);
  Eigen::VectorXd fp_prev = zeta + y;

  Eigen::VectorXd rhs(qp.n_ext + qp.m);
  Eigen::VectorXd xi_u, nu_u;
  ResidualEval res;
  bool converged = false;
  bool polished = false;
  int iter = 0;
  int refactor_budget = 50;
  int polish_attempts = 0;
  int checks_since_polish = 0;
  int polish_gap = 1;

  while (iter < max_iter) {
    ++iter;
    rhs.head(qp.n_ext) = rho * (zeta - y) - q_s;
    if (qp.m > 0) {
      rhs.tail(qp.m) = b_s;
    }
    const Eigen::VectorXd x =
        kkt_solve(ldlt, M, qp.n_ext, qp.m, 0.0, settings.reg, rhs, 1);
    const Eigen::VectorXd xi_hat = x.head(qp.n_ext);
    const Eigen::VectorXd nu = x.tail(qp.m);

    const Eigen::VectorXd xi_r = gamma * xi_hat + (1.0 - gamma) * zeta;
    const Eigen::VectorXd zeta_new = sproj.apply(xi_r + y);
    y += xi_r - zeta_new;
    zeta = zeta_new;

    if (settings.record_merit) {
      Eigen::VectorXd fp = zeta + y;
      sol.merit_history.push_back((fp - fp_prev).norm());
      fp_prev = std::move(fp);
    }

    if (!zeta.allFinite() || !y.allFinite()) {
      sol.status = SolverStatus::kNumericalFailure;
      sol.message = "non-finite iterate at iteration " + std::to_string(iter);
      sol.iterations = iter;
      return sol;
    }

    if (iter % check_every != 0 && iter != max_iter) {
      continue;
    }

    xi_u = sc.E.cwiseProduct(zeta);
    nu_u = qp.m > 0 ? Eigen::VectorXd(sc.D.cwiseProduct(nu) / sc.c) : Eigen::VectorXd(0);
    res = evaluate(qp, uproj, xi_u, nu_u);
    sol.residual_history.push_back({res.prim, res.dual});

    if (res.prim <= settings.tol && res.dual <= settings.tol) {
      converged = true;
      break;
    }

    ++checks_since_polish;
    if (settings.polish && polish_attempts < 8 && checks_since_polish >= polish_gap) {
      ++polish_attempts;
      checks_since_polish = 0;
      polish_gap *= 2;
      Eigen::VectorXd xi_p, nu_p;
      ResidualEval res_p;
      if (polish_attempt(qp, uproj, settings.tol, xi_u, xi_p, nu_p, res_p)) {
        xi_u = std::move(xi_p);
        nu_u = std::move(nu_p);
        res = res_p;
        sol.residual_history.push_back({res.prim, res.dual});
        converged = true;
        polished = true;
        break;
      }
    }

    if (settings.adaptive_rho && refactor_budget > 0) {
      const double ratio =
          std::sqrt(std::max(res.prim_rel, 1e-14) / std::max(res.dual, 1e-14));
      const double rho_new = std::clamp(rho * ratio, 1e-6, 1e6);
      if (rho_new > 5.0 * rho || rho_new < 0.2 * rho) {
        y *= rho / rho_new;
        rho = rho_new;
        M = build_kkt(P_s, A_s, rho, settings.reg);
        ldlt.factorize(M);
        --refactor_budget;
        if (ldlt.info() != Eigen::Success) {
          sol.status = SolverStatus::kNumericalFailure;
          sol.message = "KKT refactorization failed at rho " + std::to_string(rho);
          sol.iterations = iter;
          return sol;
        }
      }
    }
  }

  sol.iterations = iter;
  sol.status = converged ? SolverStatus::kOptimal : SolverStatus::kMaxIter;

  if (settings.polish && !polished) {
    Eigen::VectorXd xi_p, nu_p;
    ResidualEval res_p;
    if (polish_attempt(qp, uproj, settings.tol, xi_u, xi_p, nu_p, res_p)) {
      xi_u = std::move(xi_p);
      nu_u = std::move(nu_p);
      res = res_p;
      polished = true;
      sol.status = SolverStatus::kOptimal;
      sol.residual_history.push_back({res.prim, res.dual});
    }
  }
  sol.polished = polished;

  sol.kkt_residuals = {res.prim, res.dual};
  sol.xi = xi_u.head(qp.n);
  sol.objective = sp.objective_at(sol.xi);

  const auto& layout = sp.layout;
  for (int k = 0; k < layout.knot_count(); ++k) {
    SimplexWeights w;
    w.alpha = sol.xi.segment(layout.alpha_offset[k], layout.alpha_size[k]);
    sol.weights.push_back(std::move(w));
  }
  for (std::size_t k = 0; k < layout.s_pos_offset.size(); ++k) {
    sol.dyn_slack.push_back(sol.xi.segment(layout.s_pos_offset[k], layout.n_x) -
                            sol.xi.segment(layout.s_neg_offset[k], layout.n_x));
  }
  for (std::size_t k = 0; k < layout.w_offset.size(); ++k) {
    sol.ineq_slack.push_back(sol.xi.segment(layout.w_offset[k], layout.n_c));
  }
  if (sol.status == SolverStatus::kMaxIter) {
    sol.message = "iteration limit reached before tolerances";
  }
  return sol;
}

SubproblemSolution solve(const ConvexSubproblem& sp, double tol, int max_iter) {
  QpSettings settings;
  settings.tol = tol;
  settings.max_iter = max_iter;
  return solve(sp, settings);
}

}  // namespace tbopt
