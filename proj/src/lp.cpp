#include "gpnex/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gpnex {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SimplexState {
  MatrixXd A;   // k x (m + k), real columns then artificials
  VectorXd b;   // k, nonnegative
  int k = 0, m = 0;
  std::vector<int> basis;  // column index per row
  MatrixXd Binv;

  VectorXd column(int j) const { return A.col(j); }

  void refactor() {
    MatrixXd B(k, k);
    for (int i = 0; i < k; ++i) B.col(i) = A.col(basis[i]);
    Binv = B.fullPivLu().inverse();
  }

  // One priced simplex iteration for the given cost vector over columns
  // [0, limit). Returns 0 = optimal, 1 = pivoted, -1 = unbounded.
  int iterate(const VectorXd& cost, int limit) {
    VectorXd cb(k);
    for (int i = 0; i < k; ++i) cb[i] = cost[basis[i]];
    const VectorXd pi = Binv.transpose() * cb;
    const VectorXd xb = Binv * b;

    int enter = -1;
    for (int j = 0; j < limit; ++j) {  // Bland: first improving index
      bool basic = false;
      for (int i = 0; i < k; ++i)
        if (basis[i] == j) {
          basic = true;
          break;
        }
      if (basic) continue;
      const double r = cost[j] - pi.dot(A.col(j));
      if (r < -kReducedCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return 0;

    const VectorXd d = Binv * A.col(enter);
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      if (d[i] > kPivotTol) {
        const double ratio = std::max(xb[i], 0.0) / d[i];
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 &&
                                     (leave < 0 || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return -1;

    // Product-form update of the basis inverse.
    const double piv = d[leave];
    VectorXd row = Binv.row(leave) / piv;
    for (int i = 0; i < k; ++i) {
      if (i == leave) continue;
      Binv.row(i) -= d[i] * row.transpose();
    }
    Binv.row(leave) = row.transpose();
    basis[leave] = enter;
    return 1;
  }
};

LpResult run_standard(const VectorXd& f, const MatrixXd& A_in, const VectorXd& b_in,
                      VectorXd* multipliers_out) {
  const int k = static_cast<int>(A_in.rows());
  const int m = static_cast<int>(A_in.cols());

  SimplexState st;
  st.k = k;
  st.m = m;
  st.A.resize(k, m + k);
  st.A.leftCols(m) = A_in;
  st.A.rightCols(k) = MatrixXd::Identity(k, k);
  st.b = b_in;
  VectorXd sign = VectorXd::Ones(k);
  for (int i = 0; i < k; ++i)
    if (st.b[i] < 0) {
      st.b[i] = -st.b[i];
      st.A.row(i) = -st.A.row(i);
      st.A(i, m + i) = 1.0;  // keep the artificial column positive
      sign[i] = -1.0;
    }
  st.basis.resize(k);
  for (int i = 0; i < k; ++i) st.basis[i] = m + i;
  st.Binv = MatrixXd::Identity(k, k);

  const int max_iter = 40 * (m + k) + 2000;
  LpResult res;

  // Phase 1: drive out the artificial infeasibility.
  VectorXd cost1 = VectorXd::Zero(m + k);
  cost1.tail(k).setOnes();
  int iter = 0;
  for (;; ++iter) {
    if (iter > max_iter) return res;  // IterationLimit
    if (iter % 64 == 63) st.refactor();
    const int step = st.iterate(cost1, m + k);
    if (step == 0) break;
    if (step < 0) return res;  // phase-1 objective is bounded below by 0
  }
  {
    const VectorXd xb = st.Binv * st.b;
    double art = 0.0;
    for (int i = 0; i < k; ++i)
      if (st.basis[i] >= m) art += std::max(xb[i], 0.0);
    if (art > 1e-7) {
      res.status = LpStatus::Infeasible;
      return res;
    }
  }

  // Pivot leftover artificials out of the basis where possible; a row whose
  // tableau is entirely zero is redundant and its artificial stays at zero.
  for (int i = 0; i < k; ++i) {
    if (st.basis[i] < m) continue;
    const VectorXd brow = st.Binv.row(i);
    for (int j = 0; j < m; ++j) {
      const double entry = brow.dot(st.A.col(j));
      if (std::abs(entry) > 1e-8) {
        VectorXd d = st.Binv * st.A.col(j);
        VectorXd row = st.Binv.row(i) / d[i];
        for (int r = 0; r < k; ++r) {
          if (r == i) continue;
          st.Binv.row(r) -= d[r] * row.transpose();
        }
        st.Binv.row(i) = row.transpose();
        st.basis[i] = j;
        break;
      }
    }
  }

  // Phase 2 over the real columns only.
  VectorXd cost2 = VectorXd::Zero(m + k);
  cost2.head(m) = f;
  for (;; ++iter) {
    if (iter > max_iter) return res;
    if (iter % 64 == 63) st.refactor();
    const int step = st.iterate(cost2, m);
    if (step == 0) break;
    if (step < 0) {
      res.status = LpStatus::Unbounded;
      return res;
    }
  }

  const VectorXd xb = st.Binv * st.b;
  res.x = VectorXd::Zero(m);
  double obj = 0.0;
  for (int i = 0; i < k; ++i) {
    if (st.basis[i] < m) {
      res.x[st.basis[i]] = std::max(xb[i], 0.0);
      obj += f[st.basis[i]] * xb[i];
    }
  }
  res.objective = obj;
  if (multipliers_out) {
    VectorXd cb(k);
    for (int i = 0; i < k; ++i) cb[i] = cost2[st.basis[i]];
    VectorXd pi = st.Binv.transpose() * cb;
    *multipliers_out = pi.cwiseProduct(sign);
  }
  res.status = LpStatus::Optimal;
  return res;
}

}  // namespace

LpResult solve_standard_min(const VectorXd& f, const MatrixXd& A, const VectorXd& b) {
  VectorXd pi;
  LpResult res = run_standard(f, A, b, &pi);
  res.multipliers = pi;
  return res;
}

LpResult solve_inequality_lp_max(const VectorXd& c, const MatrixXd& G, const VectorXd& h) {
  VectorXd pi;
  const LpResult dual = run_standard(h, G.transpose(), c, &pi);
  LpResult res;
  switch (dual.status) {
    case LpStatus::Optimal:
      res.status = LpStatus::Optimal;
      res.x = pi;
      res.objective = dual.objective;  // strong duality
      break;
    case LpStatus::Infeasible:
      res.status = LpStatus::Unbounded;  // dual infeasible => primal unbounded
      break;
    case LpStatus::Unbounded:
      res.status = LpStatus::Infeasible;  // dual unbounded => primal infeasible
      break;
    default:
      res.status = LpStatus::IterationLimit;
  }
  return res;
}

}  // namespace gpnex
