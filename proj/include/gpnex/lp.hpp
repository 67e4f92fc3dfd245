#pragma once

#include <Eigen/Dense>

namespace gpnex {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;        // solution of the posed problem
  double objective = 0.0;
  Eigen::VectorXd multipliers;  // equality multipliers (standard form only)
};

// min f.y  subject to  A y = b, y >= 0.
// Dense two-phase revised simplex with Bland's rule; A must have far fewer
// rows than columns here (rows = number of free primal variables).
LpResult solve_standard_min(const Eigen::VectorXd& f, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& b);

// max c.x  subject to  G x <= h, x free.
// Solved through the dual (min h.y, G^T y = c, y >= 0); the primal optimum is
// the vector of optimal dual multipliers. Infeasible/unbounded statuses refer
// to THIS problem, not the dual.
LpResult solve_inequality_lp_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& G,
                                 const Eigen::VectorXd& h);

}  // namespace gpnex
