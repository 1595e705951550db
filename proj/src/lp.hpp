#pragma once

// Small dense two-phase simplex solver, used for polytope gauge, membership
// and support queries. Desk scale only: tens of variables, Bland's rule, no
// sparsity. Problems are given in standard form
//     min c.x   s.t.  A x = b,  x >= 0.

#include <Eigen/Dense>
#include <vector>

namespace mct::lp {

enum class Status { optimal, infeasible, unbounded, stalled };

struct Result {
  Status status = Status::stalled;
  double value = 0.0;
  Eigen::VectorXd x;
};

Result solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
             const Eigen::VectorXd& c);

}  // namespace mct::lp
