#include "lp.hpp"

#include <cmath>
#include <limits>

namespace mct::lp {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr int kMaxPivots = 20000;

// Tableau: rows 0..m-1 are constraints [B^{-1}A | B^{-1}b], row m holds the
// reduced costs and (negated) objective in the corner. allowed[j] marks
// columns permitted to enter the basis.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int m, n;

  double& rhs(int i) { return t(i, n); }
  double& cost(int j) { return t(m, j); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Bland's rule; returns optimal/unbounded/stalled.
  Status iterate(const std::vector<bool>& allowed) {
    for (int step = 0; step < kMaxPivots; ++step) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (allowed[j] && cost(j) < -kPivotTol) { enter = j; break; }
      }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t(i, enter);
        if (a > kPivotTol) {
          const double ratio = rhs(i) / a;
          if (ratio < best - 1e-15 ||
              (ratio < best + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
    return Status::stalled;
  }
};

}  // namespace

Result solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
             const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Result res;

  Tableau tb;
  tb.m = m;
  tb.n = n + m;  // artificials appended
  tb.t = Eigen::MatrixXd::Zero(m + 1, tb.n + 1);
  tb.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const double s = (b(i) < 0) ? -1.0 : 1.0;
    tb.t.block(i, 0, 1, n) = s * A.row(i);
    tb.rhs(i) = s * b(i);
    tb.t(i, n + i) = 1.0;
    tb.basis[i] = n + i;
  }
  // Phase 1 reduced costs: minimize the artificial sum.
  for (int i = 0; i < m; ++i) tb.t.row(m) -= tb.t.row(i);
  for (int i = 0; i < m; ++i) tb.t(m, n + i) = 0.0;

  std::vector<bool> allowed(tb.n, true);
  Status st = tb.iterate(allowed);
  if (st == Status::stalled) { res.status = st; return res; }
  const double phase1 = -tb.t(m, tb.n);
  if (phase1 > 1e-7) { res.status = Status::infeasible; return res; }

  // Drive artificials out of the basis where possible; redundant rows keep
  // a zero-valued artificial that is simply barred from re-entering.
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] >= n) {
      for (int j = 0; j < n; ++j) {
        if (std::abs(tb.t(i, j)) > 1e-7) { tb.pivot(i, j); break; }
      }
    }
  }
  for (int j = n; j < tb.n; ++j) allowed[j] = false;

  // Phase 2 reduced costs r = c - c_B B^{-1} A, rebuilt from scratch.
  tb.t.row(m).setZero();
  for (int j = 0; j < n; ++j) tb.cost(j) = c(j);
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n && c(tb.basis[i]) != 0.0)
      tb.t.row(m) -= c(tb.basis[i]) * tb.t.row(i);
  }
  st = tb.iterate(allowed);
  if (st != Status::optimal) { res.status = st; return res; }

  res.status = Status::optimal;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) res.x(tb.basis[i]) = tb.rhs(i);
  res.value = c.dot(res.x);
  return res;
}

}  // namespace mct::lp
