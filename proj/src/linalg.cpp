#include "mct/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace mct {

MatrixTuple::MatrixTuple(std::vector<ComplexMatrix> ms,
                         const ToleranceConfig& tol)
    : mats(std::move(ms)) {
  hermitian.reserve(mats.size());
  const int nn = mats.empty() ? 0 : static_cast<int>(mats[0].rows());
  for (const auto& m : mats) {
    if (m.rows() != m.cols()) throw std::invalid_argument("tuple entries must be square");
    if (m.rows() != nn) throw std::invalid_argument("tuple entries must share one size");
    // Entrywise max is scale enough for the flag; a singular value
    // decomposition here would dominate every large construction.
    const double scale = std::max(1.0, m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0);
    hermitian.push_back(herm_defect(m) <= tol.abs_tol * scale);
  }
}

MatrixTuple::MatrixTuple(std::vector<ComplexMatrix> ms, std::vector<bool> herm,
                         const ToleranceConfig& tol)
    : mats(std::move(ms)), hermitian(std::move(herm)) {
  if (mats.size() != hermitian.size())
    throw std::invalid_argument("hermitian flag count mismatch");
  const int nn = mats.empty() ? 0 : static_cast<int>(mats[0].rows());
  for (std::size_t j = 0; j < mats.size(); ++j) {
    const auto& m = mats[j];
    if (m.rows() != m.cols()) throw std::invalid_argument("tuple entries must be square");
    if (m.rows() != nn) throw std::invalid_argument("tuple entries must share one size");
    if (hermitian[j]) {
      const double scale = std::max(1.0, m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0);
      if (herm_defect(m) > tol.abs_tol * scale)
        throw std::invalid_argument("matrix flagged hermitian fails the residual check");
    }
  }
}

bool MatrixTuple::all_hermitian() const {
  for (bool h : hermitian)
    if (!h) return false;
  return true;
}

Isometry::Isometry(ComplexMatrix v, const ToleranceConfig& tol) : V(std::move(v)) {
  if (V.rows() < V.cols()) throw std::invalid_argument("isometry must not shrink rows");
  ComplexMatrix g = V.adjoint() * V;
  g -= ComplexMatrix::Identity(V.cols(), V.cols());
  if (op_norm(g) > std::max(tol.abs_tol, 1e-8))
    throw std::invalid_argument("columns are not orthonormal");
}

double Isometry::defect() const {
  ComplexMatrix g = V.adjoint() * V;
  g -= ComplexMatrix::Identity(V.cols(), V.cols());
  return op_norm(g);
}

double op_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // Exactly hermitian input takes the symmetric eigenvalue path.
  if (m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

// Frobenius norm of M - M*; an upper bound on the operator-norm defect.
double herm_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_sqrt needs a square matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, 10 * tol.abs_tol * scale))
    throw std::invalid_argument("psd_sqrt needs a hermitian matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm_part(m));
  RealVector vals = es.eigenvalues();
  // Eigenvalues indistinguishable from zero at working precision must be
  // squashed, not rooted: sqrt turns 1e-15 rounding noise into 3e-8 output.
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * scale;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol.eig_tol * scale)
      throw std::domain_error("psd_sqrt: eigenvalue below -eig_tol");
    if (vals(i) < floor) vals(i) = 0;
  }
  return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix compress(const Isometry& v, const ComplexMatrix& m) {
  if (m.rows() != v.big()) throw std::invalid_argument("compress: size mismatch");
  return v.V.adjoint() * m * v.V;
}

MatrixTuple compress(const Isometry& v, const MatrixTuple& t) {
  std::vector<ComplexMatrix> out;
  out.reserve(t.mats.size());
  for (const auto& m : t.mats) out.push_back(compress(v, m));
  return MatrixTuple(std::move(out));
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  ComplexMatrix out = ComplexMatrix::Zero(r, c);
  Eigen::Index i = 0, j = 0;
  for (const auto& b : blocks) {
    out.block(i, j, b.rows(), b.cols()) = b;
    i += b.rows();
    j += b.cols();
  }
  return out;
}

ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& d) {
  const Eigen::Index n = a.rows(), m = a.cols();
  if (b.rows() != n || c.cols() != m || d.rows() != c.rows() || d.cols() != b.cols())
    throw std::invalid_argument("block2: incompatible blocks");
  ComplexMatrix out(n + c.rows(), m + b.cols());
  out.topLeftCorner(n, m) = a;
  out.topRightCorner(n, b.cols()) = b;
  out.bottomLeftCorner(c.rows(), m) = c;
  out.bottomRightCorner(c.rows(), b.cols()) = d;
  return out;
}

RealVector herm_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void herm_eigendecomposition(const ComplexMatrix& m, RealVector& vals,
                             ComplexMatrix& vecs) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm_part(m));
  vals = es.eigenvalues();
  vecs = es.eigenvectors();
}

std::uint64_t Rng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

Complex Rng::cnormal() { return Complex(normal(), normal()) / std::sqrt(2.0); }

ComplexMatrix Rng::ginibre(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cnormal();
  return m;
}

ComplexMatrix Rng::hermitian(int n) {
  ComplexMatrix g = ginibre(n);
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix Rng::hermitian_contraction(int n) {
  ComplexMatrix h = hermitian(n);
  const double nrm = op_norm(h);
  if (nrm > 0) h /= nrm * uniform(1.0, 2.0);
  return h;
}

ComplexMatrix Rng::unitary(int n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(n));
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
  }
  return q;
}

ComplexMatrix Rng::contraction(int n) {
  ComplexMatrix g = ginibre(n);
  const double nrm = op_norm(g);
  if (nrm > 0) g /= nrm * uniform(1.0, 2.0);
  return g;
}

ComplexMatrix Rng::psd_contraction(int n) {
  ComplexMatrix u = unitary(n);
  RealVector vals(n);
  for (int i = 0; i < n; ++i) vals(i) = uniform();
  return u * vals.asDiagonal() * u.adjoint();
}

}  // namespace mct
