#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mct {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerances shared across the library. eig_tol is the eigenvalue clipping
// threshold for PSD square roots and joint-spectrum clustering; seed drives
// every randomized routine so runs are reproducible.
struct ToleranceConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double eig_tol = 1e-7;
  std::uint64_t seed = 0;
};

// Ordered list of same-size square matrices with per-entry hermitian flags.
// The flags are validated on construction: a matrix marked hermitian must
// satisfy ||M - M*|| <= tol * max(1, ||M||).
struct MatrixTuple {
  std::vector<ComplexMatrix> mats;
  std::vector<bool> hermitian;

  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<ComplexMatrix> ms,
                       const ToleranceConfig& tol = {});
  MatrixTuple(std::vector<ComplexMatrix> ms, std::vector<bool> herm,
              const ToleranceConfig& tol = {});

  int d() const { return static_cast<int>(mats.size()); }
  int n() const { return mats.empty() ? 0 : static_cast<int>(mats[0].rows()); }
  bool all_hermitian() const;
  const ComplexMatrix& operator[](int j) const { return mats.at(j); }
};

// Column isometry V: C^small -> C^big with V*V = I.
struct Isometry {
  ComplexMatrix V;

  Isometry() = default;
  explicit Isometry(ComplexMatrix v, const ToleranceConfig& tol = {});

  int big() const { return static_cast<int>(V.rows()); }
  int small() const { return static_cast<int>(V.cols()); }
  double defect() const;  // ||V*V - I||
};

// Largest singular value.
double op_norm(const ComplexMatrix& m);

// Hermitian residual ||M - M*||.
double herm_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);

// Principal square root of a PSD matrix. Eigenvalues in [-eig_tol, 0) are
// clipped to zero; anything below -eig_tol is an error.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const ToleranceConfig& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix compress(const Isometry& v, const ComplexMatrix& m);
MatrixTuple compress(const Isometry& v, const MatrixTuple& t);

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

// [[a, b], [c, d]] out of four equally sized blocks.
ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ComplexMatrix& c, const ComplexMatrix& d);

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }
inline ComplexMatrix herm_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) / 2.0;
}
inline ComplexMatrix antiherm_part_over_i(const ComplexMatrix& m) {
  return (m - m.adjoint()) / Complex(0, 2);
}

// Sorted eigenvalues / full decomposition of a hermitian matrix.
RealVector herm_eigenvalues(const ComplexMatrix& m);
void herm_eigendecomposition(const ComplexMatrix& m, RealVector& vals,
                             ComplexMatrix& vecs);

// Deterministic seeded generators. Not cryptographic; used for direction
// sets, probe vectors and test instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next_u64();
  double uniform();               // [0, 1)
  double uniform(double a, double b);
  double normal();
  Complex cnormal();
  ComplexMatrix ginibre(int n);          // iid complex gaussian entries
  ComplexMatrix hermitian(int n);        // gaussian hermitian, ||.|| ~ O(sqrt n)
  ComplexMatrix hermitian_contraction(int n);
  ComplexMatrix unitary(int n);          // haar via QR of ginibre
  ComplexMatrix contraction(int n);      // ||.|| <= 1, generic
  ComplexMatrix psd_contraction(int n);  // 0 <= M <= I

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mct
