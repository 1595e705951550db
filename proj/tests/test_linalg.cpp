#include <doctest.h>

#include <cmath>

#include "mct/linalg.hpp"
#include "test_support.hpp"

using namespace mct;
using testsup::pauli_x;
using testsup::pauli_z;

TEST_CASE("op_norm is the largest singular value") {
  ComplexMatrix m(2, 2);
  m << 0.0, 2.0, 0.0, 0.0;
  CHECK(op_norm(m) == doctest::Approx(2.0).epsilon(1e-12));

  // Rank-one uv*: norm equals |u||v| = sqrt(2) * sqrt(5).
  ComplexMatrix r(2, 2);
  r << 1.0, 2.0, 1.0, 2.0;
  CHECK(op_norm(r) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("psd_sqrt reproduces the hand-computed root of [[2,1],[1,2]]") {
  // Eigenvalues 1 and 3, so the root has entries (sqrt(3)+-1)/2.
  ComplexMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  const double s3 = std::sqrt(3.0);
  ComplexMatrix want(2, 2);
  want << (s3 + 1) / 2, (s3 - 1) / 2, (s3 - 1) / 2, (s3 + 1) / 2;
  CHECK((psd_sqrt(m) - want).norm() < 1e-12);
}

TEST_CASE("psd_sqrt clips slightly negative eigenvalues and rejects real ones") {
  ComplexMatrix tiny = -1e-9 * ComplexMatrix::Identity(2, 2);
  ToleranceConfig tol;
  CHECK(psd_sqrt(tiny, tol).norm() < 1e-7);
  ComplexMatrix bad = -1.0 * ComplexMatrix::Identity(2, 2);
  CHECK_THROWS(psd_sqrt(bad, tol));
}

TEST_CASE("kron and block2 agree on the Pauli identities") {
  const ComplexMatrix z = pauli_z(), x = pauli_x();
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  // block2(c, r, r, -c) is Z kron c + X kron r.
  ComplexMatrix lhs = block2(z, x, x, -z);
  ComplexMatrix rhs = kron(z, z) + kron(x, x);
  CHECK((lhs - rhs).norm() == 0.0);
  CHECK((kron(i2, z) - direct_sum(z, z)).norm() == 0.0);
}

TEST_CASE("direct_sum stacks blocks diagonally") {
  ComplexMatrix a = ComplexMatrix::Identity(1, 1);
  ComplexMatrix b = 2.0 * ComplexMatrix::Identity(2, 2);
  ComplexMatrix s = direct_sum(a, b);
  CHECK(s.rows() == 3);
  CHECK(s(0, 0) == Complex(1.0));
  CHECK(s(2, 2) == Complex(2.0));
  CHECK(s(0, 1) == Complex(0.0));
}

TEST_CASE("herm_eigenvalues sorts and matches [[1,i],[-i,1]] -> {0,2}") {
  ComplexMatrix m(2, 2);
  m << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0);
  RealVector ev = herm_eigenvalues(m);
  CHECK(ev(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("MatrixTuple validates hermitian flags") {
  ComplexMatrix notherm(2, 2);
  notherm << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS(MatrixTuple({notherm}, std::vector<bool>{true}));
  CHECK_NOTHROW(MatrixTuple({notherm}, std::vector<bool>{false}));
  MatrixTuple t({pauli_z(), pauli_x()});
  CHECK(t.all_hermitian());
  CHECK(t.d() == 2);
  CHECK(t.n() == 2);
}

TEST_CASE("Isometry validates V*V = I and compress uses it") {
  ComplexMatrix v = ComplexMatrix::Zero(4, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 1.0;
  Isometry iso(v);
  CHECK(iso.defect() < 1e-15);
  ComplexMatrix big = ComplexMatrix::Zero(4, 4);
  big(0, 0) = 5.0;
  big(1, 1) = 7.0;
  big(2, 2) = 9.0;
  ComplexMatrix small = compress(iso, big);
  CHECK(small(0, 0) == Complex(5.0));
  CHECK(small(1, 1) == Complex(7.0));

  ComplexMatrix notiso = ComplexMatrix::Ones(4, 2);
  CHECK_THROWS(Isometry(notiso));
}

TEST_CASE("rng streams are reproducible and shaped") {
  Rng a(7), b(7), c(8);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.uniform() == b.uniform());
  CHECK(a.next_u64() != c.next_u64());

  Rng r(42);
  ComplexMatrix u = r.unitary(5);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(5, 5)).norm() < 1e-12);

  ComplexMatrix h = r.hermitian(6);
  CHECK(herm_defect(h) == 0.0);

  ComplexMatrix k = r.contraction(4);
  CHECK(op_norm(k) <= 1.0 + 1e-12);

  ComplexMatrix p = r.psd_contraction(4);
  RealVector ev = herm_eigenvalues(p);
  CHECK(ev.minCoeff() >= -1e-12);
  CHECK(ev.maxCoeff() <= 1.0 + 1e-12);
}
