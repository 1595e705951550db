#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mct/anticommuting.hpp"
#include "mct/dilation.hpp"
#include "test_support.hpp"

using namespace mct;
using testsup::pauli_x;
using testsup::pauli_y;
using testsup::pauli_z;

namespace {

ComplexMatrix scalar1(double v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

MatrixTuple scalar_tuple(const std::vector<double>& vals) {
  std::vector<ComplexMatrix> mats;
  for (double v : vals) mats.push_back(scalar1(v));
  return MatrixTuple(std::move(mats), std::vector<bool>(vals.size(), true));
}

// Parity-sign diagonal on 2^d coordinates.
ComplexMatrix parity_diag(int d) {
  const int big = 1 << d;
  ComplexMatrix z = ComplexMatrix::Zero(big, big);
  for (int p = 0; p < big; ++p)
    z(p, p) = (__builtin_popcount(static_cast<unsigned>(p)) & 1) ? -1.0 : 1.0;
  return z;
}

}  // namespace

TEST_CASE("clifford generators: frozen small families") {
  CliffordTuple c1 = clifford_generators(1);
  CHECK(c1.f.d() == 1);
  CHECK(c1.f.n() == 1);
  CHECK(c1.f[0](0, 0) == Complex(1.0, 0.0));

  CliffordTuple c2 = clifford_generators(2);
  CHECK(c2.f.n() == 2);
  CHECK((c2.f[0] - pauli_z()).norm() == 0.0);
  CHECK((c2.f[1] - pauli_x()).norm() == 0.0);

  CliffordTuple c3 = clifford_generators(3);
  CHECK(c3.f.n() == 4);
  CHECK((c3.f[0] - kron(pauli_z(), pauli_z())).norm() == 0.0);
  CHECK((c3.f[1] - kron(pauli_x(), pauli_z())).norm() == 0.0);
  CHECK((c3.f[2] - kron(ComplexMatrix::Identity(2, 2), pauli_x())).norm() == 0.0);

  CHECK_THROWS_AS(clifford_generators(0), std::invalid_argument);
  CHECK_THROWS_AS(clifford_generators(15), std::invalid_argument);
}

TEST_CASE("clifford relations are exact up to d = 10") {
  for (int d : {1, 2, 3, 4, 6, 8, 10}) {
    CliffordTuple c = clifford_generators(d);
    CHECK(c.f.n() == (d == 1 ? 1 : 1 << (d - 1)));
    CliffordResiduals r = clifford_relation_residuals(c.f);
    CHECK(r.worst() <= 1e-13);
  }
}

TEST_CASE("clifford residuals detect a perturbed family") {
  CliffordTuple c = clifford_generators(2);
  std::vector<ComplexMatrix> mats = {c.f[0] + 1e-3 * pauli_x(), c.f[1]};
  MatrixTuple bent(std::move(mats), std::vector<bool>{true, true});
  CliffordResiduals r = clifford_relation_residuals(bent);
  CHECK(r.anticommute > 1e-4);

  std::vector<ComplexMatrix> skew = {c.f[0], c.f[1]};
  skew[1](0, 1) += Complex(0.0, 1e-3);
  MatrixTuple bent2(std::move(skew), std::vector<bool>{false, false});
  CHECK(clifford_relation_residuals(bent2).hermitian > 1e-4);
}

TEST_CASE("anticommuting dilation of the scalar pair (1, 1) is the frozen pair") {
  DilationCertificate cert = anticommuting_dilation(
      scalar_tuple({1.0, 1.0}), ScaleVector({std::sqrt(2.0), std::sqrt(2.0)}));

  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix a1 = block2(pauli_z(), i2, i2, -pauli_z());
  ComplexMatrix a2 = block2(pauli_z(), -i2, -i2, -pauli_z());
  CHECK(cert.dilation.n() == 4);
  CHECK((cert.dilation[0] - a1).norm() < 1e-14);
  CHECK((cert.dilation[1] - a2).norm() < 1e-14);

  ComplexMatrix e1 = ComplexMatrix::Zero(4, 1);
  e1(0, 0) = 1.0;
  CHECK((cert.isometry.V - e1).norm() == 0.0);

  CHECK(cert.certified_scales.size() == 2);
  CHECK(cert.certified_scale == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(verify_certificate(cert).ok);
}

TEST_CASE("anticommuting dilation blocks are rebuilt from the peel formulas") {
  // For d = 2 the output is reproduced verbatim by one peel: symmetrize both
  // members, record the peeled one against -r, and cancel the cross terms.
  Rng rng(71);
  std::vector<ComplexMatrix> mats = {rng.hermitian_contraction(2),
                                     rng.hermitian_contraction(2)};
  MatrixTuple x(mats, std::vector<bool>{true, true});
  const double s = std::sqrt(2.0);
  DilationCertificate cert =
      anticommuting_dilation(x, ScaleVector({s, s}));

  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> y(2);
  for (int j = 0; j < 2; ++j) {
    ComplexMatrix root = psd_sqrt(i2 - mats[j] * mats[j]);
    y[j] = block2(mats[j], root, root, -mats[j]);
  }
  const double r = std::sqrt(s * s - 1.0);
  ComplexMatrix i4 = ComplexMatrix::Identity(4, 4);
  ComplexMatrix e = block2(y[1], -r * i4, -r * i4, -y[1]);
  ComplexMatrix cross = (y[0] * y[1] + y[1] * y[0]) / (2.0 * r);
  ComplexMatrix g = block2(y[0], cross, cross, -y[0]);

  CHECK((cert.dilation[0] - g).norm() < 1e-12);
  CHECK((cert.dilation[1] - e).norm() < 1e-12);
}

TEST_CASE("anticommuting dilation properties on a random triple") {
  Rng rng(2025);
  std::vector<ComplexMatrix> mats;
  for (int j = 0; j < 3; ++j) mats.push_back(rng.hermitian_contraction(2));
  MatrixTuple x(std::move(mats), std::vector<bool>(3, true));
  const double s = std::sqrt(3.0);
  DilationCertificate cert = anticommuting_dilation(x, ScaleVector({s, s, s}));

  CHECK(cert.dilation.n() == 2 * 16);  // n 4^(d-1)
  for (int j = 0; j < 3; ++j) {
    CHECK(herm_defect(cert.dilation[j]) < 1e-10);
    CHECK(op_norm(cert.dilation[j]) <= s + 1e-8);
    CHECK((compress(cert.isometry, cert.dilation[j]) - x[j]).norm() < 1e-8);
    for (int k = j + 1; k < 3; ++k)
      CHECK((cert.dilation[j] * cert.dilation[k] +
             cert.dilation[k] * cert.dilation[j])
                .norm() < 1e-8);
  }
  CHECK(verify_certificate(cert).ok);
}

TEST_CASE("anticommuting dilation norm is tight for the all-ones scalars") {
  for (int d : {2, 3}) {
    const double s = std::sqrt(static_cast<double>(d));
    DilationCertificate cert = anticommuting_dilation(
        scalar_tuple(std::vector<double>(d, 1.0)),
        ScaleVector(std::vector<double>(d, s)));
    double top = 0.0;
    for (int j = 0; j < d; ++j) top = std::max(top, op_norm(cert.dilation[j]));
    CHECK(top == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("anticommuting dilation rejects bad premises") {
  // Scales below the feasibility line sum 1/a_j^2 <= 1.
  CHECK_THROWS_AS(anticommuting_dilation(scalar_tuple({0.5, 0.5}),
                                         ScaleVector({1.2, 1.2})),
                  std::invalid_argument);
  // A member above norm one.
  std::vector<ComplexMatrix> big = {2.0 * pauli_z(), pauli_x()};
  CHECK_THROWS_AS(
      anticommuting_dilation(MatrixTuple(std::move(big), std::vector<bool>{true, true}),
                             ScaleVector({std::sqrt(2.0), std::sqrt(2.0)})),
      std::invalid_argument);
  // Last scale so close to 1 that the peel radius collapses.
  CHECK_THROWS_AS(anticommuting_dilation(scalar_tuple({0.5, 0.5}),
                                         ScaleVector({1e7, 1.0 + 4e-13})),
                  std::invalid_argument);
  // Output size guard: n * 4^(d-1) * 2^d above 2^20.
  const int d = 12;
  CHECK_THROWS_AS(
      anticommuting_dilation(scalar_tuple(std::vector<double>(d, 0.0)),
                             ScaleVector(std::vector<double>(
                                 d, std::sqrt(static_cast<double>(d))))),
      std::invalid_argument);
}

TEST_CASE("witnesses ride through the anticommuting dilation") {
  // Rotated Pauli pair with the rotated Y as the anticommuting witness.
  Rng rng(7);
  ComplexMatrix u = rng.unitary(2);
  std::vector<ComplexMatrix> mats = {
      0.6 * (u.adjoint() * pauli_z() * u).eval(),
      0.6 * (u.adjoint() * pauli_x() * u).eval()};
  ComplexMatrix w = u.adjoint() * pauli_y() * u;
  MatrixTuple x(std::move(mats), std::vector<bool>{true, true});
  DilationCertificate cert = anticommuting_dilation(
      x, ScaleVector({std::sqrt(2.0), std::sqrt(2.0)}), {w});

  REQUIRE(cert.intermediates.count("witness") == 1);
  REQUIRE(cert.intermediates.count("witness_input") == 1);
  const ComplexMatrix& lifted = cert.intermediates.at("witness")[0];
  CHECK(herm_defect(lifted) < 1e-10);
  for (int j = 0; j < 2; ++j)
    CHECK((lifted * cert.dilation[j] + cert.dilation[j] * lifted).norm() < 1e-8);
  CHECK((compress(cert.isometry, lifted) - w).norm() < 1e-8);
  CHECK(cert.find_claim("witness_anticommute") != nullptr);
  CHECK(cert.find_claim("witness_compression") != nullptr);
  CHECK(cert.find_claim("witness_unitary") != nullptr);
  CHECK(verify_certificate(cert).ok);

  // A witness that fails to anticommute with the input is refused.
  CHECK_THROWS_AS(
      anticommuting_dilation(x, ScaleVector({std::sqrt(2.0), std::sqrt(2.0)}),
                             {pauli_z()}),
      std::invalid_argument);
}

TEST_CASE("symmetry normalize on the Pauli pair at scales (1, 1)") {
  // Norms already sit at the scales, so the defect roots vanish and each
  // output is exactly the parity-sign diagonal tensored with the input.
  std::vector<ComplexMatrix> mats = {pauli_z(), pauli_x()};
  MatrixTuple a(std::move(mats), std::vector<bool>{true, true});
  DilationCertificate cert = symmetry_normalize(a, ScaleVector({1.0, 1.0}));

  CHECK(cert.dilation.n() == 8);
  ComplexMatrix zd = parity_diag(2);
  CHECK((cert.dilation[0] - kron(zd, pauli_z())).norm() == 0.0);
  CHECK((cert.dilation[1] - kron(zd, pauli_x())).norm() == 0.0);
  CHECK(verify_certificate(cert).ok);
}

TEST_CASE("symmetry normalize squares members to their scales") {
  std::vector<ComplexMatrix> mats = {pauli_z(), pauli_x()};
  MatrixTuple a(std::move(mats), std::vector<bool>{true, true});
  const double s = std::sqrt(2.0);
  DilationCertificate cert = symmetry_normalize(a, ScaleVector({s, s}), {pauli_y()});

  const int big = cert.dilation.n();
  CHECK(big == 8);
  ComplexMatrix id = ComplexMatrix::Identity(big, big);
  for (int j = 0; j < 2; ++j) {
    CHECK((cert.dilation[j] * cert.dilation[j] - s * s * id).norm() < 1e-10);
    CHECK((compress(cert.isometry, cert.dilation[j]) - a[j]).norm() < 1e-10);
  }
  CHECK((cert.dilation[0] * cert.dilation[1] +
         cert.dilation[1] * cert.dilation[0])
            .norm() < 1e-9);

  const ComplexMatrix& lifted = cert.intermediates.at("witness")[0];
  CHECK((lifted - kron(parity_diag(2), pauli_y())).norm() == 0.0);
  CHECK(cert.find_claim("witness_unitary") != nullptr);
  CHECK(verify_certificate(cert).ok);
}

TEST_CASE("symmetry normalize on a scaled clifford triple") {
  CliffordTuple c = clifford_generators(3);
  std::vector<ComplexMatrix> mats;
  for (int j = 0; j < 3; ++j) mats.push_back(0.9 * c.f[j]);
  MatrixTuple a(std::move(mats), std::vector<bool>(3, true));
  DilationCertificate cert =
      symmetry_normalize(a, ScaleVector({1.0, 1.0, 1.0}));

  CHECK(cert.dilation.n() == 4 * 8);
  ComplexMatrix id = ComplexMatrix::Identity(cert.dilation.n(), cert.dilation.n());
  for (int j = 0; j < 3; ++j)
    CHECK((cert.dilation[j] * cert.dilation[j] - id).norm() < 1e-10);
  CHECK(verify_certificate(cert).ok);
}

TEST_CASE("symmetry normalize rejects bad premises") {
  std::vector<ComplexMatrix> same = {pauli_z(), pauli_z()};
  CHECK_THROWS_AS(symmetry_normalize(MatrixTuple(std::move(same), std::vector<bool>{true, true}),
                                     ScaleVector({1.0, 1.0})),
                  std::invalid_argument);
  std::vector<ComplexMatrix> big = {2.0 * pauli_z(), pauli_x()};
  CHECK_THROWS_AS(symmetry_normalize(MatrixTuple(std::move(big), std::vector<bool>{true, true}),
                                     ScaleVector({1.0, 1.0})),
                  std::invalid_argument);
  // Dimension guard: n 2^d above 2^22.
  const int d = 23;
  CHECK_THROWS_AS(
      symmetry_normalize(scalar_tuple(std::vector<double>(d, 0.0)),
                         ScaleVector(std::vector<double>(d, 1.0))),
      std::invalid_argument);
}

TEST_CASE("cube ball certificate end to end") {
  Rng rng(33);
  ComplexMatrix u = rng.unitary(2);
  std::vector<ComplexMatrix> mats = {
      0.3 * pauli_z(), 0.4 * (u.adjoint() * pauli_x() * u).eval()};
  MatrixTuple x(std::move(mats), std::vector<bool>{true, true});
  ScaleVector c({0.6, 0.7});
  DilationCertificate cert = cube_ball_certificate(x, c);

  CHECK(cert.construction == "cube_ball");
  CHECK(cert.certified_scale == 1.0);
  ComplexMatrix id = ComplexMatrix::Identity(cert.dilation.n(), cert.dilation.n());
  for (int j = 0; j < 2; ++j) {
    // The L_j are anticommuting hermitian unitaries in their own right.
    CHECK((cert.dilation[j] * cert.dilation[j] - id).norm() < 1e-9);
    CHECK((compress(cert.isometry, cert.dilation[j]) - x[j]).norm() < 1e-8);
  }
  CHECK((cert.dilation[0] * cert.dilation[1] +
         cert.dilation[1] * cert.dilation[0])
            .norm() < 1e-9);
  REQUIRE(cert.bodies.size() == 1);
  CHECK(cert.bodies[0].dim == 2);
  CHECK(support_function(cert.bodies[0], testsup::vec2(1.0, 0.0)) ==
        doctest::Approx(0.6).epsilon(1e-12));
  CHECK(support_function(cert.bodies[0], testsup::vec2(0.0, 1.0)) ==
        doctest::Approx(0.7).epsilon(1e-12));
  CHECK(cert.note.find("universal") != std::string::npos);
  CHECK(verify_certificate(cert).ok);

  CHECK_THROWS_AS(cube_ball_certificate(x, ScaleVector({0.8, 0.8})),
                  std::invalid_argument);
  std::vector<ComplexMatrix> loud = {pauli_z(), 0.4 * pauli_x()};
  CHECK_THROWS_AS(
      cube_ball_certificate(MatrixTuple(std::move(loud), std::vector<bool>{true, true}),
                            ScaleVector({0.5, 0.5})),
      std::invalid_argument);
}
