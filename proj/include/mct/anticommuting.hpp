#pragma once

#include <vector>

#include "mct/certificate.hpp"
#include "mct/linalg.hpp"

namespace mct {

// Universal anticommuting family: d Hermitian unitaries on C^(2^(d-1))
// that pairwise anticommute. Entries are exact signed units, so relation
// residuals are exactly zero in floating point.
struct CliffordTuple {
  int d = 0;
  MatrixTuple f;
};

CliffordTuple clifford_generators(int d);

// Max deviations over the family: Hermiticity, F_j^2 = I, and pairwise
// anticommutation. Exploits the signed-permutation structure when present,
// so the d = 10 family (n = 512) checks in milliseconds.
struct CliffordResiduals {
  double hermitian = 0.0;
  double square = 0.0;
  double anticommute = 0.0;
  double worst() const;
};

CliffordResiduals clifford_relation_residuals(const MatrixTuple& f);

// Dilates Hermitian contractions X_1..X_d to anticommuting Hermitian
// A_1..A_d with ||A_j|| <= a_j on C^(n 4^(d-1)), given sum 1/a_j^2 <= 1.
// Each member of `witnesses` must be Hermitian and anticommute with every
// X_j; it is lifted to the output space anticommuting with every A_j.
// Refuses instances with n * 4^(d-1) * 2^d > 2^20.
DilationCertificate anticommuting_dilation(const MatrixTuple& x,
                                           const ScaleVector& a,
                                           const std::vector<ComplexMatrix>& witnesses = {},
                                           const ToleranceConfig& tol = {});

// One doubling per member turns an anticommuting tuple with ||A_j|| <= a_j
// into one with M_j^2 = a_j^2 I exactly, on C^(n 2^d), still dilating the
// same corner. Witnesses ride along through the same doublings.
DilationCertificate symmetry_normalize(const MatrixTuple& a,
                                       const ScaleVector& scales,
                                       const std::vector<ComplexMatrix>& witnesses = {},
                                       const ToleranceConfig& tol = {});

// Certifies that a tuple with ||X_j|| <= c_j and sum c_j^2 <= 1 lies in the
// matrix range of the universal anticommuting family: L_j are anticommuting
// Hermitian unitaries compressing to X_j.
DilationCertificate cube_ball_certificate(const MatrixTuple& x,
                                          const ScaleVector& c,
                                          const ToleranceConfig& tol = {});

}  // namespace mct
