#pragma once

#include <vector>

#include "mct/bodies.hpp"
#include "mct/certificate.hpp"
#include "mct/linalg.hpp"

namespace mct {

// Rank-one Hermitian family Q_1, ..., Q_d on C^d with spectra {0, a_i},
// pairwise products zero, top-left entries 1 and sum Q_i / a_i = I. Exists
// exactly when sum 1/a_i = 1.
struct OrthogonalFamily {
  ScaleVector scales;
  std::vector<ComplexMatrix> q;
};

OrthogonalFamily q_family(const ScaleVector& a, const ToleranceConfig& tol = {});

// Proportional shrink a_i -> (sum 1/a_j) a_i, turning a harmonic-feasible
// vector into one with harmonic sum exactly 1.
ScaleVector shrink_to_harmonic_equality(const ScaleVector& a);

// 2n x 2n unitary dilation of a norm-<=bound matrix; Hermitian inputs get a
// Hermitian dilation squaring to bound^2 I.
DilationCertificate halmos(const ComplexMatrix& x, double bound = 1.0,
                           const ToleranceConfig& tol = {});

// Conjoins commuting-normal tuples M^[i] (all on one space, with joint
// spectrum in K_i) into a single commuting-normal tuple M^[i]_j tensor Q_i
// whose joint spectrum meets at most one scaled body a_i K_i at a time.
DilationCertificate positive_scaling_dilation(const std::vector<MatrixTuple>& groups,
                                              const std::vector<ConvexBody>& bodies,
                                              const ScaleVector& a,
                                              const ToleranceConfig& tol = {});

// Conjoint dilation of sub-POVM groups (PSD members, per-group sum <= I) to
// pairwise commuting scaled projections: spectra in {0, a_i}, within-group
// products zero, compression recovering every input member.
DilationCertificate sd_projection_dilation(
    const std::vector<std::vector<ComplexMatrix>>& groups, const ScaleVector& a,
    const ToleranceConfig& tol = {});

// Conjoint dilation of Hermitian commuting tuples with spectra in symmetric
// bodies K_i: output groups commute across the board and the joint spectrum
// lands in the product of the scaled bodies a_i K_i.
DilationCertificate symmetric_sd_dilation(const std::vector<MatrixTuple>& groups,
                                          const std::vector<ConvexBody>& bodies,
                                          const ScaleVector& a,
                                          const ToleranceConfig& tol = {});

// M_k = Z_k tensor Q_k: Hermitian, mutually annihilating, norm <= a_k,
// dilating the Z_k through the first tensor coordinate.
DilationCertificate orthogonal_family_dilation(const MatrixTuple& z,
                                               const ScaleVector& a,
                                               const ToleranceConfig& tol = {});

// Commuting normal dilation of an arbitrary tuple of d contractions at
// certified scale 2d (1 for d = 1): unitary dilations are averaged into a
// defect-free family, dilated member by member against an orthogonal family,
// and reassembled by the inverse discrete Fourier transform.
DilationCertificate contraction_normal_dilation(const MatrixTuple& t,
                                                const ToleranceConfig& tol = {});

// Recomputes every claim of a certificate from its raw matrices. ok means
// every recomputed residual meets that claim's bound.
VerifyReport verify_certificate(const DilationCertificate& cert,
                                const ToleranceConfig& tol = {});

}  // namespace mct
