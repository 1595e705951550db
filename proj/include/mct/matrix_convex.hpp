#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mct/bodies.hpp"
#include "mct/certificate.hpp"
#include "mct/linalg.hpp"

namespace mct {

enum class Verdict { member, non_member, member_sampled, unknown };

std::string verdict_name(Verdict v);

// non_member always carries a violating direction: a unit vector c with
// lambda_max(sum c_j X_j) > h_K(c) by more than tol.
struct MembershipVerdict {
  Verdict verdict = Verdict::unknown;
  std::optional<RealVector> witness;
  double margin = 0.0;
  std::string note;
};

// Linear-inequality membership test. With exact facets available the verdict
// is exact; otherwise `directions` support inequalities are sampled, which
// can prove non-membership but only report member_sampled on success.
// Complex-coordinate bodies expect the tuple through its Hermitian split,
// giving 2d real coordinates interleaved (Re_1, Im_1, Re_2, ...).
MembershipVerdict wmax_membership(const MatrixTuple& x, const ConvexBody& k,
                                  int directions,
                                  const ToleranceConfig& tol = {});

// Sandwich of the level-1 range (joint expectation set): `outer` collects the
// supporting halfspaces found in the sampled directions, `inner` the convex
// hull of the corresponding maximizing-eigenvector expectation points.
struct Level1Range {
  ConvexBody inner;
  ConvexBody outer;
  bool complex = false;  // true: coordinates are interleaved Re/Im pairs
};

Level1Range level1_range(const MatrixTuple& t, int directions,
                         const ToleranceConfig& tol = {});

struct JointSpectrum {
  std::vector<ComplexVector> points;  // one joint eigenvalue vector per basis column
  ComplexMatrix basis;                // unitary; basis.col(j) pairs with points[j]
  double diag_residual = 0.0;         // worst off-diagonal leak after conjugation
};

// Simultaneous diagonalization of a commuting normal tuple. Throws
// std::domain_error when the commutation or normality residual exceeds the
// tolerance budget.
JointSpectrum joint_spectrum(const MatrixTuple& n, const ToleranceConfig& tol = {});

// Hull of the joint spectrum: the full matrix range of a commuting normal
// tuple is determined by this level-1 body.
ConvexBody matrix_range_of_normal(const MatrixTuple& n, const ToleranceConfig& tol = {});

struct NaimarkResult {
  Isometry v;
  std::vector<ComplexMatrix> projections;  // pairwise orthogonal, summing to I
};

// Dilates a sub-POVM (PSD matrices with sum <= I) to a projection-valued
// family on C^{n(k+1)}; the final projection is the appended complement.
NaimarkResult naimark(const std::vector<ComplexMatrix>& p,
                      const ToleranceConfig& tol = {});

// For a nondegenerate simplex K containing the level-1 range of a Hermitian
// tuple X, builds a commuting normal dilation whose joint spectrum sits in
// K's vertex set. This realizes the simplex case where the linear-inequality
// test already guarantees a normal dilation.
DilationCertificate wmin_certificate_simplex(const MatrixTuple& x,
                                             const ConvexBody& k,
                                             const ToleranceConfig& tol = {});

// Applies an affine map to a Hermitian tuple: Y_i = sum_j A_ij X_j + b_i I.
MatrixTuple tuple_affine_image(const AffineMap& f, const MatrixTuple& x);

// Hermitian coordinate split: Hermitian members pass through; a non-Hermitian
// member T contributes the pair (T+T*)/2, (T-T*)/(2i).
std::vector<ComplexMatrix> hermitian_coordinates(const MatrixTuple& t,
                                                 bool* any_complex = nullptr);

}  // namespace mct
