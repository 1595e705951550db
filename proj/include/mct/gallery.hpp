#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mct/bodies.hpp"
#include "mct/linalg.hpp"

namespace mct {

// Orthonormal basis of the joint eigenspace cap_i ker(T_i - lambda_i I),
// read off the smallest singular subspace of the stacked differences.
// Empty when no joint eigenvector exists at lambda.
std::vector<ComplexVector> joint_eigenvector_hunt(const MatrixTuple& t,
                                                  const ComplexVector& lambda,
                                                  const ToleranceConfig& tol = {});

// Splits a tuple into irreducible reducing summands: a commutant basis of
// {T_i, T_i*} is solved for, a random Hermitian commutant element is
// eigen-split, and the blocks recurse. Deterministic given tol.seed.
std::vector<std::pair<Isometry, MatrixTuple>> reducing_decomposition(
    const MatrixTuple& t, const ToleranceConfig& tol = {});

struct MinimalityReport {
  enum class Verdict { minimal_diagonal, not_minimal, inconclusive };

  bool w1_in_k = false;
  double w1_margin = 0.0;  // min facet slack of the level-1 range inside K
  // One entry per body vertex, in body_vertices order.
  std::vector<std::vector<ComplexVector>> vertex_eigenvectors;
  std::vector<int> normal_summand_dims;
  Verdict verdict = Verdict::inconclusive;
  std::string notes;
};

std::string verdict_name(MinimalityReport::Verdict v);

// Diagnoses whether a Hermitian tuple with level-1 range inside the polytope
// K is the minimal tuple realizing it: minimal_diagonal when the vertex
// eigenvectors alone span everything, not_minimal when a proper reducing
// summand already has the same level-1 range, inconclusive otherwise.
MinimalityReport minimality_report(const MatrixTuple& t, const ConvexBody& k,
                                   const ToleranceConfig& tol = {});

// The diagonal tuple with exactly one joint eigenvalue per vertex of K.
MatrixTuple minimal_normal_tuple(const ConvexBody& k);

// Truncation of the commuting pair whose range fills the triangle while no
// joint eigenvector exists at the vertex 0: T_1 = 1 (+) 0 (+) S_1,
// T_2 = 0 (+) 1 (+) S_2 with S-weights 1/(3 n^p) against two bases that
// share no eigenvector. Size m + 2.
MatrixTuple simplex_surprise_tuple(double p, int m);

// Diagonal tuple whose eigenvalues are the nonzero vertices of K plus the
// harmonically shrinking tail v/2, ..., v/m of the last one, marching toward
// the vertex 0. The 0 vertex itself is a limit and never an eigenvalue.
MatrixTuple staircase_normal_tuple(const ConvexBody& k, int m);

// Direct sum of disk summands x + c F over the universal anticommuting pair,
// with disk centers marching from the centroid toward each polygon vertex
// and radii decaying geometrically while staying inside K.
MatrixTuple ball_covering_tuple(const ConvexBody& k, int k_max,
                                const ToleranceConfig& tol = {});

// Support-sampled Hausdorff distance between the hull of the covering disks
// and K itself; decays as k_max grows.
double ball_covering_hausdorff(const ConvexBody& k, int k_max,
                               const ToleranceConfig& tol = {});

}  // namespace mct
