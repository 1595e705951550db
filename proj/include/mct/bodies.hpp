#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mct/linalg.hpp"

namespace mct {

using RealMatrix = Eigen::MatrixXd;

// Halfspace a.x <= b.
struct Facet {
  RealVector a;
  double b = 0.0;
};

enum class BodyKind { v_polytope, h_polytope, named };

enum class NamedKind {
  ball,             // euclidean ball of given radius, centred at 0
  cube,             // [-h, h]^dim
  simplex_standard, // conv(0, e_1, ..., e_dim)
  diamond_standard, // l1 unit ball
  disk_product,     // product of 2-D disks, dim = 2 * radii.size()
  interval_product, // product of closed intervals [lo_i, hi_i]
};

// Compact convex body in R^dim. Exactly one representation is populated,
// chosen by `kind`. complex_coords marks bodies whose coordinates pair up as
// (re, im) slots of complex entries.
struct ConvexBody {
  int dim = 0;
  BodyKind kind = BodyKind::v_polytope;
  bool complex_coords = false;
  std::string label;

  std::vector<RealVector> vertices;             // v_polytope
  std::vector<Facet> facets;                    // h_polytope
  NamedKind named = NamedKind::ball;            // named and its parameters:
  double radius = 0.0;
  double half_width = 0.0;
  std::vector<double> radii;
  std::vector<std::pair<double, double>> bounds;
};

ConvexBody make_ball(int dim, double radius);
ConvexBody make_cube(int dim, double half_width);
ConvexBody make_standard_simplex(int dim);
ConvexBody make_standard_diamond(int dim);
ConvexBody make_disk_product(std::vector<double> radii);
ConvexBody make_interval_product(std::vector<std::pair<double, double>> bounds);
ConvexBody make_h_polytope(int dim, std::vector<Facet> facets);
// Vertex hull; duplicates and non-extreme points are dropped unless the
// caller promises the list is already a minimal vertex set.
ConvexBody make_v_polytope(std::vector<RealVector> points,
                           bool already_extreme = false);

double support_function(const ConvexBody& k, const RealVector& c);
// Minkowski gauge in the recession sense: min { t >= 0 : x in t K }, which is
// +infinity when no dilate of K reaches x.
double gauge(const ConvexBody& k, const RealVector& x);
// Distance test. Polytopes measure the l-infinity distance through an LP
// (within sqrt(dim) of the euclidean one); named bodies use exact formulas.
bool member(const ConvexBody& k, const RealVector& x, double tol);
double member_distance(const ConvexBody& k, const RealVector& x);

ConvexBody product(const std::vector<ConvexBody>& factors);

struct AffineMap {
  RealMatrix A;
  RealVector b;
};
ConvexBody affine_image(const AffineMap& f, const ConvexBody& k);

bool has_vertex_list(const ConvexBody& k);
std::vector<RealVector> body_vertices(const ConvexBody& k);
bool has_exact_facets(const ConvexBody& k);
// Exact H-representation: h_polytopes verbatim, named flat bodies by formula,
// v_polytopes by enumeration (any-dimension simplices, otherwise dim <= 3).
std::vector<Facet> body_facets(const ConvexBody& k);

// max |h_A - h_B| over the supplied directions; converges to the Hausdorff
// distance of convex bodies as the directions densify.
double hausdorff_via_support(const ConvexBody& a, const ConvexBody& b,
                             const std::vector<RealVector>& dirs);

// s K for s > 0, staying within the same representation where possible.
ConvexBody scale_body(const ConvexBody& k, double s);

// K = -K, checked exactly on vertex lists and named shapes, by support
// sampling for H-polytopes.
bool origin_symmetric(const ConvexBody& k, double tol = 1e-9);

/// Deterministic unit directions: uniform angles (dim 2), Fibonacci sphere
// (dim 3), seeded gaussian points otherwise.
std::vector<RealVector> direction_set(int dim, int count, std::uint64_t seed);

// Positive dilation scales with the two feasibility margins that matter for
// product-of-bodies dilations.
struct ScaleVector {
  std::vector<double> a;

  explicit ScaleVector(std::vector<double> scales);
  int d() const { return static_cast<int>(a.size()); }
  double harmonic_sum() const;  // sum 1/a_i
  double square_sum() const;    // sum 1/a_i^2
  enum class Class { harmonic_feasible, square_feasible_only, infeasible };
  Class classify() const;
};

enum class SdVerdict { SD_certified, unknown, not_SD_certified };
/// Three-valued by design: scales between the harmonic and square boundaries
// are genuinely undecided.
SdVerdict sd_classify(const ScaleVector& s);

struct ThetaResult {
  double theta = 0.0;
  std::vector<double> s;  // witness simplex conv(0, s_i e_i)
  ConvexBody simplex;
};
// Smallest C >= 1 admitting a coordinate simplex Pi with K inside Pi inside
// C K, for K in the nonnegative orthant pointed at 0 with standard-basis
// vector data. Bisection over C; feasibility of a given C is a box check on
// u_i = gauge(K, e_i) / C against the vertices of K.
ThetaResult theta_simplex_pointed(const ConvexBody& k,
                                  const ToleranceConfig& tol = {});

}  // namespace mct
