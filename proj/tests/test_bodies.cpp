#include <doctest.h>

#include <cmath>
#include <random>

#include "mct/bodies.hpp"
#include "test_support.hpp"
#include "theta_oracle.hpp"

using namespace mct;
using testsup::vec2;
using testsup::vec3;

TEST_CASE("support and gauge of the named bodies") {
  ConvexBody cube = make_cube(3, 1.0);
  RealVector c = vec3(1.0, -2.0, 0.5);
  CHECK(support_function(cube, c) == doctest::Approx(3.5));

  ConvexBody ball = make_ball(2, 2.0);
  CHECK(support_function(ball, vec2(3.0, 4.0)) == doctest::Approx(10.0));
  CHECK(gauge(ball, vec2(0.0, 1.0)) == doctest::Approx(0.5));

  ConvexBody simplex = make_standard_simplex(2);
  CHECK(gauge(simplex, vec2(0.25, 0.25)) == doctest::Approx(0.5));
  CHECK(std::isinf(gauge(simplex, vec2(-1.0, 0.0))));

  ConvexBody diamond = make_standard_diamond(2);
  CHECK(support_function(diamond, vec2(1.0, 3.0)) == doctest::Approx(3.0));
  CHECK(gauge(diamond, vec2(0.5, 0.25)) == doctest::Approx(0.75));
}

TEST_CASE("membership via LP for polytopes") {
  ConvexBody tri = make_v_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  CHECK(member(tri, vec2(0.2, 0.2), 1e-9));
  CHECK(!member(tri, vec2(0.8, 0.8), 1e-9));
  CHECK(member(tri, vec2(0.5, 0.5), 1e-6));  // on the hypotenuse
  CHECK(member_distance(tri, vec2(0.25, 0.25)) == doctest::Approx(0.0));
  CHECK(member_distance(tri, vec2(2.0, 0.0)) > 0.5);
}

TEST_CASE("make_v_polytope drops interior and duplicate points") {
  ConvexBody k = make_v_polytope(
      {vec2(0, 0), vec2(1, 0), vec2(0, 1), vec2(0.1, 0.1), vec2(1, 0)});
  CHECK(body_vertices(k).size() == 3);
}

TEST_CASE("body_facets of a triangle support the same set") {
  ConvexBody tri = make_v_polytope({vec2(0, 0), vec2(2, 0), vec2(0, 1)});
  auto facets = body_facets(tri);
  CHECK(facets.size() == 3);
  // Every vertex saturates its incident facets and satisfies the rest.
  for (const auto& v : body_vertices(tri))
    for (const auto& f : facets) CHECK(f.a.dot(v) <= f.b + 1e-9);
}

TEST_CASE("product body concatenates coordinates") {
  ConvexBody seg = make_interval_product({{-1.0, 1.0}});
  ConvexBody sq = product({seg, seg});
  CHECK(sq.dim == 2);
  CHECK(member(sq, vec2(0.9, -0.9), 1e-9));
  CHECK(!member(sq, vec2(1.2, 0.0), 1e-9));
}

TEST_CASE("affine_image maps vertices") {
  ConvexBody tri = make_v_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  AffineMap f;
  f.A = Eigen::MatrixXd::Identity(2, 2) * 2.0;
  f.b = vec2(1.0, 0.0);
  ConvexBody img = affine_image(f, tri);
  auto vs = body_vertices(img);
  CHECK(vs.size() == 3);
  bool saw = false;
  for (const auto& v : vs) saw = saw || (v - vec2(3.0, 0.0)).norm() < 1e-12;
  CHECK(saw);
}

TEST_CASE("hausdorff_via_support vanishes between equal bodies") {
  ConvexBody a = make_cube(2, 1.0);
  ConvexBody b = make_v_polytope(
      {vec2(1, 1), vec2(1, -1), vec2(-1, 1), vec2(-1, -1)});
  auto dirs = direction_set(2, 128, 3);
  CHECK(hausdorff_via_support(a, b, dirs) < 1e-12);
  // Support gap to 2K peaks at sqrt(2) on the diagonal; the sampled maximum
  // sits within the angular step of it.
  CHECK(hausdorff_via_support(a, scale_body(a, 2.0), dirs) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("origin symmetry detection") {
  CHECK(origin_symmetric(make_cube(3, 1.0)));
  CHECK(origin_symmetric(make_standard_diamond(2)));
  CHECK(!origin_symmetric(make_standard_simplex(2)));
}

TEST_CASE("scale classification boundaries") {
  // sum 1/a_i = 1: certified. sum 1/a_i^2 = 1 but harmonic sum > 1: gap.
  CHECK(ScaleVector({2.0, 2.0}).classify() == ScaleVector::Class::harmonic_feasible);
  CHECK(ScaleVector({3.0, 3.0}).classify() == ScaleVector::Class::harmonic_feasible);
  const double s2 = std::sqrt(2.0);
  CHECK(ScaleVector({s2, s2}).classify() == ScaleVector::Class::square_feasible_only);
  CHECK(ScaleVector({1.0, 5.0}).classify() == ScaleVector::Class::infeasible);
  CHECK_THROWS(ScaleVector({1.0, -2.0}));

  CHECK(sd_classify(ScaleVector({2.0, 2.0})) == SdVerdict::SD_certified);
  CHECK(sd_classify(ScaleVector({s2, s2})) == SdVerdict::unknown);
  CHECK(sd_classify(ScaleVector({1.0, 5.0})) == SdVerdict::not_SD_certified);
}

TEST_CASE("direction_set is deterministic and unit length") {
  auto d1 = direction_set(3, 64, 5);
  auto d2 = direction_set(3, 64, 5);
  REQUIRE(d1.size() == 64);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    CHECK((d1[i] - d2[i]).norm() == 0.0);
    CHECK(d1[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("theta of the unit cube [0,1]^d is d") {
  for (int d = 1; d <= 4; ++d) {
    std::vector<std::pair<double, double>> b(d, {0.0, 1.0});
    ThetaResult r = theta_simplex_pointed(make_interval_product(b));
    CHECK(r.theta == doctest::Approx(static_cast<double>(d)).epsilon(1e-9));
  }
}

TEST_CASE("theta of the standard simplex is 1, of a simplex product 2") {
  CHECK(theta_simplex_pointed(make_standard_simplex(3)).theta ==
        doctest::Approx(1.0).epsilon(1e-9));
  ConvexBody prod = product({make_standard_simplex(2), make_standard_simplex(2)});
  CHECK(theta_simplex_pointed(prod).theta == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("theta witness simplex sandwiches the body") {
  ConvexBody k = make_v_polytope({vec2(0, 0), vec2(1.5, 0), vec2(0, 0.8),
                                  vec2(1.0, 0.7)});
  ThetaResult r = theta_simplex_pointed(k);
  REQUIRE(r.s.size() == 2);
  // K inside the witness simplex: every vertex satisfies sum v_i / s_i <= 1.
  for (const auto& v : body_vertices(k))
    CHECK(v(0) / r.s[0] + v(1) / r.s[1] <= 1.0 + 1e-9);
  // Witness simplex inside theta * K.
  for (int i = 0; i < 2; ++i) {
    RealVector e = RealVector::Zero(2);
    e(i) = r.s[i];
    CHECK(gauge(k, e) <= r.theta + 1e-9);
  }
}

TEST_CASE("theta matches the independent 2-D grid oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    auto pts = theta_oracle::random_polygon(rng);
    std::vector<RealVector> vs;
    for (const auto& p : pts) vs.push_back(vec2(p[0], p[1]));
    const double got = theta_simplex_pointed(make_v_polytope(vs)).theta;
    const double want = theta_oracle::theta_grid(pts);
    CHECK(std::abs(got - want) < 5e-3);
  }
}

TEST_CASE("theta rejects bodies that are not simplex-pointed") {
  CHECK_THROWS(theta_simplex_pointed(make_cube(2, 1.0)));  // 0 interior
}
