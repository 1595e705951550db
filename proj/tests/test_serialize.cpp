#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "mct/dilation.hpp"
#include "mct/serialize.hpp"
#include "test_support.hpp"

using namespace mct;
using testsup::pauli_z;
using testsup::vec2;

TEST_CASE("matrices round-trip bit-identically") {
  Rng rng(5);
  ComplexMatrix m = rng.ginibre(3);
  m.conservativeResize(3, 4);
  m.col(3) = rng.ginibre(3).col(0);
  Json j = matrix_to_json(m);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("cols") == 4);
  CHECK(j.at("entries").size() == 12);
  ComplexMatrix back = matrix_from_json(j);
  CHECK((back - m).norm() == 0.0);

  Json bad = j;
  bad["entries"] = Json::array({1.0, 2.0});
  CHECK_THROWS_AS(matrix_from_json(bad), std::invalid_argument);
}

TEST_CASE("tuples round-trip with their hermitian flags") {
  Rng rng(6);
  std::vector<ComplexMatrix> mats = {rng.hermitian(3), rng.ginibre(3)};
  MatrixTuple t(std::move(mats), std::vector<bool>{true, false});
  Json j = tuple_to_json(t);
  CHECK(j.at("d") == 2);
  CHECK(j.at("n") == 3);
  CHECK(j.at("hermitian") == Json::array({true, false}));
  CHECK(j.at("matrices").size() == 2);
  CHECK(j.at("matrices")[0].size() == 9);  // row-major [re, im] pairs

  MatrixTuple back = tuple_from_json(j);
  CHECK(back.hermitian == t.hermitian);
  for (int k = 0; k < 2; ++k) CHECK((back[k] - t[k]).norm() == 0.0);
  CHECK(tuple_to_json(back) == j);
}

TEST_CASE("every body kind survives the round trip") {
  std::vector<ConvexBody> zoo;
  ConvexBody tri =
      make_v_polytope({vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(1.0 / 3.0, 2.0)}, 2);
  tri.label = "lopsided triangle";
  zoo.push_back(tri);
  zoo.push_back(make_h_polytope(
      2, {{vec2(1.0, 0.0), 1.0}, {vec2(-1.0, 0.0), 0.0}, {vec2(0.0, 1.0), 1.0},
          {vec2(0.0, -1.0), 0.0}}));
  zoo.push_back(make_ball(3, std::sqrt(2.0)));
  zoo.push_back(make_cube(2, 0.75));
  zoo.push_back(make_standard_simplex(3));
  zoo.push_back(make_standard_diamond(2));
  zoo.push_back(make_disk_product({1.0, 0.5}));
  zoo.push_back(make_interval_product({{0.0, 1.0}, {-2.0, 3.0}}));

  for (const ConvexBody& k : zoo) {
    Json j = body_to_json(k);
    ConvexBody back = body_from_json(j);
    CHECK(back.kind == k.kind);
    CHECK(back.dim == k.dim);
    CHECK(back.label == k.label);
    CHECK(body_to_json(back) == j);  // bit-identical re-serialization
    for (const auto& u : direction_set(k.dim, 24, 3))
      CHECK(support_function(back, u) == support_function(k, u));
  }

  // The complex flag travels too.
  ConvexBody cx = make_disk_product({1.0});
  cx.complex_coords = true;
  CHECK(body_from_json(body_to_json(cx)).complex_coords);
}

TEST_CASE("certificates round-trip including intermediates and reported") {
  Rng rng(11);
  std::vector<ComplexMatrix> mats = {rng.contraction(2), rng.contraction(2)};
  MatrixTuple t(std::move(mats), std::vector<bool>{false, false});
  DilationCertificate cert = contraction_normal_dilation(t);
  REQUIRE(!cert.intermediates.empty());
  REQUIRE(!cert.reported.empty());

  Json j = certificate_to_json(cert);
  DilationCertificate back = certificate_from_json(j);
  CHECK(back.construction == cert.construction);
  CHECK(back.certified_scale == cert.certified_scale);
  CHECK(back.certified_scales == cert.certified_scales);
  CHECK(back.claims.size() == cert.claims.size());
  CHECK(certificate_to_json(back) == j);
  CHECK(verify_certificate(back).ok);
}

TEST_CASE("infinite residuals serialize as null") {
  DilationCertificate cert = halmos(pauli_z() * 0.5);
  cert.claims[0].residual = std::numeric_limits<double>::infinity();
  Json j = certificate_to_json(cert);
  CHECK(j.at("claims")[0].at("residual").is_null());
  DilationCertificate back = certificate_from_json(j);
  CHECK(std::isinf(back.claims[0].residual));
}

TEST_CASE("empty optional fields are omitted") {
  DilationCertificate cert = halmos(pauli_z() * 0.5);
  Json j = certificate_to_json(cert);
  CHECK(!j.contains("bodies"));
  CHECK(!j.contains("group_sizes"));
  CHECK(!j.contains("intermediates"));
  CHECK(!j.contains("reported"));
  // Claims without parameters carry no params key.
  for (const Json& cj : j.at("claims"))
    if (cj.at("name") == "isometry") CHECK(!cj.contains("params"));
}

TEST_CASE("file loading reports failures as invalid_argument") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"),
                  std::invalid_argument);

  const std::string path = "/tmp/mct_serialize_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_WITH_AS(load_json_file(path),
                       doctest::Contains("malformed JSON"),
                       std::invalid_argument);

  const std::string good = "/tmp/mct_serialize_good.json";
  save_json_file(good, Json{{"x", 1.5}});
  CHECK(load_json_file(good).at("x") == 1.5);
  std::remove(path.c_str());
  std::remove(good.c_str());
}
