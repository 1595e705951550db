#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "mct.h"

using nlohmann::json;

namespace {

json pauli_pair_json() {
  return json{
      {"d", 2},
      {"n", 2},
      {"hermitian", {true, true}},
      {"matrices",
       {{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}},
        {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}}}};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  mct_string_free(s);
  return out;
}

struct Tuple {
  mct_tuple* h = nullptr;
  ~Tuple() { mct_tuple_free(h); }
};
struct Body {
  mct_body* h = nullptr;
  ~Body() { mct_body_free(h); }
};
struct Cert {
  mct_cert* h = nullptr;
  ~Cert() { mct_cert_free(h); }
};

}  // namespace

TEST_CASE("tuple JSON crosses the C boundary both ways") {
  Tuple t;
  const std::string in = pauli_pair_json().dump();
  REQUIRE(mct_tuple_from_json(in.c_str(), &t.h) == MCT_OK);

  int d = 0, n = 0;
  REQUIRE(mct_tuple_dims(t.h, &d, &n) == MCT_OK);
  CHECK(d == 2);
  CHECK(n == 2);

  char* out = nullptr;
  REQUIRE(mct_tuple_to_json(t.h, &out) == MCT_OK);
  CHECK(json::parse(take(out)) == pauli_pair_json());
}

TEST_CASE("malformed input surfaces as MCT_EINVAL with a message") {
  mct_tuple* t = nullptr;
  CHECK(mct_tuple_from_json("{ not json", &t) == MCT_EINVAL);
  CHECK(std::strlen(mct_last_error()) > 0);
  CHECK(t == nullptr);

  CHECK(mct_tuple_from_json(nullptr, &t) == MCT_EINVAL);
  CHECK(mct_tuple_from_json("{}", nullptr) == MCT_EINVAL);

  // Structurally valid JSON that is not a tuple.
  CHECK(mct_tuple_from_json("{\"d\": 1}", &t) == MCT_EINVAL);

  mct_body* b = nullptr;
  CHECK(mct_body_from_json("{\"dim\": 2, \"kind\": \"nonsense\"}", &b) ==
        MCT_EINVAL);
}

TEST_CASE("generators produce the advertised shapes") {
  Tuple c;
  REQUIRE(mct_gen_clifford(3, &c.h) == MCT_OK);
  int d = 0, n = 0;
  mct_tuple_dims(c.h, &d, &n);
  CHECK(d == 3);
  CHECK(n == 4);
  mct_tuple* bad = nullptr;
  CHECK(mct_gen_clifford(0, &bad) == MCT_EINVAL);

  Tuple s;
  REQUIRE(mct_gen_simplex_surprise(1.5, 16, &s.h) == MCT_OK);
  mct_tuple_dims(s.h, &d, &n);
  CHECK(d == 2);
  CHECK(n == 18);

  Body tri;
  const std::string tri_json =
      json{{"dim", 2},
           {"kind", "v_polytope"},
           {"vertices", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}}}
          .dump();
  REQUIRE(mct_body_from_json(tri_json.c_str(), &tri.h) == MCT_OK);

  Tuple st;
  REQUIRE(mct_gen_staircase(tri.h, 4, &st.h) == MCT_OK);
  mct_tuple_dims(st.h, &d, &n);
  CHECK(d == 2);
  CHECK(n == 5);

  Tuple mn;
  REQUIRE(mct_gen_minimal_normal(tri.h, &mn.h) == MCT_OK);
  mct_tuple_dims(mn.h, &d, &n);
  CHECK(n == 3);

  Tuple bc;
  double hd = -1.0;
  REQUIRE(mct_gen_ball_covering(tri.h, 12, nullptr, &bc.h, &hd) == MCT_OK);
  CHECK(hd > 0.0);
  CHECK(hd < 0.1);
}

TEST_CASE("theta through the C interface") {
  Body cube;
  const std::string cube_json =
      json{{"dim", 3},
           {"kind", "named"},
           {"name", {{"shape", "interval_product"},
                     {"bounds", {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}}}}}
          .dump();
  REQUIRE(mct_body_from_json(cube_json.c_str(), &cube.h) == MCT_OK);

  double theta = 0.0;
  char* rep = nullptr;
  REQUIRE(mct_theta(cube.h, nullptr, &theta, &rep) == MCT_OK);
  CHECK(std::abs(theta - 3.0) < 1e-9);
  json j = json::parse(take(rep));
  CHECK(j.contains("theta"));
  CHECK(j.contains("s"));
  CHECK(j.contains("simplex"));
}

TEST_CASE("wmax membership verdicts through the C interface") {
  Tuple t;
  REQUIRE(mct_gen_clifford(2, &t.h) == MCT_OK);

  Body ball;
  const std::string ball_json =
      json{{"dim", 2},
           {"kind", "named"},
           {"name", {{"shape", "ball"}, {"radius", 1.0}}}}
          .dump();
  REQUIRE(mct_body_from_json(ball_json.c_str(), &ball.h) == MCT_OK);

  int verdict = -1;
  REQUIRE(mct_check_wmax(t.h, ball.h, nullptr, &verdict, nullptr) == MCT_OK);
  CHECK(verdict == 3);  // member at the sampled directions

  Body small;
  const std::string small_json =
      json{{"dim", 2},
           {"kind", "named"},
           {"name", {{"shape", "ball"}, {"radius", 0.9}}}}
          .dump();
  REQUIRE(mct_body_from_json(small_json.c_str(), &small.h) == MCT_OK);
  char* rep = nullptr;
  REQUIRE(mct_check_wmax(t.h, small.h, nullptr, &verdict, &rep) == MCT_OK);
  CHECK(verdict == 1);
  json j = json::parse(take(rep));
  CHECK(j.at("verdict") == "non_member");
  CHECK(j.contains("witness"));
}

TEST_CASE("dilation, verification, and the bound override") {
  Tuple t;
  REQUIRE(mct_tuple_from_json(pauli_pair_json().dump().c_str(), &t.h) == MCT_OK);

  const double scales[2] = {std::sqrt(2.0), std::sqrt(2.0)};
  Cert c;
  REQUIRE(mct_dilate_anticommuting(t.h, scales, 2, nullptr, &c.h) == MCT_OK);

  int ok = 0;
  char* rep = nullptr;
  REQUIRE(mct_verify(c.h, 0.0, nullptr, &ok, &rep) == MCT_OK);
  CHECK(ok == 1);
  json j = json::parse(take(rep));
  CHECK(j.at("ok") == true);
  CHECK(j.at("claims").size() > 0);

  // Certificates survive their own JSON round trip.
  char* cj = nullptr;
  REQUIRE(mct_cert_to_json(c.h, &cj) == MCT_OK);
  const std::string text = take(cj);
  Cert back;
  REQUIRE(mct_cert_from_json(text.c_str(), &back.h) == MCT_OK);
  REQUIRE(mct_verify(back.h, 0.0, nullptr, &ok, nullptr) == MCT_OK);
  CHECK(ok == 1);

  // A symmetric bend of one dilation block is caught on reverification,
  // and a generous bound override accepts the same bent certificate.
  json bent = json::parse(text);
  bent["dilation"]["matrices"][0][1][0] =
      double(bent["dilation"]["matrices"][0][1][0]) + 1e-3;
  const int nn = bent["dilation"]["n"];
  bent["dilation"]["matrices"][0][nn][0] =
      double(bent["dilation"]["matrices"][0][nn][0]) + 1e-3;
  Cert tampered;
  REQUIRE(mct_cert_from_json(bent.dump().c_str(), &tampered.h) == MCT_OK);
  REQUIRE(mct_verify(tampered.h, 0.0, nullptr, &ok, nullptr) == MCT_OK);
  CHECK(ok == 0);
  REQUIRE(mct_verify(tampered.h, 1.0, nullptr, &ok, nullptr) == MCT_OK);
  CHECK(ok == 1);
}

TEST_CASE("halmos requires a single member") {
  Tuple pair;
  REQUIRE(mct_tuple_from_json(pauli_pair_json().dump().c_str(), &pair.h) ==
          MCT_OK);
  Cert c;
  CHECK(mct_dilate_halmos(pair.h, 1.0, nullptr, &c.h) == MCT_EINVAL);

  const std::string one =
      json{{"d", 1},
           {"n", 1},
           {"hermitian", {false}},
           {"matrices", {{{0.25, 0.5}}}}}
          .dump();
  Tuple t;
  REQUIRE(mct_tuple_from_json(one.c_str(), &t.h) == MCT_OK);
  REQUIRE(mct_dilate_halmos(t.h, 0.0, nullptr, &c.h) == MCT_OK);
  int ok = 0;
  REQUIRE(mct_verify(c.h, 0.0, nullptr, &ok, nullptr) == MCT_OK);
  CHECK(ok == 1);
}

TEST_CASE("contraction pipeline and cube-ball through the C interface") {
  Tuple t;
  REQUIRE(mct_tuple_from_json(pauli_pair_json().dump().c_str(), &t.h) == MCT_OK);
  Cert c;
  REQUIRE(mct_dilate_contractions(t.h, nullptr, &c.h) == MCT_OK);
  int ok = 0;
  REQUIRE(mct_verify(c.h, 0.0, nullptr, &ok, nullptr) == MCT_OK);
  CHECK(ok == 1);

  // Scaled Pauli pair inside the unit ball.
  const std::string small =
      json{{"d", 2},
           {"n", 2},
           {"hermitian", {true, true}},
           {"matrices",
            {{{0.3, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-0.3, 0.0}},
             {{0.0, 0.0}, {0.4, 0.0}, {0.4, 0.0}, {0.0, 0.0}}}}}
          .dump();
  Tuple x;
  REQUIRE(mct_tuple_from_json(small.c_str(), &x.h) == MCT_OK);
  const double radii[2] = {0.6, 0.7};
  Cert cb;
  REQUIRE(mct_dilate_cube_ball(x.h, radii, 2, nullptr, &cb.h) == MCT_OK);
  REQUIRE(mct_verify(cb.h, 0.0, nullptr, &ok, nullptr) == MCT_OK);
  CHECK(ok == 1);
}

TEST_CASE("sd classification verdicts") {
  int v = -1;
  const double harmonic[2] = {2.0, 2.0};
  REQUIRE(mct_sd_classify(harmonic, 2, &v) == MCT_OK);
  CHECK(v == 0);

  const double infeasible[2] = {1.0, 5.0};
  REQUIRE(mct_sd_classify(infeasible, 2, &v) == MCT_OK);
  CHECK(v == 1);

  const double open[2] = {std::sqrt(2.0), std::sqrt(2.0)};
  REQUIRE(mct_sd_classify(open, 2, &v) == MCT_OK);
  CHECK(v == 2);

  CHECK(mct_sd_classify(nullptr, 2, &v) == MCT_EINVAL);
  const double neg[1] = {-1.0};
  CHECK(mct_sd_classify(neg, 1, &v) == MCT_EINVAL);
}

TEST_CASE("level-1 range and minimality through the C interface") {
  Tuple t;
  REQUIRE(mct_gen_clifford(2, &t.h) == MCT_OK);
  char* out = nullptr;
  mct_options opt = {};
  opt.directions = 96;
  REQUIRE(mct_level1_range(t.h, &opt, &out) == MCT_OK);
  json j = json::parse(take(out));
  CHECK(j.at("inner").at("kind") == "v_polytope");
  CHECK(j.at("outer").at("kind") == "h_polytope");

  Body tri;
  const std::string tri_json =
      json{{"dim", 2},
           {"kind", "v_polytope"},
           {"vertices", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}}}
          .dump();
  REQUIRE(mct_body_from_json(tri_json.c_str(), &tri.h) == MCT_OK);
  Tuple mn;
  REQUIRE(mct_gen_minimal_normal(tri.h, &mn.h) == MCT_OK);
  int verdict = -1;
  char* rep = nullptr;
  REQUIRE(mct_report_minimality(mn.h, tri.h, nullptr, &verdict, &rep) ==
          MCT_OK);
  CHECK(verdict == 0);
  json mj = json::parse(take(rep));
  CHECK(mj.at("verdict") == "minimal_diagonal");
}
