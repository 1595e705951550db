#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

const fs::path kDir = fs::path("/tmp") / "mct_cli_tests";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

RunResult run(const std::string& args) {
  fs::create_directories(kDir);
  const fs::path out = kDir / "stdout.txt";
  const fs::path err = kDir / "stderr.txt";
  const std::string cmd = std::string(MCT_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path body_cube01(int dim) {
  json bounds = json::array();
  for (int i = 0; i < dim; ++i) bounds.push_back({0.0, 1.0});
  const json j = {{"dim", dim},
                  {"kind", "named"},
                  {"name", {{"shape", "interval_product"}, {"bounds", bounds}}}};
  const fs::path p = kDir / ("cube01_" + std::to_string(dim) + ".json");
  fs::create_directories(kDir);
  put(p, j.dump());
  return p;
}

fs::path body_triangle() {
  const json j = {{"dim", 2},
                  {"kind", "v_polytope"},
                  {"vertices", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}}};
  const fs::path p = kDir / "triangle.json";
  fs::create_directories(kDir);
  put(p, j.dump());
  return p;
}

fs::path body_ball(double radius) {
  const json j = {{"dim", 2},
                  {"kind", "named"},
                  {"name", {{"shape", "ball"}, {"radius", radius}}}};
  const fs::path p = kDir / "ball.json";
  fs::create_directories(kDir);
  put(p, j.dump());
  return p;
}

}  // namespace

TEST_CASE("cli: theta prints integer values in fixed form") {
  RunResult r = run("theta --body " + body_cube01(3).string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "3.0\n");

  const json simplex = {{"dim", 2},
                        {"kind", "named"},
                        {"name", {{"shape", "simplex_standard"}}}};
  const fs::path p = kDir / "simplex.json";
  put(p, simplex.dump());
  RunResult s = run("theta --body " + p.string());
  CHECK(s.exit_code == 0);
  CHECK(s.out == "1.0\n");
}

TEST_CASE("cli: generate, check membership, dilate, verify") {
  const fs::path tup = kDir / "clifford2.json";
  RunResult g = run("gen clifford --d 2 --out " + tup.string());
  REQUIRE(g.exit_code == 0);
  json tj = json::parse(slurp(tup));
  CHECK(tj.at("d") == 2);
  CHECK(tj.at("n") == 2);

  RunResult w = run("check wmax --in " + tup.string() + " --body " +
                    body_ball(1.0).string());
  CHECK(w.exit_code == 0);
  CHECK(json::parse(w.out).at("verdict") == "member_sampled");

  RunResult bad = run("check wmax --in " + tup.string() + " --body " +
                      body_ball(0.9).string());
  CHECK(bad.exit_code == 1);
  CHECK(json::parse(bad.out).at("verdict") == "non_member");

  const fs::path cert = kDir / "contraction_cert.json";
  RunResult d = run("dilate contractions --in " + tup.string() + " --out " +
                    cert.string());
  REQUIRE(d.exit_code == 0);

  RunResult v = run("verify --cert " + cert.string());
  CHECK(v.exit_code == 0);
  CHECK(json::parse(v.out).at("ok") == true);

  // --in is an accepted alias for --cert.
  RunResult v2 = run("verify --in " + cert.string() + " --tol 1e-8");
  CHECK(v2.exit_code == 0);
}

TEST_CASE("cli: anticommuting dilation with explicit scales") {
  const fs::path tup = kDir / "clifford2b.json";
  REQUIRE(run("gen clifford --d 2 --out " + tup.string()).exit_code == 0);

  const fs::path cert = kDir / "ac_cert.json";
  RunResult d = run("dilate anticommuting --in " + tup.string() +
                    " --scales 1.4142135623730951,1.4142135623730951 --out " +
                    cert.string());
  REQUIRE(d.exit_code == 0);
  json cj = json::parse(slurp(cert));
  CHECK(cj.at("construction") == "anticommuting_dilation");

  CHECK(run("verify --cert " + cert.string()).exit_code == 0);

  // Missing --scales is a usage error.
  CHECK(run("dilate anticommuting --in " + tup.string()).exit_code == 3);
}

TEST_CASE("cli: sd dilation on singleton sub-POVM members") {
  const json t = {{"d", 2},
                  {"n", 2},
                  {"hermitian", {true, true}},
                  {"matrices",
                   {{{0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.3, 0.0}},
                    {{0.2, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.6, 0.0}}}}};
  const fs::path tup = kDir / "povm.json";
  fs::create_directories(kDir);
  put(tup, t.dump());

  const fs::path cert = kDir / "sd_cert.json";
  RunResult d = run("dilate sd --in " + tup.string() + " --scales 2,2 --out " +
                    cert.string());
  REQUIRE(d.exit_code == 0);
  CHECK(run("verify --cert " + cert.string()).exit_code == 0);
}

TEST_CASE("cli: gallery generators") {
  const fs::path tup = kDir / "surprise.json";
  RunResult g = run("gen example simplex-surprise --trunc 8 --p 1.0 --out " +
                    tup.string());
  REQUIRE(g.exit_code == 0);
  json tj = json::parse(slurp(tup));
  CHECK(tj.at("n") == 10);

  RunResult c = run("gen example ball-covering --body " +
                    body_triangle().string() + " --k 8");
  CHECK(c.exit_code == 0);
  CHECK(c.err.find("hausdorff distance to the body:") != std::string::npos);

  RunResult m = run("report minimality --in " + tup.string() + " --body " +
                    body_triangle().string());
  CHECK(m.exit_code == 2);  // inconclusive at truncation

  const fs::path stair = kDir / "stair.json";
  REQUIRE(run("gen example staircase --body " + body_triangle().string() +
              " --trunc 4 --out " + stair.string())
              .exit_code == 0);
  RunResult nm = run("report minimality --in " + stair.string() + " --body " +
                     body_triangle().string());
  CHECK(nm.exit_code == 1);  // droppable summand
}

TEST_CASE("cli: malformed input and usage errors exit 3 with a diagnostic") {
  const fs::path bad = kDir / "bad.json";
  fs::create_directories(kDir);
  put(bad, "{ this is not json");
  RunResult r = run("theta --body " + bad.string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("error:") != std::string::npos);

  CHECK(run("theta --no-such-flag x").exit_code == 3);
  CHECK(run("verify").exit_code == 3);
  CHECK(run("theta --body /nonexistent.json").exit_code == 3);
}

TEST_CASE("cli: help lists every subcommand") {
  RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  for (const char* sub :
       {"gen", "dilate", "check", "theta", "range", "verify", "report"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
}
