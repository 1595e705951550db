#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mct.h"

namespace {

// Exit codes: 0 success / member, 1 checked-false / non-member,
// 2 unknown / inconclusive, 3 input or premise error.
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_from_api() {
  throw Failure{kExitError, mct_last_error()};
}

void check(int rc) {
  if (rc != MCT_OK) fail_from_api();
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitError, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure{kExitError, "cannot write " + out_path};
  out << payload << "\n";
}

std::vector<double> parse_scales(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kExitError, "bad scale entry: " + item};
    }
  }
  if (out.empty()) throw Failure{kExitError, "--scales requires at least one value"};
  return out;
}

struct StringOut {
  char* s = nullptr;
  ~StringOut() { mct_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

using TuplePtr = std::unique_ptr<mct_tuple, decltype(&mct_tuple_free)>;
using BodyPtr = std::unique_ptr<mct_body, decltype(&mct_body_free)>;
using CertPtr = std::unique_ptr<mct_cert, decltype(&mct_cert_free)>;

TuplePtr load_tuple(const std::string& path) {
  const std::string text = slurp(path);
  mct_tuple* t = nullptr;
  check(mct_tuple_from_json(text.c_str(), &t));
  return TuplePtr(t, &mct_tuple_free);
}

BodyPtr load_body(const std::string& path) {
  const std::string text = slurp(path);
  mct_body* k = nullptr;
  check(mct_body_from_json(text.c_str(), &k));
  return BodyPtr(k, &mct_body_free);
}

CertPtr load_cert(const std::string& path) {
  const std::string text = slurp(path);
  mct_cert* c = nullptr;
  check(mct_cert_from_json(text.c_str(), &c));
  return CertPtr(c, &mct_cert_free);
}

void emit_tuple(mct_tuple* t, const std::string& out_path) {
  StringOut s;
  check(mct_tuple_to_json(t, &s.s));
  emit(s.str(), out_path);
}

void emit_cert(mct_cert* c, const std::string& out_path) {
  StringOut s;
  check(mct_cert_to_json(c, &s.s));
  emit(s.str(), out_path);
}

// Shared flag storage; CLI11 subcommands bind into this.
struct Flags {
  std::string in, out, body, cert, scales;
  double tol = 0.0;
  double p = 1.0;
  std::uint64_t seed = 0;
  int directions = 0;
  int trunc = 8;
  int d = 2;
  int k = 10;
  double bound = 0.0;
};

mct_options options_from(const Flags& f) {
  mct_options opt{};
  opt.tol = f.tol;
  opt.eig_tol = 0.0;
  opt.seed = f.seed;
  opt.directions = f.directions;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "matrix convexity toolkit: explicit dilation constructions, matrix "
      "ranges, simplex scale constants, and machine-checkable certificates"};
  app.require_subcommand(1);

  Flags f;
  std::function<int()> action;

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate tuples");
  gen->require_subcommand(1);

  auto* gen_clifford =
      gen->add_subcommand("clifford", "universal anticommuting family");
  gen_clifford->add_option("--d", f.d, "number of generators")->required();
  gen_clifford->add_option("--out", f.out, "output path (default stdout)");
  gen_clifford->callback([&] {
    action = [&]() {
      mct_tuple* t = nullptr;
      check(mct_gen_clifford(f.d, &t));
      TuplePtr guard(t, &mct_tuple_free);
      emit_tuple(t, f.out);
      return 0;
    };
  });

  auto* example = gen->add_subcommand("example", "pathology gallery tuples");
  example->require_subcommand(1);

  auto* ss = example->add_subcommand(
      "simplex-surprise", "triangle-filling pair with no eigenvector at 0");
  ss->add_option("--p", f.p, "weight decay exponent (>= 1)");
  ss->add_option("--trunc", f.trunc, "truncation size")->required();
  ss->add_option("--out", f.out, "output path");
  ss->callback([&] {
    action = [&]() {
      mct_tuple* t = nullptr;
      check(mct_gen_simplex_surprise(f.p, f.trunc, &t));
      TuplePtr guard(t, &mct_tuple_free);
      emit_tuple(t, f.out);
      return 0;
    };
  });

  auto* stair = example->add_subcommand(
      "staircase", "diagonal tuple marching into the vertex 0");
  stair->add_option("--body", f.body, "polytope JSON with 0 as a vertex")->required();
  stair->add_option("--trunc", f.trunc, "tail length")->required();
  stair->add_option("--out", f.out, "output path");
  stair->callback([&] {
    action = [&]() {
      BodyPtr k = load_body(f.body);
      mct_tuple* t = nullptr;
      check(mct_gen_staircase(k.get(), f.trunc, &t));
      TuplePtr guard(t, &mct_tuple_free);
      emit_tuple(t, f.out);
      return 0;
    };
  });

  auto* cover = example->add_subcommand(
      "ball-covering", "direct sum of disk summands filling a polygon");
  cover->add_option("--body", f.body, "2-D polygon JSON")->required();
  cover->add_option("--k", f.k, "disks per vertex")->required();
  cover->add_option("--seed", f.seed, "direction sampling seed");
  cover->add_option("--out", f.out, "output path");
  cover->callback([&] {
    action = [&]() {
      BodyPtr k = load_body(f.body);
      mct_tuple* t = nullptr;
      double hausdorff = 0.0;
      mct_options opt = options_from(f);
      check(mct_gen_ball_covering(k.get(), f.k, &opt, &t, &hausdorff));
      TuplePtr guard(t, &mct_tuple_free);
      std::fprintf(stderr, "hausdorff distance to the body: %.6g\n", hausdorff);
      emit_tuple(t, f.out);
      return 0;
    };
  });

  auto* minimal = example->add_subcommand(
      "minimal-normal", "diagonal tuple with one eigenvalue per vertex");
  minimal->add_option("--body", f.body, "polytope JSON")->required();
  minimal->add_option("--out", f.out, "output path");
  minimal->callback([&] {
    action = [&]() {
      BodyPtr k = load_body(f.body);
      mct_tuple* t = nullptr;
      check(mct_gen_minimal_normal(k.get(), &t));
      TuplePtr guard(t, &mct_tuple_free);
      emit_tuple(t, f.out);
      return 0;
    };
  });

  // ---- dilate ----
  auto* dilate = app.add_subcommand("dilate", "build certified dilations");
  dilate->require_subcommand(1);

  auto add_dilate_common = [&](CLI::App* cmd, bool scales_required) {
    cmd->add_option("--in", f.in, "input tuple JSON")->required();
    cmd->add_option("--out", f.out, "certificate output path");
    cmd->add_option("--tol", f.tol, "tolerance override");
    cmd->add_option("--seed", f.seed, "seed for randomized steps");
    auto* s = cmd->add_option("--scales", f.scales, "comma-separated scales");
    if (scales_required) s->required();
  };

  auto* dil_contr = dilate->add_subcommand(
      "contractions", "commuting normal dilation of arbitrary contractions");
  add_dilate_common(dil_contr, false);
  dil_contr->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      mct_options opt = options_from(f);
      mct_cert* c = nullptr;
      check(mct_dilate_contractions(t.get(), &opt, &c));
      CertPtr guard(c, &mct_cert_free);
      emit_cert(c, f.out);
      return 0;
    };
  });

  auto* dil_halmos =
      dilate->add_subcommand("halmos", "unitary dilation of one contraction");
  add_dilate_common(dil_halmos, false);
  dil_halmos->add_option("--bound", f.bound, "norm cap (default 1)");
  dil_halmos->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      mct_options opt = options_from(f);
      mct_cert* c = nullptr;
      check(mct_dilate_halmos(t.get(), f.bound, &opt, &c));
      CertPtr guard(c, &mct_cert_free);
      emit_cert(c, f.out);
      return 0;
    };
  });

  auto* dil_ac = dilate->add_subcommand(
      "anticommuting", "anticommuting dilation at prescribed scales");
  add_dilate_common(dil_ac, true);
  dil_ac->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      std::vector<double> a = parse_scales(f.scales);
      mct_options opt = options_from(f);
      mct_cert* c = nullptr;
      check(mct_dilate_anticommuting(t.get(), a.data(),
                                     static_cast<int>(a.size()), &opt, &c));
      CertPtr guard(c, &mct_cert_free);
      emit_cert(c, f.out);
      return 0;
    };
  });

  auto* dil_cube = dilate->add_subcommand(
      "cube-ball", "certify membership in the anticommuting matrix range");
  add_dilate_common(dil_cube, true);
  dil_cube->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      std::vector<double> cvec = parse_scales(f.scales);
      mct_options opt = options_from(f);
      mct_cert* c = nullptr;
      check(mct_dilate_cube_ball(t.get(), cvec.data(),
                                 static_cast<int>(cvec.size()), &opt, &c));
      CertPtr guard(c, &mct_cert_free);
      emit_cert(c, f.out);
      return 0;
    };
  });

  auto* dil_simplex = dilate->add_subcommand(
      "simplex", "commuting normal dilation over a containing simplex");
  add_dilate_common(dil_simplex, false);
  dil_simplex->add_option("--body", f.body, "simplex JSON")->required();
  dil_simplex->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      BodyPtr k = load_body(f.body);
      mct_options opt = options_from(f);
      mct_cert* c = nullptr;
      check(mct_dilate_simplex(t.get(), k.get(), &opt, &c));
      CertPtr guard(c, &mct_cert_free);
      emit_cert(c, f.out);
      return 0;
    };
  });

  auto* dil_sd = dilate->add_subcommand(
      "sd", "scaled commuting projection dilation of sub-POVM members");
  add_dilate_common(dil_sd, true);
  dil_sd->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      std::vector<double> a = parse_scales(f.scales);
      mct_options opt = options_from(f);
      mct_cert* c = nullptr;
      check(mct_dilate_sd(t.get(), a.data(), static_cast<int>(a.size()), &opt,
                          &c));
      CertPtr guard(c, &mct_cert_free);
      emit_cert(c, f.out);
      return 0;
    };
  });

  // ---- check ----
  auto* chk = app.add_subcommand("check", "membership predicates");
  chk->require_subcommand(1);
  auto* chk_wmax = chk->add_subcommand(
      "wmax", "linear-inequality membership of a tuple in a body's range");
  chk_wmax->add_option("--in", f.in, "input tuple JSON")->required();
  chk_wmax->add_option("--body", f.body, "body JSON")->required();
  chk_wmax->add_option("--directions", f.directions, "sampling density");
  chk_wmax->add_option("--tol", f.tol, "tolerance override");
  chk_wmax->add_option("--seed", f.seed, "sampling seed");
  chk_wmax->add_option("--out", f.out, "verdict JSON path");
  chk_wmax->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      BodyPtr k = load_body(f.body);
      mct_options opt = options_from(f);
      int verdict = 2;
      StringOut s;
      check(mct_check_wmax(t.get(), k.get(), &opt, &verdict, &s.s));
      emit(s.str(), f.out);
      if (verdict == 0 || verdict == 3) return 0;
      return verdict == 1 ? kExitFalse : kExitUnknown;
    };
  });

  // ---- theta ----
  auto* theta = app.add_subcommand(
      "theta", "simplex scale constant of a pointed body");
  theta->add_option("--body", f.body, "body JSON")->required();
  theta->add_option("--tol", f.tol, "tolerance override");
  theta->add_option("--out", f.out, "full result JSON path");
  theta->callback([&] {
    action = [&]() {
      BodyPtr k = load_body(f.body);
      mct_options opt = options_from(f);
      double value = 0.0;
      StringOut s;
      check(mct_theta(k.get(), &opt, &value, &s.s));
      const double rounded = std::round(value);
      if (std::abs(value - rounded) < 1e-9)
        std::printf("%.1f\n", rounded);
      else
        std::printf("%.12g\n", value);
      if (!f.out.empty()) emit(s.str(), f.out);
      return 0;
    };
  });

  // ---- range ----
  auto* range = app.add_subcommand(
      "range", "inner and outer estimates of the level-1 range");
  range->add_option("--in", f.in, "input tuple JSON")->required();
  range->add_option("--directions", f.directions, "sampling density");
  range->add_option("--tol", f.tol, "tolerance override");
  range->add_option("--seed", f.seed, "sampling seed");
  range->add_option("--out", f.out, "output path");
  range->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      mct_options opt = options_from(f);
      StringOut s;
      check(mct_level1_range(t.get(), &opt, &s.s));
      emit(s.str(), f.out);
      return 0;
    };
  });

  // ---- verify ----
  auto* verify = app.add_subcommand(
      "verify", "recompute all claims of a certificate from raw matrices");
  verify->add_option("--cert", f.cert, "certificate JSON");
  verify->add_option("--in", f.in, "certificate JSON (alias)");
  verify->add_option("--tol", f.tol, "uniform bound override for all claims");
  verify->add_option("--out", f.out, "report output path");
  verify->callback([&] {
    action = [&]() {
      const std::string path = f.cert.empty() ? f.in : f.cert;
      if (path.empty())
        throw Failure{kExitError, "verify needs --cert (or --in)"};
      CertPtr c = load_cert(path);
      mct_options opt{};
      int ok = 0;
      StringOut s;
      check(mct_verify(c.get(), f.tol, &opt, &ok, &s.s));
      emit(s.str(), f.out);
      return ok ? 0 : kExitFalse;
    };
  });

  // ---- report ----
  auto* report = app.add_subcommand("report", "diagnostics");
  report->require_subcommand(1);
  auto* rep_min = report->add_subcommand(
      "minimality", "vertex eigenvector and reducing-summand diagnosis");
  rep_min->add_option("--in", f.in, "input tuple JSON")->required();
  rep_min->add_option("--body", f.body, "polytope JSON")->required();
  rep_min->add_option("--tol", f.tol, "tolerance override");
  rep_min->add_option("--seed", f.seed, "split seed");
  rep_min->add_option("--out", f.out, "report output path");
  rep_min->callback([&] {
    action = [&]() {
      TuplePtr t = load_tuple(f.in);
      BodyPtr k = load_body(f.body);
      mct_options opt = options_from(f);
      int verdict = 2;
      StringOut s;
      check(mct_report_minimality(t.get(), k.get(), &opt, &verdict, &s.s));
      emit(s.str(), f.out);
      if (verdict == 0) return 0;
      return verdict == 1 ? kExitFalse : kExitUnknown;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    return action ? action() : kExitError;
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}
