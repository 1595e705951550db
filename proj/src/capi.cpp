#include "mct.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "mct/anticommuting.hpp"
#include "mct/bodies.hpp"
#include "mct/dilation.hpp"
#include "mct/gallery.hpp"
#include "mct/matrix_convex.hpp"
#include "mct/serialize.hpp"

struct mct_tuple {
  mct::MatrixTuple v;
};
struct mct_body {
  mct::ConvexBody v;
};
struct mct_cert {
  mct::DilationCertificate v;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

// Premise and parse problems are the caller's; everything the library throws
// deliberately lands in MCT_EINVAL, numerical contract failures in
// MCT_ENUMERIC.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return MCT_OK;
  } catch (const std::invalid_argument& e) {
    return fail(MCT_EINVAL, e.what());
  } catch (const std::domain_error& e) {
    return fail(MCT_EINVAL, e.what());
  } catch (const mct::Json::exception& e) {
    return fail(MCT_EINVAL, e.what());
  } catch (const std::runtime_error& e) {
    return fail(MCT_ENUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCT_EINTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCT_EINTERNAL, e.what());
  }
}

char* heap_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mct::ToleranceConfig config_from(const mct_options* opt) {
  mct::ToleranceConfig tol;
  if (!opt) return tol;
  if (opt->tol > 0.0) {
    tol.abs_tol = opt->tol;
    tol.rel_tol = opt->tol;
  }
  if (opt->eig_tol > 0.0) tol.eig_tol = opt->eig_tol;
  tol.seed = opt->seed;
  return tol;
}

int direction_count(const mct_options* opt) {
  return (opt && opt->directions > 0) ? opt->directions : 64;
}

std::vector<double> scale_list(const double* scales, int count) {
  if (!scales || count <= 0)
    throw std::invalid_argument("a positive number of scales is required");
  return std::vector<double>(scales, scales + count);
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

extern "C" {

const char* mct_last_error(void) { return g_last_error.c_str(); }

void mct_string_free(char* s) { std::free(s); }

int mct_tuple_from_json(const char* json, mct_tuple** out) {
  return guarded([&] {
    require(json && out, "null argument");
    mct::Json j = mct::Json::parse(json, nullptr, true);
    *out = new mct_tuple{mct::tuple_from_json(j)};
  });
}

int mct_tuple_to_json(const mct_tuple* t, char** out) {
  return guarded([&] {
    require(t && out, "null argument");
    *out = heap_string(mct::tuple_to_json(t->v).dump(2));
  });
}

int mct_tuple_dims(const mct_tuple* t, int* d, int* n) {
  return guarded([&] {
    require(t != nullptr, "null argument");
    if (d) *d = t->v.d();
    if (n) *n = t->v.n();
  });
}

void mct_tuple_free(mct_tuple* t) { delete t; }

int mct_body_from_json(const char* json, mct_body** out) {
  return guarded([&] {
    require(json && out, "null argument");
    mct::Json j = mct::Json::parse(json, nullptr, true);
    *out = new mct_body{mct::body_from_json(j)};
  });
}

int mct_body_to_json(const mct_body* k, char** out) {
  return guarded([&] {
    require(k && out, "null argument");
    *out = heap_string(mct::body_to_json(k->v).dump(2));
  });
}

void mct_body_free(mct_body* k) { delete k; }

int mct_cert_from_json(const char* json, mct_cert** out) {
  return guarded([&] {
    require(json && out, "null argument");
    mct::Json j = mct::Json::parse(json, nullptr, true);
    *out = new mct_cert{mct::certificate_from_json(j)};
  });
}

int mct_cert_to_json(const mct_cert* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = heap_string(mct::certificate_to_json(c->v).dump(2));
  });
}

void mct_cert_free(mct_cert* c) { delete c; }

int mct_gen_clifford(int d, mct_tuple** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new mct_tuple{mct::clifford_generators(d).f};
  });
}

int mct_gen_simplex_surprise(double p, int m, mct_tuple** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new mct_tuple{mct::simplex_surprise_tuple(p, m)};
  });
}

int mct_gen_staircase(const mct_body* k, int m, mct_tuple** out) {
  return guarded([&] {
    require(k && out, "null argument");
    *out = new mct_tuple{mct::staircase_normal_tuple(k->v, m)};
  });
}

int mct_gen_ball_covering(const mct_body* k, int k_max, const mct_options* opt,
                          mct_tuple** out, double* hausdorff) {
  return guarded([&] {
    require(k && out, "null argument");
    const mct::ToleranceConfig tol = config_from(opt);
    *out = new mct_tuple{mct::ball_covering_tuple(k->v, k_max, tol)};
    if (hausdorff) *hausdorff = mct::ball_covering_hausdorff(k->v, k_max, tol);
  });
}

int mct_gen_minimal_normal(const mct_body* k, mct_tuple** out) {
  return guarded([&] {
    require(k && out, "null argument");
    *out = new mct_tuple{mct::minimal_normal_tuple(k->v)};
  });
}

int mct_dilate_contractions(const mct_tuple* t, const mct_options* opt,
                            mct_cert** out) {
  return guarded([&] {
    require(t && out, "null argument");
    *out = new mct_cert{mct::contraction_normal_dilation(t->v, config_from(opt))};
  });
}

int mct_dilate_halmos(const mct_tuple* t, double bound, const mct_options* opt,
                      mct_cert** out) {
  return guarded([&] {
    require(t && out, "null argument");
    require(t->v.d() == 1, "halmos takes a single-member tuple");
    *out = new mct_cert{
        mct::halmos(t->v[0], bound > 0.0 ? bound : 1.0, config_from(opt))};
  });
}

int mct_dilate_anticommuting(const mct_tuple* t, const double* scales,
                             int count, const mct_options* opt,
                             mct_cert** out) {
  return guarded([&] {
    require(t && out, "null argument");
    *out = new mct_cert{mct::anticommuting_dilation(
        t->v, mct::ScaleVector(scale_list(scales, count)), {},
        config_from(opt))};
  });
}

int mct_dilate_cube_ball(const mct_tuple* t, const double* radii, int count,
                         const mct_options* opt, mct_cert** out) {
  return guarded([&] {
    require(t && out, "null argument");
    *out = new mct_cert{mct::cube_ball_certificate(
        t->v, mct::ScaleVector(scale_list(radii, count)), config_from(opt))};
  });
}

int mct_dilate_simplex(const mct_tuple* t, const mct_body* k,
                       const mct_options* opt, mct_cert** out) {
  return guarded([&] {
    require(t && k && out, "null argument");
    *out = new mct_cert{
        mct::wmin_certificate_simplex(t->v, k->v, config_from(opt))};
  });
}

int mct_dilate_sd(const mct_tuple* t, const double* scales, int count,
                  const mct_options* opt, mct_cert** out) {
  return guarded([&] {
    require(t && out, "null argument");
    std::vector<std::vector<mct::ComplexMatrix>> groups;
    groups.reserve(t->v.d());
    for (int j = 0; j < t->v.d(); ++j) groups.push_back({t->v[j]});
    *out = new mct_cert{mct::sd_projection_dilation(
        groups, mct::ScaleVector(scale_list(scales, count)),
        config_from(opt))};
  });
}

int mct_theta(const mct_body* k, const mct_options* opt, double* theta,
              char** out_json) {
  return guarded([&] {
    require(k != nullptr, "null argument");
    mct::ThetaResult r = mct::theta_simplex_pointed(k->v, config_from(opt));
    if (theta) *theta = r.theta;
    if (out_json) *out_json = heap_string(mct::theta_to_json(r).dump(2));
  });
}

int mct_sd_classify(const double* scales, int count, int* verdict) {
  return guarded([&] {
    require(verdict != nullptr, "null argument");
    switch (mct::sd_classify(mct::ScaleVector(scale_list(scales, count)))) {
      case mct::SdVerdict::SD_certified: *verdict = 0; break;
      case mct::SdVerdict::not_SD_certified: *verdict = 1; break;
      case mct::SdVerdict::unknown: *verdict = 2; break;
    }
  });
}

int mct_check_wmax(const mct_tuple* t, const mct_body* k,
                   const mct_options* opt, int* verdict, char** out_json) {
  return guarded([&] {
    require(t && k && verdict, "null argument");
    mct::MembershipVerdict v = mct::wmax_membership(
        t->v, k->v, direction_count(opt), config_from(opt));
    switch (v.verdict) {
      case mct::Verdict::member: *verdict = 0; break;
      case mct::Verdict::non_member: *verdict = 1; break;
      case mct::Verdict::unknown: *verdict = 2; break;
      case mct::Verdict::member_sampled: *verdict = 3; break;
    }
    if (out_json) *out_json = heap_string(mct::membership_to_json(v).dump(2));
  });
}

int mct_level1_range(const mct_tuple* t, const mct_options* opt,
                     char** out_json) {
  return guarded([&] {
    require(t && out_json, "null argument");
    mct::Level1Range r =
        mct::level1_range(t->v, direction_count(opt), config_from(opt));
    *out_json = heap_string(mct::level1_range_to_json(r).dump(2));
  });
}

int mct_verify(const mct_cert* c, double bound_override,
               const mct_options* opt, int* ok, char** out_report) {
  return guarded([&] {
    require(c && ok, "null argument");
    mct::DilationCertificate cert = c->v;
    if (bound_override > 0.0)
      for (auto& claim : cert.claims) claim.bound = bound_override;
    mct::VerifyReport rep = mct::verify_certificate(cert, config_from(opt));
    *ok = rep.ok ? 1 : 0;
    if (out_report)
      *out_report = heap_string(mct::verify_report_to_json(rep).dump(2));
  });
}

int mct_report_minimality(const mct_tuple* t, const mct_body* k,
                          const mct_options* opt, int* verdict,
                          char** out_json) {
  return guarded([&] {
    require(t && k && verdict, "null argument");
    mct::MinimalityReport rep =
        mct::minimality_report(t->v, k->v, config_from(opt));
    switch (rep.verdict) {
      case mct::MinimalityReport::Verdict::minimal_diagonal: *verdict = 0; break;
      case mct::MinimalityReport::Verdict::not_minimal: *verdict = 1; break;
      case mct::MinimalityReport::Verdict::inconclusive: *verdict = 2; break;
    }
    if (out_json) *out_json = heap_string(mct::minimality_to_json(rep).dump(2));
  });
}

}  // extern "C"
