#ifndef MCT_H
#define MCT_H

/* C interface to the matrix convexity toolkit. All objects live behind
 * opaque handles; every function returns a status code and reports failure
 * detail through mct_last_error(). Strings returned through out-parameters
 * are heap-allocated and released with mct_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mct_tuple mct_tuple;
typedef struct mct_body mct_body;
typedef struct mct_cert mct_cert;

enum {
  MCT_OK = 0,
  MCT_EINVAL = 1,    /* malformed input or violated premise */
  MCT_ENUMERIC = 2,  /* computation could not meet its contract */
  MCT_EINTERNAL = 3
};

/* Message describing the most recent failure on this thread. */
const char* mct_last_error(void);

void mct_string_free(char* s);

/* Zero-initialize, then override the fields you need. Non-positive numeric
 * fields select the built-in defaults (tol 1e-9, eig_tol 1e-7,
 * directions 64). seed 0 is itself a fixed, reproducible stream. */
typedef struct mct_options {
  double tol;
  double eig_tol;
  uint64_t seed;
  int directions;
} mct_options;

/* ---- handles and JSON ---- */

int mct_tuple_from_json(const char* json, mct_tuple** out);
int mct_tuple_to_json(const mct_tuple* t, char** out);
int mct_tuple_dims(const mct_tuple* t, int* d, int* n);
void mct_tuple_free(mct_tuple* t);

int mct_body_from_json(const char* json, mct_body** out);
int mct_body_to_json(const mct_body* k, char** out);
void mct_body_free(mct_body* k);

int mct_cert_from_json(const char* json, mct_cert** out);
int mct_cert_to_json(const mct_cert* c, char** out);
void mct_cert_free(mct_cert* c);

/* ---- generators ---- */

int mct_gen_clifford(int d, mct_tuple** out);
int mct_gen_simplex_surprise(double p, int m, mct_tuple** out);
int mct_gen_staircase(const mct_body* k, int m, mct_tuple** out);
/* hausdorff (optional) receives the support-sampled distance between the
 * hull of the covering disks and the body. */
int mct_gen_ball_covering(const mct_body* k, int k_max, const mct_options* opt,
                          mct_tuple** out, double* hausdorff);
int mct_gen_minimal_normal(const mct_body* k, mct_tuple** out);

/* ---- dilation constructions; each emits a verifiable certificate ---- */

int mct_dilate_contractions(const mct_tuple* t, const mct_options* opt,
                            mct_cert** out);
/* bound <= 0 selects 1.0. The tuple must have a single member. */
int mct_dilate_halmos(const mct_tuple* t, double bound, const mct_options* opt,
                      mct_cert** out);
int mct_dilate_anticommuting(const mct_tuple* t, const double* scales,
                             int count, const mct_options* opt, mct_cert** out);
int mct_dilate_cube_ball(const mct_tuple* t, const double* radii, int count,
                         const mct_options* opt, mct_cert** out);
int mct_dilate_simplex(const mct_tuple* t, const mct_body* k,
                       const mct_options* opt, mct_cert** out);
/* Members are treated as singleton groups of the product construction. */
int mct_dilate_sd(const mct_tuple* t, const double* scales, int count,
                  const mct_options* opt, mct_cert** out);

/* ---- analysis ---- */

/* out_json (optional) receives {"theta", "s", "simplex"}. */
int mct_theta(const mct_body* k, const mct_options* opt, double* theta,
              char** out_json);
/* verdict: 0 certified, 1 ruled out, 2 undecided. */
int mct_sd_classify(const double* scales, int count, int* verdict);
/* verdict: 0 member (exact), 1 non-member, 2 unknown, 3 member at the
 * sampled directions only. */
int mct_check_wmax(const mct_tuple* t, const mct_body* k,
                   const mct_options* opt, int* verdict, char** out_json);
int mct_level1_range(const mct_tuple* t, const mct_options* opt,
                     char** out_json);
/* Recomputes every claim from the raw matrices; stored residuals are never
 * trusted. bound_override > 0 replaces each claim's stored bound. ok is 1
 * when every recomputed residual passes. */
int mct_verify(const mct_cert* c, double bound_override,
               const mct_options* opt, int* ok, char** out_report);
/* verdict: 0 minimal_diagonal, 1 not_minimal, 2 inconclusive. */
int mct_report_minimality(const mct_tuple* t, const mct_body* k,
                          const mct_options* opt, int* verdict,
                          char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* MCT_H */
