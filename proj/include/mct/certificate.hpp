#pragma once

#include <map>
#include <string>
#include <vector>

#include "mct/bodies.hpp"
#include "mct/linalg.hpp"

namespace mct {

// One verifiable assertion about a certificate: `residual` as measured when
// the certificate was produced, `bound` it must stay under, and optional
// numeric parameters a verifier needs to recompute it (norm caps, scales).
struct Claim {
  std::string name;
  double residual = 0.0;
  double bound = 1e-8;
  std::vector<double> params;
};

// A dilation packaged with everything needed to re-verify it from scratch:
// the original tuple, the dilated tuple, the isometry connecting them, and
// the claimed properties. `construction` names which recipe produced it so a
// verifier knows which claim set to expect; `group_sizes` partitions the
// dilation members when the construction conjoins several input tuples;
// `bodies` carries the convex bodies spectral claims refer to;
// `intermediates` carries auxiliary tuples (averaged contractions, witness
// symmetries) that some claims are stated about.
struct DilationCertificate {
  MatrixTuple input;
  MatrixTuple dilation;
  Isometry isometry;
  std::vector<Claim> claims;
  std::string construction;
  double certified_scale = 1.0;
  std::vector<double> certified_scales;
  std::vector<int> group_sizes;
  std::vector<ConvexBody> bodies;
  std::map<std::string, MatrixTuple> intermediates;
  // Informational figures that are reported but not certified (external
  // bounds, optimality witnesses); never part of verification.
  std::map<std::string, double> reported;
  std::string note;

  const Claim* find_claim(const std::string& name) const {
    for (const auto& c : claims)
      if (c.name == name) return &c;
    return nullptr;
  }
  double worst_slack() const {
    double w = -1e300;
    for (const auto& c : claims) w = std::max(w, c.residual - c.bound);
    return w;
  }
  bool all_claims_hold() const { return claims.empty() || worst_slack() <= 0.0; }
};

struct VerifyReport {
  bool ok = false;
  std::vector<Claim> recomputed;  // same names, residuals measured afresh
  std::string message;
};

}  // namespace mct
