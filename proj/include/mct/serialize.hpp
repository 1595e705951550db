#pragma once

#include <string>

#include <json.hpp>

#include "mct/bodies.hpp"
#include "mct/certificate.hpp"
#include "mct/gallery.hpp"
#include "mct/linalg.hpp"
#include "mct/matrix_convex.hpp"

namespace mct {

using Json = nlohmann::json;

// Matrices serialize as {"rows", "cols", "entries": [[re, im], ...]} with
// entries in row-major order; doubles round-trip bit-identically.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"d", "n", "hermitian": [...], "matrices": [[[re,im], ...row-major...], ...]}
Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j);

// {"dim", "kind": "v_polytope"|"h_polytope"|"named", "vertices", "facets",
//  "name": {"shape", ...parameters...}, "complex", "label"}
Json body_to_json(const ConvexBody& k);
ConvexBody body_from_json(const Json& j);

Json certificate_to_json(const DilationCertificate& c);
DilationCertificate certificate_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& r);
Json membership_to_json(const MembershipVerdict& v);
Json level1_range_to_json(const Level1Range& r);
Json theta_to_json(const ThetaResult& r);
Json minimality_to_json(const MinimalityReport& r);

// Parse failures surface as std::invalid_argument with the parser diagnostic.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace mct
