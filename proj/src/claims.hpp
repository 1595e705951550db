#pragma once

// Internal glue shared by the construction translation units: the single
// claim-measurement dispatch (construction-time stamping and verification
// must agree by construction) plus small isometry builders.

#include <string>
#include <vector>

#include "mct/certificate.hpp"
#include "mct/linalg.hpp"

namespace mct::detail {

double measure_claim(const DilationCertificate& cert, const Claim& c,
                     const ToleranceConfig& tol);

void stamp_claim(DilationCertificate& cert, const std::string& name, double bound,
                 std::vector<double> params, const ToleranceConfig& tol);

ComplexMatrix first_block_isometry(int big, int small);

}  // namespace mct::detail
