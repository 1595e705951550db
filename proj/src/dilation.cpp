#include "mct/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "claims.hpp"
#include "mct/matrix_convex.hpp"

namespace mct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix cid(int n) { return ComplexMatrix::Identity(n, n); }

// Compensated (Kahan) matrix accumulation for the DFT sums.
class MatrixAccumulator {
 public:
  MatrixAccumulator(int rows, int cols)
      : sum_(ComplexMatrix::Zero(rows, cols)), comp_(ComplexMatrix::Zero(rows, cols)) {}
  void add(const ComplexMatrix& term) {
    ComplexMatrix y = term - comp_;
    ComplexMatrix t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = std::move(t);
  }
  const ComplexMatrix& value() const { return sum_; }

 private:
  ComplexMatrix sum_, comp_;
};

ComplexVector unit_of_rank_one(const ComplexMatrix& q) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q);
  const int top = static_cast<int>(es.eigenvalues().size()) - 1;
  return es.eigenvectors().col(top);
}

double dist_to_set(double x, const std::vector<double>& set) {
  double best = kInf;
  for (double s : set) best = std::min(best, std::abs(x - s));
  return best;
}

// Real coordinates of one joint-spectrum point restricted to a group,
// matched to the body's coordinate convention. Imaginary leakage outside a
// complex-coordinate body is returned as extra residual.
RealVector body_coords(const ComplexVector& sub, const ConvexBody& body,
                       double* imag_leak) {
  const int g = static_cast<int>(sub.size());
  if (body.complex_coords) {
    RealVector r(2 * g);
    for (int j = 0; j < g; ++j) {
      r(2 * j) = sub(j).real();
      r(2 * j + 1) = sub(j).imag();
    }
    if (imag_leak) *imag_leak = 0.0;
    return r;
  }
  RealVector r(g);
  double leak = 0.0;
  for (int j = 0; j < g; ++j) {
    r(j) = sub(j).real();
    leak = std::max(leak, std::abs(sub(j).imag()));
  }
  if (imag_leak) *imag_leak = leak;
  return r;
}

std::vector<std::pair<int, int>> group_slices(const DilationCertificate& cert) {
  std::vector<std::pair<int, int>> out;
  int off = 0;
  for (int g : cert.group_sizes) {
    out.emplace_back(off, g);
    off += g;
  }
  if (off != cert.dilation.d())
    throw std::runtime_error("certificate group sizes do not partition the dilation");
  return out;
}

MatrixTuple slice_tuple(const MatrixTuple& t, int off, int len) {
  std::vector<ComplexMatrix> m(t.mats.begin() + off, t.mats.begin() + off + len);
  std::vector<bool> h(t.hermitian.begin() + off, t.hermitian.begin() + off + len);
  return MatrixTuple(std::move(m), std::move(h));
}

}  // namespace

double detail::measure_claim(const DilationCertificate& cert, const Claim& c,
                             const ToleranceConfig& tol) {
  const MatrixTuple& dil = cert.dilation;
  const int d = dil.d();

  if (c.name == "isometry") return cert.isometry.defect();

  if (c.name == "compression") {
    if (cert.input.d() != d)
      throw std::runtime_error("compression claim: member count mismatch");
    double worst = 0.0;
    for (int j = 0; j < d; ++j)
      worst = std::max(worst, (compress(cert.isometry, dil[j]) - cert.input[j]).norm());
    return worst;
  }

  if (c.name == "commuting") {
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        worst = std::max(worst, (dil[i] * dil[j] - dil[j] * dil[i]).norm());
    return worst;
  }

  if (c.name == "normal") {
    double worst = 0.0;
    for (int j = 0; j < d; ++j)
      worst = std::max(worst,
                       (dil[j] * dil[j].adjoint() - dil[j].adjoint() * dil[j]).norm());
    return worst;
  }

  if (c.name == "hermitian") {
    double worst = 0.0;
    for (int j = 0; j < d; ++j) worst = std::max(worst, herm_defect(dil[j]));
    return worst;
  }

  if (c.name == "anticommuting") {
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        worst = std::max(worst, (dil[i] * dil[j] + dil[j] * dil[i]).norm());
    return worst;
  }

  if (c.name == "squares_scale") {
    if (static_cast<int>(c.params.size()) != d)
      throw std::runtime_error("squares_scale claim: one scale per member required");
    double worst = 0.0;
    for (int j = 0; j < d; ++j) {
      const double s = c.params[j];
      worst = std::max(worst,
                       (dil[j] * dil[j] - s * s * cid(dil.n())).norm());
    }
    return worst;
  }

  if (c.name == "norm_bounds") {
    if (static_cast<int>(c.params.size()) != d)
      throw std::runtime_error("norm_bounds claim: one cap per member required");
    double worst = 0.0;
    for (int j = 0; j < d; ++j)
      worst = std::max(worst, std::max(0.0, op_norm(dil[j]) - c.params[j]));
    return worst;
  }

  if (c.name == "pairwise_products_zero") {
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) worst = std::max(worst, (dil[i] * dil[j]).norm());
    return worst;
  }

  if (c.name == "group_annihilation") {
    double worst = 0.0;
    for (auto [off, len] : group_slices(cert))
      for (int i = off; i < off + len; ++i)
        for (int j = off; j < off + len; ++j)
          if (i != j) worst = std::max(worst, (dil[i] * dil[j]).norm());
    return worst;
  }

  if (c.name == "finite_dimensional") return 0.0;

  if (c.name == "spectrum_in_scaled_set") {
    if (static_cast<int>(c.params.size()) != d)
      throw std::runtime_error("spectrum_in_scaled_set claim: one scale per member required");
    double worst = 0.0;
    for (int j = 0; j < d; ++j) {
      const double s = c.params[j];
      for (double lam : herm_eigenvalues(dil[j]))
        worst = std::max(worst, dist_to_set(lam, {-s, 0.0, s}));
    }
    return worst;
  }

  if (c.name == "spectrum_in_vertex_set") {
    if (cert.bodies.empty())
      throw std::runtime_error("spectrum_in_vertex_set claim: certificate carries no body");
    const auto verts = body_vertices(cert.bodies[0]);
    double worst = 0.0;
    for (const auto& pt : joint_spectrum(dil, tol).points) {
      double best = kInf;
      for (const auto& w : verts) {
        double dd = 0.0;
        for (int j = 0; j < d; ++j) dd += std::norm(pt(j) - Complex(w(j), 0.0));
        best = std::min(best, std::sqrt(dd));
      }
      worst = std::max(worst, best);
    }
    return worst;
  }

  if (c.name == "group_spectrum_in_body") {
    const auto slices = group_slices(cert);
    if (cert.bodies.size() != slices.size() || c.params.size() != slices.size())
      throw std::runtime_error("group_spectrum_in_body claim: group data mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const ConvexBody scaled = scale_body(cert.bodies[i], c.params[i]);
      const auto js = joint_spectrum(slice_tuple(dil, slices[i].first, slices[i].second), tol);
      for (const auto& pt : js.points) {
        double leak = 0.0;
        const RealVector r = body_coords(pt, scaled, &leak);
        worst = std::max(worst, std::max(leak, member_distance(scaled, r)));
      }
    }
    return worst;
  }

  if (c.name == "joint_spectrum_in_product" || c.name == "joint_spectrum_in_L") {
    const auto slices = group_slices(cert);
    if (cert.bodies.size() != slices.size() || c.params.size() != slices.size())
      throw std::runtime_error("joint spectrum claim: group data mismatch");
    std::vector<ConvexBody> scaled;
    for (std::size_t i = 0; i < slices.size(); ++i)
      scaled.push_back(scale_body(cert.bodies[i], c.params[i]));
    const auto js = joint_spectrum(dil, tol);
    double worst = 0.0;
    for (const auto& pt : js.points) {
      std::vector<double> activity(slices.size(), 0.0);
      for (std::size_t i = 0; i < slices.size(); ++i) {
        const ComplexVector sub = pt.segment(slices[i].first, slices[i].second);
        activity[i] = sub.cwiseAbs().maxCoeff();
        double leak = 0.0;
        const RealVector r = body_coords(sub, scaled[i], &leak);
        worst = std::max(worst, std::max(leak, member_distance(scaled[i], r)));
      }
      if (c.name == "joint_spectrum_in_L" && activity.size() > 1) {
        // at most one group may be active per joint eigenvalue
        std::sort(activity.begin(), activity.end(), std::greater<>());
        worst = std::max(worst, activity[1]);
      }
    }
    return worst;
  }

  if (c.name == "averaging_identity") {
    const MatrixTuple& s = cert.intermediates.at("S");
    ComplexMatrix left = ComplexMatrix::Zero(s.n(), s.n());
    ComplexMatrix right = left;
    for (const auto& m : s.mats) {
      left += m * m.adjoint();
      right += m.adjoint() * m;
    }
    return std::max((left - cid(s.n())).norm(), (right - cid(s.n())).norm());
  }

  if (c.name == "dft_inversion") {
    const MatrixTuple& s = cert.intermediates.at("S");
    const MatrixTuple& u = cert.intermediates.at("U");
    const int dd = s.d();
    double worst = 0.0;
    for (int k = 0; k < dd; ++k) {
      MatrixAccumulator acc(s.n(), s.n());
      for (int j = 0; j < dd; ++j) {
        const double ph = -2.0 * std::numbers::pi * double(j) * double(k) / double(dd);
        acc.add(std::exp(Complex(0.0, ph)) * s[j]);
      }
      worst = std::max(worst, (acc.value() - u[k]).norm());
    }
    return worst;
  }

  if (c.name == "unitary_scaled") {
    const double b = cert.certified_scale;
    const ComplexMatrix u = dil[0] / b;
    return std::max((u * u.adjoint() - cid(dil.n())).norm(),
                    (u.adjoint() * u - cid(dil.n())).norm());
  }

  if (c.name == "square_scalar") {
    const double b = cert.certified_scale;
    return (dil[0] * dil[0] - b * b * cid(dil.n())).norm();
  }

  if (c.name == "witness_anticommute") {
    double worst = 0.0;
    for (const auto& w : cert.intermediates.at("witness").mats)
      for (int j = 0; j < d; ++j)
        worst = std::max(worst, (w * dil[j] + dil[j] * w).norm());
    return worst;
  }

  if (c.name == "witness_unitary") {
    double worst = 0.0;
    for (const auto& w : cert.intermediates.at("witness").mats) {
      worst = std::max(
          worst, (w.adjoint() * w - cid(static_cast<int>(w.rows()))).norm());
      worst = std::max(worst, herm_defect(w));
    }
    return worst;
  }

  if (c.name == "witness_compression") {
    // lifted witnesses compress back to the supplied ones
    const MatrixTuple& w = cert.intermediates.at("witness");
    const MatrixTuple& w0 = cert.intermediates.at("witness_input");
    if (w.d() != w0.d())
      throw std::runtime_error("witness_compression claim: witness count mismatch");
    double worst = 0.0;
    for (int j = 0; j < w.d(); ++j)
      worst = std::max(worst, (compress(cert.isometry, w[j]) - w0[j]).norm());
    return worst;
  }

  throw std::runtime_error("unrecognized claim: " + c.name);
}

void detail::stamp_claim(DilationCertificate& cert, const std::string& name,
                         double bound, std::vector<double> params,
                         const ToleranceConfig& tol) {
  Claim c{name, 0.0, bound, std::move(params)};
  c.residual = detail::measure_claim(cert, c, tol);
  cert.claims.push_back(std::move(c));
}

ComplexMatrix detail::first_block_isometry(int big, int small) {
  ComplexMatrix v = ComplexMatrix::Zero(big, small);
  v.topRows(small) = ComplexMatrix::Identity(small, small);
  return v;
}

namespace {

using detail::first_block_isometry;
using detail::measure_claim;
using detail::stamp_claim;

ComplexVector basis_vector(int dim, int i) {
  ComplexVector e = ComplexVector::Zero(dim);
  e(i) = Complex(1.0, 0.0);
  return e;
}

void check_common_size(const std::vector<MatrixTuple>& groups) {
  for (std::size_t i = 1; i < groups.size(); ++i)
    if (groups[i].n() != groups[0].n())
      throw std::invalid_argument("all groups must act on a common space");
}

// Joint-spectrum points of one group checked against its body.
void check_group_spectrum(const MatrixTuple& group, const ConvexBody& body,
                          const ToleranceConfig& tol, const char* who) {
  double scale = 1.0;
  for (const auto& m : group.mats) scale = std::max(scale, op_norm(m));
  const double budget = std::max(tol.abs_tol, 1e-8) * scale;
  for (const auto& pt : joint_spectrum(group, tol).points) {
    double leak = 0.0;
    const RealVector r = body_coords(pt, body, &leak);
    if (std::max(leak, member_distance(body, r)) > budget) {
      std::ostringstream os;
      os << who << ": group spectrum escapes its body (distance "
         << std::max(leak, member_distance(body, r)) << ")";
      throw std::domain_error(os.str());
    }
  }
}

}  // namespace

ScaleVector shrink_to_harmonic_equality(const ScaleVector& a) {
  const double c = a.harmonic_sum();
  if (c > 1.0 + 1e-12)
    throw std::invalid_argument("scales are not harmonic-feasible (sum 1/a_i > 1)");
  std::vector<double> out = a.a;
  for (double& v : out) v *= c;
  return ScaleVector(out);
}

OrthogonalFamily q_family(const ScaleVector& a, const ToleranceConfig&) {
  if (std::abs(a.harmonic_sum() - 1.0) > 1e-12)
    throw std::invalid_argument("q_family: harmonic sum must equal 1 (shrink first)");
  const int d = a.d();
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w(i) = 1.0 / std::sqrt(a.a[i]);

  // Householder reflection sending e_1 to the unit vector w; its columns form
  // an orthonormal basis whose first member is w.
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd u = -w;
  u(0) += 1.0;
  const double nn = u.squaredNorm();
  if (nn > 1e-28) h -= (2.0 / nn) * (u * u.transpose());

  OrthogonalFamily fam{a, {}};
  fam.q.reserve(d);
  Eigen::MatrixXd check = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const Eigen::VectorXd hi = h.col(i);
    Eigen::MatrixXd qi = a.a[i] * (hi * hi.transpose());
    check += qi / a.a[i];
    fam.q.push_back(qi.cast<Complex>());
  }
  if ((check - Eigen::MatrixXd::Identity(d, d)).norm() > 1e-10)
    throw std::logic_error("q_family: resolution of identity failed");
  return fam;
}

DilationCertificate halmos(const ComplexMatrix& x, double bound,
                           const ToleranceConfig& tol) {
  if (x.rows() != x.cols()) throw std::invalid_argument("halmos: square matrix required");
  if (!(bound > 0)) throw std::invalid_argument("halmos: bound must be positive");
  const int n = static_cast<int>(x.rows());
  const double nx = op_norm(x);
  if (nx > bound + std::max(tol.abs_tol, 1e-9)) {
    std::ostringstream os;
    os << "halmos: operator norm " << nx << " exceeds bound " << bound;
    throw std::domain_error(os.str());
  }

  const ComplexMatrix b2 = bound * bound * cid(n);
  const ComplexMatrix s1 = psd_sqrt(herm_part(b2 - x * x.adjoint()), tol);
  const ComplexMatrix s2 = psd_sqrt(herm_part(b2 - x.adjoint() * x), tol);
  ComplexMatrix u = block2(x, s1, s2, -x.adjoint());
  const bool hx = is_hermitian(x, 1e-10 * std::max(1.0, nx));

  DilationCertificate cert;
  cert.construction = "halmos";
  cert.certified_scale = bound;
  cert.input = MatrixTuple({x}, std::vector<bool>{hx});
  cert.dilation = MatrixTuple({std::move(u)}, std::vector<bool>{hx});
  cert.isometry = Isometry(first_block_isometry(2 * n, n));
  stamp_claim(cert, "isometry", 1e-10, {}, tol);
  stamp_claim(cert, "compression", 1e-10, {}, tol);
  stamp_claim(cert, "unitary_scaled", 1e-8, {}, tol);
  if (hx) {
    stamp_claim(cert, "hermitian", 1e-10, {}, tol);
    stamp_claim(cert, "square_scalar", 1e-8, {}, tol);
  }
  return cert;
}

DilationCertificate positive_scaling_dilation(const std::vector<MatrixTuple>& groups,
                                              const std::vector<ConvexBody>& bodies,
                                              const ScaleVector& a,
                                              const ToleranceConfig& tol) {
  const int d = a.d();
  if (static_cast<int>(groups.size()) != d || static_cast<int>(bodies.size()) != d)
    throw std::invalid_argument("positive_scaling_dilation: need one group and one body per scale");
  check_common_size(groups);
  const int n = groups[0].n();
  for (int i = 0; i < d; ++i) {
    const int want = bodies[i].complex_coords ? 2 * groups[i].d() : groups[i].d();
    if (bodies[i].dim != want)
      throw std::invalid_argument("positive_scaling_dilation: body dimension mismatch");
    if (member_distance(bodies[i], RealVector::Zero(bodies[i].dim)) > 1e-8)
      throw std::domain_error("positive_scaling_dilation: bodies must contain 0");
    check_group_spectrum(groups[i], bodies[i], tol, "positive_scaling_dilation");
  }

  const ScaleVector eq = shrink_to_harmonic_equality(a);
  const OrthogonalFamily fam = q_family(eq, tol);

  std::vector<ComplexMatrix> dil, inp;
  std::vector<bool> herm_dil, herm_inp;
  std::vector<int> sizes;
  for (int i = 0; i < d; ++i) {
    sizes.push_back(groups[i].d());
    for (int j = 0; j < groups[i].d(); ++j) {
      inp.push_back(groups[i][j]);
      herm_inp.push_back(groups[i].hermitian[j]);
      dil.push_back(kron(groups[i][j], fam.q[i]));
      herm_dil.push_back(groups[i].hermitian[j]);
    }
  }

  DilationCertificate cert;
  cert.construction = "positive_scaling";
  cert.input = MatrixTuple(std::move(inp), std::move(herm_inp));
  cert.dilation = MatrixTuple(std::move(dil), std::move(herm_dil));
  cert.isometry = Isometry(kron(cid(n), basis_vector(d, 0)));
  cert.group_sizes = std::move(sizes);
  cert.bodies = bodies;
  cert.certified_scales = a.a;
  if (eq.a != a.a)
    cert.note = "scales shrunk proportionally to harmonic equality before the orthogonal family";

  stamp_claim(cert, "isometry", 1e-10, {}, tol);
  stamp_claim(cert, "compression", 1e-9, {}, tol);
  stamp_claim(cert, "commuting", 1e-8, {}, tol);
  stamp_claim(cert, "normal", 1e-8, {}, tol);
  stamp_claim(cert, "joint_spectrum_in_L", 1e-8, a.a, tol);
  return cert;
}

DilationCertificate sd_projection_dilation(
    const std::vector<std::vector<ComplexMatrix>>& groups, const ScaleVector& a,
    const ToleranceConfig& tol) {
  const int d = a.d();
  if (static_cast<int>(groups.size()) != d)
    throw std::invalid_argument("sd_projection_dilation: need one group per scale");
  int n = -1;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("sd_projection_dilation: empty group");
    for (const auto& p : g) {
      if (p.rows() != p.cols()) throw std::invalid_argument("sd_projection_dilation: square members required");
      if (n < 0) n = static_cast<int>(p.rows());
      if (p.rows() != n) throw std::invalid_argument("sd_projection_dilation: common space required");
      if (herm_defect(p) > tol.eig_tol)
        throw std::domain_error("sd_projection_dilation: member is not Hermitian");
      const auto ev = herm_eigenvalues(herm_part(p));
      if (ev.minCoeff() < -tol.eig_tol || ev.maxCoeff() > 1.0 + tol.eig_tol)
        throw std::domain_error("sd_projection_dilation: member is not a PSD contraction");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& p : g) sum += p;
    if (herm_eigenvalues(herm_part(sum)).maxCoeff() > 1.0 + tol.eig_tol)
      throw std::domain_error("sd_projection_dilation: group sum exceeds the identity");
  }

  const ScaleVector eq = shrink_to_harmonic_equality(a);
  const OrthogonalFamily fam = q_family(eq, tol);
  std::vector<ComplexVector> units;
  for (const auto& q : fam.q) units.push_back(unit_of_rank_one(q));

  bool projective = true;
  for (const auto& g : groups) {
    for (std::size_t k = 0; k < g.size() && projective; ++k) {
      if ((g[k] * g[k] - g[k]).norm() > 1e-10) projective = false;
      for (std::size_t l = k + 1; l < g.size() && projective; ++l)
        if ((g[k] * g[l]).norm() > 1e-10) projective = false;
    }
    if (!projective) break;
  }

  std::vector<ComplexMatrix> dil, inp;
  std::vector<int> sizes;
  ComplexMatrix w;

  if (projective) {
    // Projection groups need no extension: tensor directly against the
    // orthogonal family and spread the isometry across its unit vectors.
    w = ComplexMatrix::Zero(n * d, n);
    for (int i = 0; i < d; ++i)
      w += (1.0 / std::sqrt(eq.a[i])) * kron(cid(n), ComplexMatrix(units[i]));
    for (int i = 0; i < d; ++i) {
      sizes.push_back(static_cast<int>(groups[i].size()));
      for (const auto& p : groups[i]) {
        inp.push_back(p);
        dil.push_back(kron(p, fam.q[i]));
      }
    }
  } else {
    // General sub-POVM groups: pad to a common member count, dilate each
    // group to a projective family on one common extension, then tensor.
    std::size_t m = 0;
    for (const auto& g : groups) m = std::max(m, g.size());
    std::vector<NaimarkResult> nile;
    for (const auto& g : groups) {
      std::vector<ComplexMatrix> padded = g;
      padded.resize(m, ComplexMatrix::Zero(n, n));
      nile.push_back(naimark(padded, tol));
    }
    const int big = static_cast<int>(nile[0].projections[0].rows());
    w = ComplexMatrix::Zero(big * d, n);
    for (int i = 0; i < d; ++i)
      w += (1.0 / std::sqrt(eq.a[i])) * kron(nile[i].v.V, ComplexMatrix(units[i]));
    for (int i = 0; i < d; ++i) {
      sizes.push_back(static_cast<int>(groups[i].size()));
      for (std::size_t k = 0; k < groups[i].size(); ++k) {
        inp.push_back(groups[i][k]);
        dil.push_back(kron(nile[i].projections[k], fam.q[i]));
      }
    }
  }

  DilationCertificate cert;
  cert.construction = "sd_projection";
  const std::size_t members = dil.size();
  cert.input = MatrixTuple(std::move(inp), std::vector<bool>(members, true));
  cert.dilation = MatrixTuple(std::move(dil), std::vector<bool>(members, true));
  cert.isometry = Isometry(std::move(w));
  cert.group_sizes = std::move(sizes);
  cert.certified_scales = eq.a;
  if (eq.a != a.a)
    cert.note = "scales shrunk proportionally to harmonic equality before the orthogonal family";

  std::vector<double> per_member;
  for (int i = 0; i < d; ++i)
    per_member.insert(per_member.end(), cert.group_sizes[i], eq.a[i]);
  stamp_claim(cert, "isometry", 1e-10, {}, tol);
  stamp_claim(cert, "compression", 1e-9, {}, tol);
  stamp_claim(cert, "spectrum_in_scaled_set", 1e-9, per_member, tol);
  stamp_claim(cert, "commuting", 1e-9, {}, tol);
  stamp_claim(cert, "group_annihilation", 1e-9, {}, tol);
  stamp_claim(cert, "hermitian", 1e-10, {}, tol);
  stamp_claim(cert, "finite_dimensional", 1.0, {}, tol);
  return cert;
}

DilationCertificate symmetric_sd_dilation(const std::vector<MatrixTuple>& groups,
                                          const std::vector<ConvexBody>& bodies,
                                          const ScaleVector& a,
                                          const ToleranceConfig& tol) {
  const int d = a.d();
  if (static_cast<int>(groups.size()) != d || static_cast<int>(bodies.size()) != d)
    throw std::invalid_argument("symmetric_sd_dilation: need one group and one body per scale");
  check_common_size(groups);
  const int n = groups[0].n();
  for (int i = 0; i < d; ++i) {
    if (!groups[i].all_hermitian())
      throw std::invalid_argument("symmetric_sd_dilation: Hermitian groups required");
    if (bodies[i].complex_coords || bodies[i].dim != groups[i].d())
      throw std::invalid_argument("symmetric_sd_dilation: body dimension mismatch");
    if (!origin_symmetric(bodies[i]))
      throw std::domain_error("symmetric_sd_dilation: bodies must satisfy K = -K");
    check_group_spectrum(groups[i], bodies[i], tol, "symmetric_sd_dilation");
  }

  // Joint-diagonalize each group; the shared eigenprojections form a PVM per
  // group and the eigenvalue lists rebuild the members on the dilated side.
  std::vector<std::vector<ComplexMatrix>> pvms(d);
  std::vector<std::vector<RealVector>> lambdas(d);  // member j -> eigenvalue list
  for (int i = 0; i < d; ++i) {
    const auto js = joint_spectrum(groups[i], tol);
    lambdas[i].assign(groups[i].d(), RealVector(n));
    for (int k = 0; k < n; ++k) {
      const ComplexVector col = js.basis.col(k);
      pvms[i].push_back(col * col.adjoint());
      for (int j = 0; j < groups[i].d(); ++j) lambdas[i][j](k) = js.points[k](j).real();
    }
  }

  DilationCertificate sd = sd_projection_dilation(pvms, a, tol);
  const auto slices = group_slices(sd);

  std::vector<ComplexMatrix> dil, inp;
  std::vector<int> sizes;
  const int big = sd.dilation.n();
  for (int i = 0; i < d; ++i) {
    sizes.push_back(groups[i].d());
    for (int j = 0; j < groups[i].d(); ++j) {
      inp.push_back(groups[i][j]);
      ComplexMatrix m = ComplexMatrix::Zero(big, big);
      for (int k = 0; k < n; ++k)
        m += lambdas[i][j](k) * sd.dilation[slices[i].first + k];
      dil.push_back(std::move(m));
    }
  }

  DilationCertificate cert;
  cert.construction = "symmetric_sd";
  const std::size_t members = dil.size();
  cert.input = MatrixTuple(std::move(inp), std::vector<bool>(members, true));
  cert.dilation = MatrixTuple(std::move(dil), std::vector<bool>(members, true));
  cert.isometry = sd.isometry;
  cert.group_sizes = std::move(sizes);
  cert.bodies = bodies;
  cert.certified_scales = a.a;
  cert.note = sd.note;

  stamp_claim(cert, "isometry", 1e-10, {}, tol);
  stamp_claim(cert, "compression", 1e-8, {}, tol);
  stamp_claim(cert, "hermitian", 1e-9, {}, tol);
  stamp_claim(cert, "commuting", 1e-8, {}, tol);
  stamp_claim(cert, "group_spectrum_in_body", 1e-8, a.a, tol);
  stamp_claim(cert, "joint_spectrum_in_product", 1e-8, a.a, tol);
  return cert;
}

DilationCertificate orthogonal_family_dilation(const MatrixTuple& z,
                                               const ScaleVector& a,
                                               const ToleranceConfig& tol) {
  const int m = a.d();
  if (z.d() != m)
    throw std::invalid_argument("orthogonal_family_dilation: one scale per member required");
  if (!z.all_hermitian())
    throw std::invalid_argument("orthogonal_family_dilation: Hermitian tuple required");
  for (const auto& mat : z.mats)
    if (op_norm(mat) > 1.0 + std::max(tol.abs_tol, 1e-9))
      throw std::domain_error("orthogonal_family_dilation: members must be contractions");

  const ScaleVector eq = shrink_to_harmonic_equality(a);
  const OrthogonalFamily fam = q_family(eq, tol);
  const int n = z.n();

  std::vector<ComplexMatrix> dil;
  for (int k = 0; k < m; ++k) dil.push_back(kron(z[k], fam.q[k]));

  DilationCertificate cert;
  cert.construction = "orthogonal_family";
  cert.input = z;
  cert.dilation = MatrixTuple(std::move(dil), std::vector<bool>(m, true));
  cert.isometry = Isometry(kron(cid(n), basis_vector(m, 0)));
  cert.certified_scales = a.a;
  if (eq.a != a.a)
    cert.note = "scales shrunk proportionally to harmonic equality before the orthogonal family";

  stamp_claim(cert, "isometry", 1e-10, {}, tol);
  stamp_claim(cert, "compression", 1e-10, {}, tol);
  stamp_claim(cert, "hermitian", 1e-10, {}, tol);
  stamp_claim(cert, "pairwise_products_zero", 1e-10, {}, tol);
  stamp_claim(cert, "norm_bounds", 1e-8, a.a, tol);
  return cert;
}

DilationCertificate contraction_normal_dilation(const MatrixTuple& t,
                                                const ToleranceConfig& tol) {
  const int d = t.d();
  const int n = t.n();
  for (const auto& m : t.mats)
    if (op_norm(m) > 1.0 + std::max(tol.abs_tol, 1e-9))
      throw std::domain_error("contraction_normal_dilation: members must be contractions");

  if (d == 1) {
    DilationCertificate cert = halmos(t[0], 1.0, tol);
    cert.construction = "contraction_normal";
    cert.certified_scale = 1.0;
    cert.input = t;
    stamp_claim(cert, "normal", 1e-10, {}, tol);
    stamp_claim(cert, "norm_bounds", 1e-8, {1.0}, tol);
    return cert;
  }

  // Unitary dilations of the members, then the defect-killing average.
  std::vector<ComplexMatrix> us;
  for (int k = 0; k < d; ++k) us.push_back(halmos(t[k], 1.0, tol).dilation[0]);
  const int n2 = 2 * n;

  std::vector<ComplexMatrix> ss;
  for (int j = 0; j < d; ++j) {
    MatrixAccumulator acc(n2, n2);
    for (int k = 0; k < d; ++k) {
      const double ph = 2.0 * std::numbers::pi * double(j) * double(k) / double(d);
      acc.add(std::exp(Complex(0.0, ph)) * us[k]);
    }
    ss.push_back(acc.value() / double(d));
  }

  // Hermitian split, one orthogonal-family slot per half.
  const OrthogonalFamily fam = q_family(ScaleVector(std::vector<double>(2 * d, 2.0 * d)), tol);
  std::vector<ComplexMatrix> mm;
  for (int j = 0; j < d; ++j) {
    const ComplexMatrix xj = herm_part(ss[j]);
    const ComplexMatrix yj = antiherm_part_over_i(ss[j]);
    mm.push_back(kron(xj, fam.q[2 * j]) + Complex(0.0, 1.0) * kron(yj, fam.q[2 * j + 1]));
  }

  std::vector<ComplexMatrix> dil;
  for (int j = 0; j < d; ++j) {
    MatrixAccumulator acc(n2 * 2 * d, n2 * 2 * d);
    for (int k = 0; k < d; ++k) {
      const double ph = -2.0 * std::numbers::pi * double(j) * double(k) / double(d);
      acc.add(std::exp(Complex(0.0, ph)) * mm[k]);
    }
    dil.push_back(acc.value());
  }

  const ComplexMatrix v1 = first_block_isometry(n2, n);
  const ComplexMatrix v2 = kron(cid(n2), basis_vector(2 * d, 0));

  DilationCertificate cert;
  cert.construction = "contraction_normal";
  cert.certified_scale = 2.0 * d;
  cert.input = t;
  cert.dilation = MatrixTuple(std::move(dil), std::vector<bool>(d, false));
  cert.isometry = Isometry(v2 * v1);
  cert.intermediates.emplace("S", MatrixTuple(ss, std::vector<bool>(d, false)));
  cert.intermediates.emplace("U", MatrixTuple(us, std::vector<bool>(d, false)));
  cert.reported["external_scale_bound"] = std::sqrt(2.0 * d);
  cert.note =
      "certified scale is 2d; the sqrt(2d) figure is an external bound this "
      "construction does not certify";
  if (d == 2)
    cert.reported["witness_norm_T1_plus_T2_adj"] = op_norm(t[0] + t[1].adjoint());

  stamp_claim(cert, "averaging_identity", 1e-10, {}, tol);
  stamp_claim(cert, "dft_inversion", 1e-10, {}, tol);
  stamp_claim(cert, "isometry", 1e-10, {}, tol);
  stamp_claim(cert, "compression", 1e-9, {}, tol);
  stamp_claim(cert, "commuting", 1e-8, {}, tol);
  stamp_claim(cert, "normal", 1e-8, {}, tol);
  stamp_claim(cert, "norm_bounds", 1e-8, std::vector<double>(d, 2.0 * d), tol);
  return cert;
}

VerifyReport verify_certificate(const DilationCertificate& cert,
                                const ToleranceConfig& tol) {
  VerifyReport rep;
  if (cert.claims.empty()) {
    rep.ok = false;
    rep.message = "certificate carries no claims";
    return rep;
  }
  rep.ok = true;
  for (const auto& c : cert.claims) {
    Claim out = c;
    try {
      out.residual = measure_claim(cert, c, tol);
    } catch (const std::exception& e) {
      rep.ok = false;
      if (rep.message.empty()) rep.message = std::string("claim ") + c.name + ": " + e.what();
      out.residual = kInf;
    }
    if (out.residual > c.bound && rep.ok) {
      rep.ok = false;
      std::ostringstream os;
      os << "claim " << c.name << ": recomputed residual " << out.residual
         << " exceeds bound " << c.bound;
      rep.message = os.str();
    } else if (out.residual > c.bound) {
      rep.ok = false;
    }
    rep.recomputed.push_back(std::move(out));
  }
  if (rep.ok) rep.message = "all claims re-verified";
  return rep;
}

}  // namespace mct
