#include "mct/matrix_convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mct {

namespace {

double lambda_max(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

ComplexMatrix direction_combination(const std::vector<ComplexMatrix>& h,
                                    const RealVector& c) {
  ComplexMatrix a = ComplexMatrix::Zero(h[0].rows(), h[0].cols());
  for (std::size_t i = 0; i < h.size(); ++i) a += c(static_cast<int>(i)) * h[i];
  return a;
}

double tuple_scale(const MatrixTuple& t) {
  double s = 1.0;
  for (const auto& m : t.mats) s = std::max(s, op_norm(m));
  return s;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non_member";
    case Verdict::member_sampled: return "member_sampled";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::vector<ComplexMatrix> hermitian_coordinates(const MatrixTuple& t,
                                                 bool* any_complex) {
  const bool cx = !t.all_hermitian();
  if (any_complex) *any_complex = cx;
  if (!cx) return t.mats;
  std::vector<ComplexMatrix> h;
  h.reserve(2 * t.mats.size());
  for (std::size_t j = 0; j < t.mats.size(); ++j) {
    if (t.hermitian[j]) {
      h.push_back(t.mats[j]);
      continue;
    }
    h.push_back(herm_part(t.mats[j]));
    h.push_back(antiherm_part_over_i(t.mats[j]));
  }
  return h;
}

MembershipVerdict wmax_membership(const MatrixTuple& x, const ConvexBody& k,
                                  int directions, const ToleranceConfig& tol) {
  bool cx = false;
  auto h = hermitian_coordinates(x, &cx);
  if (static_cast<int>(h.size()) != k.dim) {
    std::ostringstream os;
    os << "wmax_membership: tuple provides " << h.size()
       << " real coordinates but body has dimension " << k.dim;
    throw std::invalid_argument(os.str());
  }

  MembershipVerdict out;
  if (has_exact_facets(k)) {
    double margin = std::numeric_limits<double>::infinity();
    RealVector worst;
    for (const auto& f : body_facets(k)) {
      const double nn = f.a.norm();
      RealVector a = f.a / nn;
      const double m = f.b / nn - lambda_max(direction_combination(h, a));
      if (m < margin) {
        margin = m;
        worst = a;
      }
    }
    out.margin = margin;
    if (margin >= -tol.abs_tol) {
      out.verdict = Verdict::member;
      out.note = "exact facet check";
    } else {
      out.verdict = Verdict::non_member;
      out.witness = worst;
      out.note = "violated facet inequality";
    }
    return out;
  }

  if (directions < 1)
    throw std::invalid_argument("wmax_membership: body has no exact facets; need directions >= 1");
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& c : direction_set(k.dim, directions, tol.seed)) {
    const double hk = support_function(k, c);
    const double m = hk - lambda_max(direction_combination(h, c));
    if (m < margin) margin = m;
    if (m < -tol.abs_tol) {
      out.verdict = Verdict::non_member;
      out.witness = c;
      out.margin = m;
      out.note = "violated sampled support inequality";
      return out;
    }
  }
  out.verdict = Verdict::member_sampled;
  out.margin = margin;
  out.note = "all sampled support inequalities hold; not a proof of membership";
  return out;
}

Level1Range level1_range(const MatrixTuple& t, int directions,
                         const ToleranceConfig& tol) {
  if (directions < 1) throw std::invalid_argument("level1_range: directions >= 1 required");
  bool cx = false;
  auto h = hermitian_coordinates(t, &cx);
  const int dim = static_cast<int>(h.size());

  std::vector<Facet> outer_facets;
  std::vector<RealVector> inner_pts;
  outer_facets.reserve(directions);
  inner_pts.reserve(directions);
  for (const auto& c : direction_set(dim, directions, tol.seed)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(direction_combination(h, c));
    const int top = static_cast<int>(es.eigenvalues().size()) - 1;
    outer_facets.push_back({c, es.eigenvalues()(top)});
    const ComplexVector v = es.eigenvectors().col(top);
    RealVector p(dim);
    for (int i = 0; i < dim; ++i) p(i) = std::real(v.dot(h[i] * v));
    inner_pts.push_back(p);
  }

  Level1Range out;
  out.complex = cx;
  out.outer = make_h_polytope(dim, std::move(outer_facets));
  out.outer.complex_coords = cx;
  // The expectation points are kept as generators without extreme-point
  // pruning; support and membership queries are unaffected.
  out.inner = make_v_polytope(std::move(inner_pts), /*already_extreme=*/true);
  out.inner.complex_coords = cx;
  return out;
}

JointSpectrum joint_spectrum(const MatrixTuple& nt, const ToleranceConfig& tol) {
  const int n = nt.n();
  const int d = nt.d();
  const double scale = tuple_scale(nt);
  const double budget = tol.eig_tol * scale * scale;

  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    const ComplexMatrix& a = nt[i];
    worst = std::max(worst, (a * a.adjoint() - a.adjoint() * a).norm());
    for (int j = i + 1; j < d; ++j)
      worst = std::max(worst, (a * nt[j] - nt[j] * a).norm());
  }
  if (worst > budget) {
    std::ostringstream os;
    os << "joint_spectrum: tuple is not commuting normal within tolerance"
       << " (residual " << worst << ", budget " << budget << ")";
    throw std::domain_error(os.str());
  }

  std::vector<ComplexMatrix> h;
  for (const auto& m : nt.mats) {
    h.push_back(herm_part(m));
    h.push_back(antiherm_part_over_i(m));
  }
  Rng rng(tol.seed == 0 ? 0x9e3779b97f4a7c15ull : tol.seed);
  auto combo = [&] {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (const auto& m : h) a += rng.normal() * m;
    return a;
  };

  const ComplexMatrix a1 = combo();
  const ComplexMatrix a2 = combo();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a1);
  ComplexMatrix basis = es.eigenvectors();
  const RealVector w = es.eigenvalues();
  const double gap = tol.eig_tol * std::max(1.0, w.cwiseAbs().maxCoeff());

  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && w(j) - w(j - 1) <= gap) ++j;
    if (j - i > 1) {
      // collided cluster: refine with an independent combination restricted
      // to the (approximately invariant) cluster subspace
      const ComplexMatrix block = basis.middleCols(i, j - i);
      ComplexMatrix b = block.adjoint() * a2 * block;
      b = Complex(0.5, 0.0) * (b + b.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es2(b);
      basis.middleCols(i, j - i) = block * es2.eigenvectors();
    }
    i = j;
  }

  JointSpectrum out;
  out.basis = basis;
  out.points.resize(n, ComplexVector(d));
  for (int k = 0; k < d; ++k) {
    const ComplexMatrix dk = basis.adjoint() * nt[k] * basis;
    for (int p = 0; p < n; ++p) {
      out.points[p](k) = dk(p, p);
      for (int q = 0; q < n; ++q)
        if (q != p) out.diag_residual = std::max(out.diag_residual, std::abs(dk(p, q)));
    }
  }
  return out;
}

ConvexBody matrix_range_of_normal(const MatrixTuple& nt, const ToleranceConfig& tol) {
  const auto js = joint_spectrum(nt, tol);
  const double scale = tuple_scale(nt);
  bool cx = !nt.all_hermitian();
  if (!cx)
    for (const auto& p : js.points)
      if (p.imag().cwiseAbs().maxCoeff() > 1e-8 * scale) cx = true;

  std::vector<RealVector> pts;
  for (const auto& p : js.points) {
    RealVector r(cx ? 2 * nt.d() : nt.d());
    for (int k = 0; k < nt.d(); ++k) {
      if (cx) {
        r(2 * k) = p(k).real();
        r(2 * k + 1) = p(k).imag();
      } else {
        r(k) = p(k).real();
      }
    }
    bool dup = false;
    for (const auto& q : pts)
      if ((q - r).lpNorm<Eigen::Infinity>() < 1e-9 * scale) { dup = true; break; }
    if (!dup) pts.push_back(r);
  }
  ConvexBody body = pts.size() <= 64 ? make_v_polytope(pts)
                                     : make_v_polytope(pts, /*already_extreme=*/true);
  body.complex_coords = cx;
  body.label = "matrix_range";
  return body;
}

NaimarkResult naimark(const std::vector<ComplexMatrix>& p, const ToleranceConfig& tol) {
  if (p.empty()) throw std::invalid_argument("naimark: empty family");
  const int n = static_cast<int>(p[0].rows());
  const int k = static_cast<int>(p.size());
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& m : p) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("naimark: members must be square and same size");
    if (herm_defect(m) > tol.eig_tol)
      throw std::domain_error("naimark: member is not Hermitian within tolerance");
    sum += m;
  }
  if (lambda_max(herm_part(sum)) > 1.0 + tol.eig_tol)
    throw std::domain_error("naimark: sum exceeds the identity beyond tolerance");

  const ComplexMatrix complement = ComplexMatrix::Identity(n, n) - sum;
  ComplexMatrix v((k + 1) * n, n);
  for (int i = 0; i < k; ++i)
    v.middleRows(i * n, n) = psd_sqrt(herm_part(p[i]), tol);
  v.middleRows(k * n, n) = psd_sqrt(herm_part(complement), tol);

  NaimarkResult out{Isometry(v), {}};
  out.projections.reserve(k + 1);
  for (int i = 0; i <= k; ++i) {
    ComplexMatrix pi = ComplexMatrix::Zero((k + 1) * n, (k + 1) * n);
    pi.block(i * n, i * n, n, n) = ComplexMatrix::Identity(n, n);
    out.projections.push_back(std::move(pi));
  }
  return out;
}

DilationCertificate wmin_certificate_simplex(const MatrixTuple& x,
                                             const ConvexBody& k,
                                             const ToleranceConfig& tol) {
  if (!x.all_hermitian())
    throw std::invalid_argument("wmin_certificate_simplex: Hermitian tuple required");
  if (!has_vertex_list(k))
    throw std::invalid_argument("wmin_certificate_simplex: vertex list required");
  const auto verts = body_vertices(k);
  const int g = k.dim;
  if (static_cast<int>(verts.size()) != g + 1)
    throw std::invalid_argument("wmin_certificate_simplex: K must be a simplex (dim+1 vertices)");
  if (x.d() != g)
    throw std::invalid_argument("wmin_certificate_simplex: tuple length must match dim");

  const auto verdict = wmax_membership(x, k, 0, tol);
  if (verdict.verdict != Verdict::member) {
    std::ostringstream os;
    os << "wmin_certificate_simplex: level-1 range escapes K (margin " << verdict.margin << ")";
    throw std::domain_error(os.str());
  }

  const int n = x.n();
  Eigen::MatrixXd b(g, g);
  for (int i = 1; i <= g; ++i) b.col(i - 1) = verts[i] - verts[0];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
  if (!lu.isInvertible())
    throw std::domain_error("wmin_certificate_simplex: degenerate simplex");
  const Eigen::MatrixXd binv = lu.inverse();

  // Barycentric coordinates of the tuple relative to the simplex: PSD with
  // sum <= I exactly when the level-1 range sits inside K.
  std::vector<ComplexMatrix> y(g, ComplexMatrix::Zero(n, n));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      y[i] += binv(i, j) * (x[j] - verts[0](j) * ComplexMatrix::Identity(n, n));

  auto nm = naimark(y, tol);
  std::vector<ComplexMatrix> dil(g);
  const int big = static_cast<int>(nm.projections[0].rows());
  for (int j = 0; j < g; ++j) {
    ComplexMatrix m = ComplexMatrix::Zero(big, big);
    for (int i = 0; i < g; ++i) m += verts[i + 1](j) * nm.projections[i];
    m += verts[0](j) * nm.projections[g];
    dil[j] = std::move(m);
  }

  DilationCertificate cert;
  cert.construction = "wmin_simplex";
  cert.input = x;
  cert.dilation = MatrixTuple(dil, std::vector<bool>(g, true));
  cert.isometry = nm.v;
  cert.bodies = {k};
  cert.group_sizes = {g};
  cert.certified_scale = 1.0;

  auto add = [&](const std::string& name, double residual, double bound) {
    cert.claims.push_back({name, residual, bound, {}});
  };
  add("isometry", cert.isometry.defect(), 1e-8);
  double comp = 0.0;
  for (int j = 0; j < g; ++j)
    comp = std::max(comp, (compress(cert.isometry, cert.dilation[j]) - x[j]).norm());
  add("compression", comp, 1e-8);
  double comm = 0.0, herm = 0.0;
  for (int i = 0; i < g; ++i) {
    herm = std::max(herm, herm_defect(cert.dilation[i]));
    for (int j = i + 1; j < g; ++j)
      comm = std::max(comm, (cert.dilation[i] * cert.dilation[j] -
                             cert.dilation[j] * cert.dilation[i]).norm());
  }
  add("commuting", comm, 1e-8);
  add("hermitian", herm, 1e-8);
  double spec = 0.0;
  for (const auto& pt : joint_spectrum(cert.dilation, tol).points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : verts) {
      double dd = 0.0;
      for (int j = 0; j < g; ++j) dd += std::norm(pt(j) - Complex(w(j), 0.0));
      best = std::min(best, std::sqrt(dd));
    }
    spec = std::max(spec, best);
  }
  add("spectrum_in_vertex_set", spec, 1e-8);
  return cert;
}

MatrixTuple tuple_affine_image(const AffineMap& f, const MatrixTuple& x) {
  if (!x.all_hermitian())
    throw std::invalid_argument("tuple_affine_image: Hermitian tuple required");
  if (f.A.cols() != x.d() || f.b.size() != f.A.rows())
    throw std::invalid_argument("tuple_affine_image: shape mismatch");
  const int n = x.n();
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < f.A.rows(); ++i) {
    ComplexMatrix m = f.b(i) * ComplexMatrix::Identity(n, n);
    for (int j = 0; j < x.d(); ++j) m += f.A(i, j) * x[j];
    out.push_back(std::move(m));
  }
  return MatrixTuple(out, std::vector<bool>(out.size(), true));
}

}  // namespace mct
