#include "mct/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mct/anticommuting.hpp"
#include "mct/matrix_convex.hpp"

namespace mct {

namespace {

ComplexMatrix cid(int n) { return ComplexMatrix::Identity(n, n); }

double tuple_scale(const MatrixTuple& t) {
  double s = 1.0;
  for (const auto& m : t.mats) s = std::max(s, op_norm(m));
  return s;
}

std::vector<ComplexMatrix> hermitian_generators(const MatrixTuple& t) {
  std::vector<ComplexMatrix> gens;
  for (int j = 0; j < t.d(); ++j) {
    if (t.hermitian[j]) {
      gens.push_back(herm_part(t[j]));
    } else {
      gens.push_back(herm_part(t[j]));
      gens.push_back(antiherm_part_over_i(t[j]));
    }
  }
  return gens;
}

// Basis of { M : [M, G] = 0 for all G }, via the nullspace of the PSD form
// sum_G ||[M, G]||_F^2 on vec space. For Hermitian G the Gram matrix has the
// closed form I (x) G^2 + conj(G)^2 (x) I - 2 conj(G) (x) G.
std::vector<ComplexMatrix> commutant_basis(const std::vector<ComplexMatrix>& gens,
                                           int n, const ToleranceConfig& tol) {
  ComplexMatrix q = ComplexMatrix::Zero(n * n, n * n);
  double smax = 1.0;
  for (const auto& g : gens) {
    smax = std::max(smax, op_norm(g));
    const ComplexMatrix g2 = g * g;
    q += kron(cid(n), g2) + kron(g2.conjugate(), cid(n)) -
         2.0 * kron(g.conjugate(), g);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q);
  const double thresh =
      static_cast<double>(std::max<std::size_t>(1, gens.size())) *
      (tol.eig_tol * smax) * (tol.eig_tol * smax);
  std::vector<ComplexMatrix> basis;
  for (int i = 0; i < n * n; ++i) {
    if (es.eigenvalues()(i) > thresh) break;
    ComplexVector v = es.eigenvectors().col(i);
    basis.push_back(Eigen::Map<const ComplexMatrix>(v.data(), n, n));
  }
  return basis;
}

// Eigenvalue clusters of a Hermitian matrix, split at gaps above gamma.
// Returns the per-cluster eigenvector isometries.
std::vector<ComplexMatrix> eigen_clusters(const ComplexMatrix& h, double gamma) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector& w = es.eigenvalues();
  const int n = static_cast<int>(w.size());
  std::vector<ComplexMatrix> out;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || w(i) - w(i - 1) > gamma) {
      out.push_back(es.eigenvectors().middleCols(start, i - start));
      start = i;
    }
  }
  return out;
}

double off_block_residual(const std::vector<ComplexMatrix>& gens,
                          const ComplexMatrix& u) {
  double worst = 0.0;
  for (const auto& g : gens) {
    ComplexMatrix gu = g * u;
    worst = std::max(worst, (gu - u * (u.adjoint() * gu)).norm());
  }
  return worst;
}

struct SplitOutcome {
  std::vector<ComplexMatrix> blocks;  // isometries, or empty when no split
};

// One attempt at splitting the space along a random Hermitian commutant
// element. Clusters that remain coupled through some generator are merged
// back before accepting.
SplitOutcome try_split(const std::vector<ComplexMatrix>& gens,
                       const std::vector<ComplexMatrix>& basis, int n,
                       double smax, Rng& rng, const ToleranceConfig& tol) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& b : basis) m += rng.cnormal() * b;
  ComplexMatrix h = herm_part(m);
  if (h.norm() < 0.25 * m.norm()) h = antiherm_part_over_i(m);
  h -= (h.trace() / static_cast<double>(n)) * cid(n);
  const double hnorm = op_norm(h);
  if (hnorm < 1e-10) return {};

  const double gamma = std::max(tol.eig_tol * std::max(1.0, hnorm), 1e-9 * hnorm);
  std::vector<ComplexMatrix> clusters = eigen_clusters(h, gamma);
  if (clusters.size() < 2) return {};

  // Merge clusters a generator still couples.
  const double couple_tol = 10.0 * std::max(tol.eig_tol, 1e-7) * smax;
  const int c = static_cast<int>(clusters.size());
  std::vector<int> parent(c);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      double coupling = 0.0;
      for (const auto& g : gens)
        coupling = std::max(coupling,
                            (clusters[i].adjoint() * g * clusters[j]).norm());
      if (coupling > couple_tol) parent[find(i)] = find(j);
    }
  std::vector<std::vector<int>> comps(c);
  for (int i = 0; i < c; ++i) comps[find(i)].push_back(i);

  SplitOutcome out;
  for (const auto& comp : comps) {
    if (comp.empty()) continue;
    int cols = 0;
    for (int i : comp) cols += static_cast<int>(clusters[i].cols());
    ComplexMatrix u(n, cols);
    int at = 0;
    for (int i : comp) {
      u.middleCols(at, clusters[i].cols()) = clusters[i];
      at += static_cast<int>(clusters[i].cols());
    }
    out.blocks.push_back(std::move(u));
  }
  if (out.blocks.size() < 2) return {};
  for (const auto& u : out.blocks)
    if (off_block_residual(gens, u) > couple_tol) return {};
  return out;
}

void decompose_rec(const ComplexMatrix& embed, const MatrixTuple& t, Rng& rng,
                   const ToleranceConfig& tol,
                   std::vector<std::pair<Isometry, MatrixTuple>>& out) {
  const int n = t.n();
  if (n == 1) {
    out.emplace_back(Isometry(embed, tol), t);
    return;
  }
  std::vector<ComplexMatrix> gens = hermitian_generators(t);
  std::vector<ComplexMatrix> basis = commutant_basis(gens, n, tol);
  if (basis.size() <= 1) {
    out.emplace_back(Isometry(embed, tol), t);
    return;
  }
  double smax = 1.0;
  for (const auto& g : gens) smax = std::max(smax, op_norm(g));
  for (int attempt = 0; attempt < 8; ++attempt) {
    SplitOutcome split = try_split(gens, basis, n, smax, rng, tol);
    if (split.blocks.empty()) continue;
    for (const auto& u : split.blocks) {
      Isometry iso(u, tol);
      decompose_rec(embed * u, compress(iso, t), rng, tol, out);
    }
    return;
  }
  // Commutant is nontrivial but no clean split materialized; report the
  // block whole rather than guess.
  out.emplace_back(Isometry(embed, tol), t);
}

RealVector facet_unit(const Facet& f) {
  const double n = f.a.norm();
  if (n < 1e-14) throw std::invalid_argument("degenerate facet normal");
  return f.a / n;
}

// Support of the level-1 range in direction u: lambda_max of u . T.
double level1_support(const MatrixTuple& t, const RealVector& u) {
  ComplexMatrix s = ComplexMatrix::Zero(t.n(), t.n());
  for (int j = 0; j < t.d(); ++j) s += Complex(u(j), 0.0) * t[j];
  const RealVector w = herm_eigenvalues(herm_part(s));
  return w(w.size() - 1);
}

void require_hermitian_tuple(const MatrixTuple& t, const char* who) {
  for (int j = 0; j < t.d(); ++j)
    if (herm_defect(t[j]) > 1e-8 * std::max(1.0, t[j].norm()))
      throw std::invalid_argument(std::string(who) +
                                  ": Hermitian tuple required");
}

}  // namespace

std::vector<ComplexVector> joint_eigenvector_hunt(const MatrixTuple& t,
                                                  const ComplexVector& lambda,
                                                  const ToleranceConfig& tol) {
  const int d = t.d();
  const int n = t.n();
  if (static_cast<int>(lambda.size()) != d)
    throw std::invalid_argument("joint_eigenvector_hunt: one coordinate per member");
  ComplexMatrix stack(d * n, n);
  double scale = 1.0;
  for (int j = 0; j < d; ++j) {
    stack.middleRows(j * n, n) = t[j] - lambda(j) * cid(n);
    scale = std::max(scale, op_norm(t[j]) + std::abs(lambda(j)));
  }
  Eigen::BDCSVD<ComplexMatrix> svd(stack, Eigen::ComputeThinV);
  const double thresh = tol.eig_tol * scale;
  std::vector<ComplexVector> out;
  const int k = static_cast<int>(svd.singularValues().size());
  for (int i = k - 1; i >= 0; --i) {
    if (svd.singularValues()(i) > thresh) break;
    out.push_back(svd.matrixV().col(i));
  }
  return out;
}

std::vector<std::pair<Isometry, MatrixTuple>> reducing_decomposition(
    const MatrixTuple& t, const ToleranceConfig& tol) {
  const int n = t.n();
  if (t.d() < 1)
    throw std::invalid_argument("reducing_decomposition: empty tuple");
  if (n > 512)
    throw std::invalid_argument("reducing_decomposition: n <= 512 required");
  if (n > 64)
    throw std::invalid_argument(
        "reducing_decomposition: dense commutant solve is not practical above "
        "n = 64 in this build");
  Rng rng(tol.seed);
  std::vector<std::pair<Isometry, MatrixTuple>> out;
  decompose_rec(cid(n), t, rng, tol, out);
  return out;
}

std::string verdict_name(MinimalityReport::Verdict v) {
  switch (v) {
    case MinimalityReport::Verdict::minimal_diagonal:
      return "minimal_diagonal";
    case MinimalityReport::Verdict::not_minimal:
      return "not_minimal";
    case MinimalityReport::Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

MinimalityReport minimality_report(const MatrixTuple& t, const ConvexBody& k,
                                   const ToleranceConfig& tol) {
  const int d = t.d();
  const int n = t.n();
  if (k.dim != d)
    throw std::invalid_argument("minimality_report: body dimension mismatch");
  require_hermitian_tuple(t, "minimality_report");
  const double scale = tuple_scale(t);

  MinimalityReport rep;
  double margin = 1e300;
  for (const Facet& f : body_facets(k)) {
    const RealVector u = facet_unit(f);
    margin = std::min(margin, f.b / f.a.norm() - level1_support(t, u));
  }
  rep.w1_margin = margin;
  rep.w1_in_k = margin >= -std::max(tol.abs_tol, 1e-8 * scale);
  if (!rep.w1_in_k)
    throw std::invalid_argument(
        "minimality_report: the tuple's level-1 range is not inside the body");

  const std::vector<RealVector> vertices = body_vertices(k);
  std::vector<ComplexVector> flat;  // all vertex eigenvectors in order
  bool all_single = vertices.size() > 0;
  bool any_empty = false;
  for (const RealVector& v : vertices) {
    ComplexVector lam = v.cast<Complex>();
    auto basis = joint_eigenvector_hunt(t, lam, tol);
    if (basis.size() != 1) all_single = false;
    if (basis.empty()) any_empty = true;
    for (const auto& b : basis) flat.push_back(b);
    rep.vertex_eigenvectors.push_back(std::move(basis));
  }

  auto blocks = reducing_decomposition(t, tol);
  for (const auto& [iso, sub] : blocks)
    rep.normal_summand_dims.push_back(sub.n());

  if (all_single && static_cast<int>(flat.size()) == n) {
    bool orth = true;
    for (std::size_t i = 0; i < flat.size() && orth; ++i)
      for (std::size_t j = i + 1; j < flat.size() && orth; ++j)
        if (std::abs(flat[i].dot(flat[j])) > 1e-6) orth = false;
    if (orth) {
      rep.verdict = MinimalityReport::Verdict::minimal_diagonal;
      rep.notes =
          "vertex eigenvectors are one-dimensional, orthogonal, and span: the "
          "tuple is diagonal with one eigenvalue per vertex";
      return rep;
    }
  }

  // Redundancy test: can one reducing summand be dropped without shrinking
  // the level-1 range at the sampled directions?
  if (blocks.size() >= 2) {
    std::vector<RealVector> dirs;
    for (const Facet& f : body_facets(k)) dirs.push_back(facet_unit(f));
    for (const auto& u : direction_set(d, 96, tol.seed)) dirs.push_back(u);
    std::vector<std::vector<double>> sup(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (const auto& u : dirs)
        sup[b].push_back(level1_support(blocks[b].second, u));
    const double eq_tol = 1e-7 * scale;
    for (std::size_t drop = 0; drop < blocks.size(); ++drop) {
      bool same = true;
      for (std::size_t i = 0; i < dirs.size() && same; ++i) {
        double full = -1e300, rest = -1e300;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
          full = std::max(full, sup[b][i]);
          if (b != drop) rest = std::max(rest, sup[b][i]);
        }
        if (rest < full - eq_tol) same = false;
      }
      if (same) {
        rep.verdict = MinimalityReport::Verdict::not_minimal;
        std::ostringstream os;
        os << "reducing summand " << drop << " (dim "
           << rep.normal_summand_dims[drop]
           << ") can be dropped without changing the level-1 range at the "
              "sampled directions";
        rep.notes = os.str();
        return rep;
      }
    }
  }

  rep.verdict = MinimalityReport::Verdict::inconclusive;
  std::ostringstream os;
  if (any_empty) {
    os << "vertices without joint eigenvectors:";
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (rep.vertex_eigenvectors[i].empty()) os << " #" << i;
    os << "; infinite-dimensional minimality not decidable at truncation. ";
  }
  os << "only compression sampling is implemented; a stronger fully-compressed "
        "diagnostic is not.";
  rep.notes = os.str();
  return rep;
}

MatrixTuple minimal_normal_tuple(const ConvexBody& k) {
  if (k.complex_coords)
    throw std::invalid_argument(
        "minimal_normal_tuple: real-coordinate polytope required");
  const std::vector<RealVector> vertices = body_vertices(k);
  const int v = static_cast<int>(vertices.size());
  if (v == 0) throw std::invalid_argument("minimal_normal_tuple: no vertices");
  std::vector<ComplexMatrix> mats(k.dim, ComplexMatrix::Zero(v, v));
  for (int i = 0; i < k.dim; ++i)
    for (int j = 0; j < v; ++j) mats[i](j, j) = vertices[j](i);
  return MatrixTuple(std::move(mats), std::vector<bool>(k.dim, true));
}

MatrixTuple simplex_surprise_tuple(double p, int m) {
  if (p < 1.0 - 1e-12)
    throw std::invalid_argument("simplex_surprise_tuple: p >= 1 required");
  if (m < 2) throw std::invalid_argument("simplex_surprise_tuple: m >= 2 required");
  const int n = m + 2;

  // First basis: coordinates. Second basis: Gram-Schmidt extension of the
  // geometric unit vector, chosen so the two share no eigenvector.
  ComplexVector v1(m);
  for (int i = 0; i < m; ++i) v1(i) = std::pow(2.0, -0.5 * (i + 1));
  v1.normalize();
  ComplexMatrix basis(m, m);
  basis.col(0) = v1;
  int have = 1;
  for (int cand = 0; cand < m && have < m; ++cand) {
    ComplexVector w = ComplexVector::Zero(m);
    w(cand) = 1.0;
    for (int j = 0; j < have; ++j) w -= basis.col(j).dot(w) * basis.col(j);
    if (w.norm() > 1e-8) {
      basis.col(have++) = w.normalized();
    }
  }
  if (have != m)
    throw std::runtime_error("simplex_surprise_tuple: basis extension failed");

  ComplexMatrix t1 = ComplexMatrix::Zero(n, n);
  ComplexMatrix t2 = ComplexMatrix::Zero(n, n);
  t1(0, 0) = 1.0;
  t2(1, 1) = 1.0;
  for (int k = 1; k <= m; ++k) {
    const double w = 1.0 / (3.0 * std::pow(static_cast<double>(k), p));
    t1(k + 1, k + 1) = w;
    t2.bottomRightCorner(m, m) +=
        w * basis.col(k - 1) * basis.col(k - 1).adjoint();
  }
  return MatrixTuple({std::move(t1), std::move(t2)}, std::vector<bool>{true, true});
}

MatrixTuple staircase_normal_tuple(const ConvexBody& k, int m) {
  if (m < 1) throw std::invalid_argument("staircase_normal_tuple: m >= 1 required");
  if (k.complex_coords)
    throw std::invalid_argument(
        "staircase_normal_tuple: real-coordinate polytope required");
  const std::vector<RealVector> vertices = body_vertices(k);
  bool has_zero = false;
  std::vector<RealVector> rest;
  for (const auto& v : vertices) {
    if (v.norm() <= 1e-12)
      has_zero = true;
    else
      rest.push_back(v);
  }
  if (!has_zero)
    throw std::invalid_argument("staircase_normal_tuple: 0 must be a vertex");
  if (rest.empty())
    throw std::invalid_argument("staircase_normal_tuple: degenerate body");

  std::vector<RealVector> eigs(rest.begin(), rest.end() - 1);
  const RealVector last = rest.back();
  for (int j = 1; j <= m; ++j) eigs.push_back(last / static_cast<double>(j));

  const int n = static_cast<int>(eigs.size());
  std::vector<ComplexMatrix> mats(k.dim, ComplexMatrix::Zero(n, n));
  for (int i = 0; i < k.dim; ++i)
    for (int j = 0; j < n; ++j) mats[i](j, j) = eigs[j](i);
  return MatrixTuple(std::move(mats), std::vector<bool>(k.dim, true));
}

namespace {

struct Disk {
  RealVector center;
  double radius = 0.0;
};

std::vector<Disk> covering_disks(const ConvexBody& k, int k_max) {
  if (k.dim != 2)
    throw std::invalid_argument("ball_covering_tuple: 2-D polygon required");
  if (k_max < 1)
    throw std::invalid_argument("ball_covering_tuple: k_max >= 1 required");
  const std::vector<RealVector> vertices = body_vertices(k);
  if (vertices.size() < 3)
    throw std::invalid_argument("ball_covering_tuple: degenerate polygon");
  RealVector centroid = RealVector::Zero(2);
  for (const auto& v : vertices) centroid += v;
  centroid /= static_cast<double>(vertices.size());

  std::vector<Facet> facets = body_facets(k);
  auto boundary_dist = [&](const RealVector& x) {
    double best = 1e300;
    for (const Facet& f : facets)
      best = std::min(best, (f.b - f.a.dot(x)) / f.a.norm());
    return std::max(0.0, best);
  };
  if (boundary_dist(centroid) < 1e-10)
    throw std::invalid_argument("ball_covering_tuple: degenerate polygon");

  std::vector<Disk> disks;
  for (const auto& w : vertices)
    for (int j = 1; j <= k_max; ++j) {
      const double step = std::pow(2.0, -static_cast<double>(j));
      RealVector x = centroid + (1.0 - step) * (w - centroid);
      disks.push_back({x, 0.5 * step * boundary_dist(x)});
    }
  return disks;
}

}  // namespace

MatrixTuple ball_covering_tuple(const ConvexBody& k, int k_max,
                                const ToleranceConfig& tol) {
  (void)tol;
  const std::vector<Disk> disks = covering_disks(k, k_max);
  const MatrixTuple f = clifford_generators(2).f;
  std::vector<ComplexMatrix> blocks1, blocks2;
  blocks1.reserve(disks.size());
  blocks2.reserve(disks.size());
  for (const Disk& d : disks) {
    blocks1.push_back(d.center(0) * cid(2) + d.radius * f[0]);
    blocks2.push_back(d.center(1) * cid(2) + d.radius * f[1]);
  }
  return MatrixTuple({direct_sum(blocks1), direct_sum(blocks2)}, std::vector<bool>{true, true});
}

double ball_covering_hausdorff(const ConvexBody& k, int k_max,
                               const ToleranceConfig& tol) {
  const std::vector<Disk> disks = covering_disks(k, k_max);
  double worst = 0.0;
  for (const auto& u : direction_set(2, 512, tol.seed)) {
    double hull = -1e300;
    for (const Disk& d : disks) hull = std::max(hull, d.center.dot(u) + d.radius);
    worst = std::max(worst, std::abs(support_function(k, u) - hull));
  }
  return worst;
}

}  // namespace mct
