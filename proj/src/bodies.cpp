#include "mct/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <Eigen/SVD>

#include "lp.hpp"

namespace mct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const ConvexBody& k, const RealVector& x, const char* who) {
  if (x.size() != k.dim)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

double pair_norm(const RealVector& x, int i) {
  return std::hypot(x(2 * i), x(2 * i + 1));
}

// l-infinity distance from x to conv(vertices), by LP. Variables are the
// barycentric weights, the distance bound s, and one slack per inequality.
double vpoly_linf_distance(const std::vector<RealVector>& verts,
                           const RealVector& x) {
  const int v = static_cast<int>(verts.size());
  const int d = static_cast<int>(x.size());
  const int nvar = v + 1 + 2 * d;
  const int nrow = 1 + 2 * d;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nrow, nvar);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nrow);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nvar);
  c(v) = 1.0;  // minimize s
  for (int j = 0; j < v; ++j) A(0, j) = 1.0;
  b(0) = 1.0;
  for (int i = 0; i < d; ++i) {
    // (V lam)_i - s + p_i = x_i
    for (int j = 0; j < v; ++j) A(1 + i, j) = verts[j](i);
    A(1 + i, v) = -1.0;
    A(1 + i, v + 1 + i) = 1.0;
    b(1 + i) = x(i);
    // -(V lam)_i - s + q_i = -x_i
    for (int j = 0; j < v; ++j) A(1 + d + i, j) = -verts[j](i);
    A(1 + d + i, v) = -1.0;
    A(1 + d + i, v + 1 + d + i) = 1.0;
    b(1 + d + i) = -x(i);
  }
  auto r = lp::solve(A, b, c);
  if (r.status != lp::Status::optimal)
    throw std::runtime_error("membership LP did not converge");
  return std::max(0.0, r.value);
}

double vpoly_gauge(const std::vector<RealVector>& verts, const RealVector& x) {
  const int v = static_cast<int>(verts.size());
  const int d = static_cast<int>(x.size());
  Eigen::MatrixXd A(d, v);
  for (int j = 0; j < v; ++j) A.col(j) = verts[j];
  Eigen::VectorXd c = Eigen::VectorXd::Ones(v);
  auto r = lp::solve(A, x, c);
  if (r.status == lp::Status::infeasible) return kInf;
  if (r.status != lp::Status::optimal)
    throw std::runtime_error("gauge LP did not converge");
  return std::max(0.0, r.value);
}

double hpoly_support(const std::vector<Facet>& facets, const RealVector& c) {
  const int m = static_cast<int>(facets.size());
  const int d = static_cast<int>(c.size());
  // max c.x st A x <= b, x free: x = u - w, slack t.
  const int nvar = 2 * d + m;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nvar);
  Eigen::VectorXd b(m);
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(nvar);
  for (int i = 0; i < m; ++i) {
    A.block(i, 0, 1, d) = facets[i].a.transpose();
    A.block(i, d, 1, d) = -facets[i].a.transpose();
    A(i, 2 * d + i) = 1.0;
    b(i) = facets[i].b;
  }
  obj.head(d) = -c;
  obj.segment(d, d) = c;
  auto r = lp::solve(A, b, obj);
  if (r.status == lp::Status::unbounded)
    throw std::domain_error("support query on an unbounded H-polytope");
  if (r.status != lp::Status::optimal)
    throw std::runtime_error("support LP did not converge");
  return -r.value;
}

std::vector<RealVector> corner_list(
    const std::vector<std::pair<double, double>>& bounds) {
  const int d = static_cast<int>(bounds.size());
  if (d > 16) throw std::domain_error("corner enumeration capped at dim 16");
  std::vector<RealVector> out;
  out.reserve(std::size_t(1) << d);
  for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
    RealVector v(d);
    for (int i = 0; i < d; ++i)
      v(i) = (mask >> i) & 1 ? bounds[i].second : bounds[i].first;
    out.push_back(v);
  }
  return out;
}

// 2-D convex hull, counter-clockwise (monotone chain).
std::vector<RealVector> hull2d(std::vector<RealVector> pts) {
  std::sort(pts.begin(), pts.end(), [](const RealVector& p, const RealVector& q) {
    return p(0) < q(0) || (p(0) == q(0) && p(1) < q(1));
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RealVector& p, const RealVector& q) {
                          return (p - q).norm() < 1e-12;
                        }),
            pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const RealVector& o, const RealVector& a, const RealVector& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  std::vector<RealVector> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 1e-14) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 1e-14) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  return h;
}

std::vector<Facet> facets_from_hull2d(const std::vector<RealVector>& verts) {
  auto hull = hull2d(verts);
  std::vector<Facet> out;
  const int n = static_cast<int>(hull.size());
  if (n < 2) throw std::domain_error("degenerate 2-D polytope has no facets");
  for (int i = 0; i < n; ++i) {
    const RealVector& p = hull[i];
    const RealVector& q = hull[(i + 1) % n];
    if (n == 2 && i == 1) break;  // a segment has two halfplanes plus end caps
    RealVector e = q - p;
    RealVector a(2);
    a << e(1), -e(0);  // outward for ccw order
    const double nn = a.norm();
    if (nn < 1e-14) continue;
    a /= nn;
    out.push_back({a, a.dot(p)});
  }
  if (n == 2) {  // segment: add the two end cap halfplanes and the reverse side
    RealVector e = hull[1] - hull[0];
    RealVector a(2);
    a << e(1), -e(0);
    a.normalize();
    out.push_back({a, a.dot(hull[0])});
    out.push_back({RealVector(-a), -a.dot(hull[0])});
    RealVector t = e.normalized();
    out.push_back({t, t.dot(hull[1])});
    out.push_back({RealVector(-t), -t.dot(hull[0])});
  }
  return out;
}

std::vector<Facet> facets_3d_bruteforce(const std::vector<RealVector>& verts) {
  const int n = static_cast<int>(verts.size());
  std::vector<Facet> out;
  std::map<std::array<long long, 4>, bool> seen;
  const double scale = [&] {
    double s = 1.0;
    for (const auto& v : verts) s = std::max(s, v.lpNorm<Eigen::Infinity>());
    return s;
  }();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        RealVector u = verts[j] - verts[i], w = verts[k] - verts[i];
        RealVector a(3);
        a << u(1) * w(2) - u(2) * w(1), u(2) * w(0) - u(0) * w(2),
            u(0) * w(1) - u(1) * w(0);
        const double nn = a.norm();
        if (nn < 1e-10 * scale * scale) continue;
        a /= nn;
        double b = a.dot(verts[i]);
        int lo = 0, hi = 0;
        for (const auto& v : verts) {
          const double s = a.dot(v) - b;
          if (s > 1e-9 * scale) ++hi;
          if (s < -1e-9 * scale) ++lo;
        }
        if (hi > 0 && lo > 0) continue;
        if (hi > 0) { a = -a; b = -b; }
        std::array<long long, 4> key{};
        for (int t = 0; t < 3; ++t) key[t] = llround(a(t) * 1e8);
        key[3] = llround(b / scale * 1e8);
        if (seen.emplace(key, true).second) out.push_back({a, b});
      }
  if (out.empty()) throw std::domain_error("degenerate 3-D polytope has no facets");
  return out;
}

// Facets of a nondegenerate simplex in any dimension: for each dropped
// vertex, the hyperplane through the remaining ones.
std::vector<Facet> simplex_facets(const std::vector<RealVector>& verts) {
  const int d = static_cast<int>(verts[0].size());
  const int n = static_cast<int>(verts.size());
  if (n != d + 1) throw std::invalid_argument("simplex_facets: need dim+1 vertices");
  std::vector<Facet> out;
  for (int drop = 0; drop < n; ++drop) {
    Eigen::MatrixXd rows(d, d + 1);
    int r = 0;
    for (int j = 0; j < n; ++j) {
      if (j == drop) continue;
      rows.block(r, 0, 1, d) = verts[j].transpose();
      rows(r, d) = -1.0;
      ++r;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    if (svd.singularValues()(d - 1) < 1e-10)
      throw std::domain_error("degenerate simplex");
    Eigen::VectorXd nv = svd.matrixV().col(d);
    RealVector a = nv.head(d);
    double b = nv(d);
    const double nn = a.norm();
    if (nn < 1e-12) throw std::domain_error("degenerate simplex");
    a /= nn;
    b /= nn;
    if (a.dot(verts[drop]) > b) { a = -a; b = -b; }
    out.push_back({a, b});
  }
  return out;
}

bool affinely_independent(const std::vector<RealVector>& verts) {
  const int d = static_cast<int>(verts[0].size());
  if (static_cast<int>(verts.size()) != d + 1) return false;
  Eigen::MatrixXd m(d, d);
  for (int j = 1; j <= d; ++j) m.col(j - 1) = verts[j] - verts[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(d - 1) > 1e-10 * std::max(1.0, svd.singularValues()(0));
}

}  // namespace

ConvexBody make_ball(int dim, double radius) {
  if (dim < 1 || radius <= 0) throw std::invalid_argument("make_ball: bad parameters");
  ConvexBody k;
  k.dim = dim;
  k.kind = BodyKind::named;
  k.named = NamedKind::ball;
  k.radius = radius;
  return k;
}

ConvexBody make_cube(int dim, double half_width) {
  if (dim < 1 || half_width <= 0) throw std::invalid_argument("make_cube: bad parameters");
  ConvexBody k;
  k.dim = dim;
  k.kind = BodyKind::named;
  k.named = NamedKind::cube;
  k.half_width = half_width;
  return k;
}

ConvexBody make_standard_simplex(int dim) {
  if (dim < 1) throw std::invalid_argument("make_standard_simplex: bad dim");
  ConvexBody k;
  k.dim = dim;
  k.kind = BodyKind::named;
  k.named = NamedKind::simplex_standard;
  return k;
}

ConvexBody make_standard_diamond(int dim) {
  if (dim < 1) throw std::invalid_argument("make_standard_diamond: bad dim");
  ConvexBody k;
  k.dim = dim;
  k.kind = BodyKind::named;
  k.named = NamedKind::diamond_standard;
  return k;
}

ConvexBody make_disk_product(std::vector<double> radii) {
  if (radii.empty()) throw std::invalid_argument("make_disk_product: empty");
  for (double r : radii)
    if (r <= 0) throw std::invalid_argument("make_disk_product: radii must be positive");
  ConvexBody k;
  k.dim = 2 * static_cast<int>(radii.size());
  k.kind = BodyKind::named;
  k.named = NamedKind::disk_product;
  k.radii = std::move(radii);
  k.complex_coords = true;
  return k;
}

ConvexBody make_interval_product(std::vector<std::pair<double, double>> bounds) {
  if (bounds.empty()) throw std::invalid_argument("make_interval_product: empty");
  for (auto [lo, hi] : bounds)
    if (lo > hi) throw std::invalid_argument("make_interval_product: lo > hi");
  ConvexBody k;
  k.dim = static_cast<int>(bounds.size());
  k.kind = BodyKind::named;
  k.named = NamedKind::interval_product;
  k.bounds = std::move(bounds);
  return k;
}

ConvexBody make_h_polytope(int dim, std::vector<Facet> facets) {
  if (dim < 1 || facets.empty()) throw std::invalid_argument("make_h_polytope: bad input");
  for (const auto& f : facets)
    if (f.a.size() != dim || f.a.norm() < 1e-14)
      throw std::invalid_argument("make_h_polytope: bad facet normal");
  ConvexBody k;
  k.dim = dim;
  k.kind = BodyKind::h_polytope;
  k.facets = std::move(facets);
  return k;
}

ConvexBody make_v_polytope(std::vector<RealVector> points, bool already_extreme) {
  if (points.empty()) throw std::invalid_argument("make_v_polytope: empty");
  const int d = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("make_v_polytope: ragged points");
  ConvexBody k;
  k.dim = d;
  k.kind = BodyKind::v_polytope;
  if (already_extreme) {
    k.vertices = std::move(points);
    return k;
  }
  // Dedupe, then drop points inside the hull of the others.
  std::vector<RealVector> uniq;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : uniq)
      if ((p - q).lpNorm<Eigen::Infinity>() < 1e-12) { dup = true; break; }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() == 1) {
    k.vertices = std::move(uniq);
    return k;
  }
  std::vector<bool> keep(uniq.size(), true);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    std::vector<RealVector> others;
    for (std::size_t j = 0; j < uniq.size(); ++j)
      if (j != i && keep[j]) others.push_back(uniq[j]);
    if (others.empty()) continue;
    if (vpoly_linf_distance(others, uniq[i]) <= 1e-10) keep[i] = false;
  }
  for (std::size_t i = 0; i < uniq.size(); ++i)
    if (keep[i]) k.vertices.push_back(uniq[i]);
  return k;
}

double support_function(const ConvexBody& k, const RealVector& c) {
  check_dim(k, c, "support_function");
  switch (k.kind) {
    case BodyKind::v_polytope: {
      double best = -kInf;
      for (const auto& v : k.vertices) best = std::max(best, c.dot(v));
      return best;
    }
    case BodyKind::h_polytope:
      return hpoly_support(k.facets, c);
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::ball:
          return k.radius * c.norm();
        case NamedKind::cube:
          return k.half_width * c.lpNorm<1>();
        case NamedKind::simplex_standard: {
          double best = 0.0;
          for (int i = 0; i < k.dim; ++i) best = std::max(best, c(i));
          return best;
        }
        case NamedKind::diamond_standard:
          return c.lpNorm<Eigen::Infinity>();
        case NamedKind::disk_product: {
          double s = 0.0;
          for (std::size_t i = 0; i < k.radii.size(); ++i)
            s += k.radii[i] * pair_norm(c, static_cast<int>(i));
          return s;
        }
        case NamedKind::interval_product: {
          double s = 0.0;
          for (int i = 0; i < k.dim; ++i)
            s += std::max(c(i) * k.bounds[i].first, c(i) * k.bounds[i].second);
          return s;
        }
      }
  }
  throw std::logic_error("support_function: unreachable");
}

double gauge(const ConvexBody& k, const RealVector& x) {
  check_dim(k, x, "gauge");
  constexpr double kZero = 1e-12;
  switch (k.kind) {
    case BodyKind::v_polytope:
      return vpoly_gauge(k.vertices, x);
    case BodyKind::h_polytope: {
      double lo = 0.0, hi = kInf;
      for (const auto& f : k.facets) {
        const double ax = f.a.dot(x);
        if (f.b > kZero)
          lo = std::max(lo, ax / f.b);
        else if (f.b < -kZero)
          hi = std::min(hi, ax / f.b);
        else if (ax > kZero)
          return kInf;
      }
      return (lo <= hi + kZero) ? lo : kInf;
    }
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::ball:
          return x.norm() / k.radius;
        case NamedKind::cube:
          return x.lpNorm<Eigen::Infinity>() / k.half_width;
        case NamedKind::simplex_standard: {
          double s = 0.0;
          for (int i = 0; i < k.dim; ++i) {
            if (x(i) < -kZero) return kInf;
            s += std::max(x(i), 0.0);
          }
          return s;
        }
        case NamedKind::diamond_standard:
          return x.lpNorm<1>();
        case NamedKind::disk_product: {
          double g = 0.0;
          for (std::size_t i = 0; i < k.radii.size(); ++i)
            g = std::max(g, pair_norm(x, static_cast<int>(i)) / k.radii[i]);
          return g;
        }
        case NamedKind::interval_product: {
          double g = 0.0;
          for (int i = 0; i < k.dim; ++i) {
            auto [lo, hi] = k.bounds[i];
            if (x(i) > kZero) {
              if (hi <= kZero) return kInf;
              g = std::max(g, x(i) / hi);
            } else if (x(i) < -kZero) {
              if (lo >= -kZero) return kInf;
              g = std::max(g, x(i) / lo);
            }
          }
          return g;
        }
      }
  }
  throw std::logic_error("gauge: unreachable");
}

double member_distance(const ConvexBody& k, const RealVector& x) {
  check_dim(k, x, "member_distance");
  switch (k.kind) {
    case BodyKind::v_polytope:
      return vpoly_linf_distance(k.vertices, x);
    case BodyKind::h_polytope: {
      double worst = 0.0;
      for (const auto& f : k.facets)
        worst = std::max(worst, (f.a.dot(x) - f.b) / f.a.norm());
      return worst;
    }
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::ball:
          return std::max(0.0, x.norm() - k.radius);
        case NamedKind::cube:
          return std::max(0.0, x.lpNorm<Eigen::Infinity>() - k.half_width);
        case NamedKind::simplex_standard: {
          double worst = 0.0;
          for (int i = 0; i < k.dim; ++i) worst = std::max(worst, -x(i));
          worst = std::max(worst, (x.sum() - 1.0) / std::sqrt(double(k.dim)));
          return worst;
        }
        case NamedKind::diamond_standard:
          return std::max(0.0, (x.lpNorm<1>() - 1.0) / std::sqrt(double(k.dim)));
        case NamedKind::disk_product: {
          double worst = 0.0;
          for (std::size_t i = 0; i < k.radii.size(); ++i)
            worst = std::max(worst,
                             pair_norm(x, static_cast<int>(i)) - k.radii[i]);
          return worst;
        }
        case NamedKind::interval_product: {
          double worst = 0.0;
          for (int i = 0; i < k.dim; ++i) {
            worst = std::max(worst, k.bounds[i].first - x(i));
            worst = std::max(worst, x(i) - k.bounds[i].second);
          }
          return worst;
        }
      }
  }
  throw std::logic_error("member_distance: unreachable");
}

bool member(const ConvexBody& k, const RealVector& x, double tol) {
  return member_distance(k, x) <= tol;
}

ConvexBody product(const std::vector<ConvexBody>& factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  if (factors.size() == 1) return factors[0];

  const bool all_intervals =
      std::all_of(factors.begin(), factors.end(), [](const ConvexBody& f) {
        return f.kind == BodyKind::named && (f.named == NamedKind::interval_product ||
                                             f.named == NamedKind::cube);
      });
  if (all_intervals) {
    std::vector<std::pair<double, double>> bounds;
    for (const auto& f : factors) {
      if (f.named == NamedKind::cube)
        for (int i = 0; i < f.dim; ++i)
          bounds.emplace_back(-f.half_width, f.half_width);
      else
        bounds.insert(bounds.end(), f.bounds.begin(), f.bounds.end());
    }
    return make_interval_product(std::move(bounds));
  }

  const bool all_disks =
      std::all_of(factors.begin(), factors.end(), [](const ConvexBody& f) {
        return f.kind == BodyKind::named &&
               (f.named == NamedKind::disk_product ||
                (f.named == NamedKind::ball && f.dim == 2));
      });
  if (all_disks) {
    std::vector<double> radii;
    for (const auto& f : factors) {
      if (f.named == NamedKind::ball)
        radii.push_back(f.radius);
      else
        radii.insert(radii.end(), f.radii.begin(), f.radii.end());
    }
    return make_disk_product(std::move(radii));
  }

  const bool all_polytopal = std::all_of(factors.begin(), factors.end(),
                                         [](const ConvexBody& f) { return has_vertex_list(f); });
  if (!all_polytopal)
    throw std::invalid_argument(
        "product: factors must be all polytopal, all intervals, or all disks");

  std::vector<RealVector> acc{RealVector(0)};
  for (const auto& f : factors) {
    auto verts = body_vertices(f);
    std::vector<RealVector> next;
    next.reserve(acc.size() * verts.size());
    for (const auto& head : acc)
      for (const auto& v : verts) {
        RealVector w(head.size() + v.size());
        w << head, v;
        next.push_back(std::move(w));
      }
    acc = std::move(next);
  }
  // Extreme points of a product are exactly the products of extreme points.
  return make_v_polytope(std::move(acc), /*already_extreme=*/true);
}

ConvexBody affine_image(const AffineMap& f, const ConvexBody& k) {
  if (f.A.cols() != k.dim || f.b.size() != f.A.rows())
    throw std::invalid_argument("affine_image: shape mismatch");
  if (has_vertex_list(k)) {
    std::vector<RealVector> pts;
    for (const auto& v : body_vertices(k)) pts.push_back(f.A * v + f.b);
    return make_v_polytope(std::move(pts));
  }
  if (k.kind == BodyKind::named && k.named == NamedKind::ball) {
    // Only similarity images of balls stay representable.
    Eigen::MatrixXd g = f.A * f.A.transpose();
    const double c2 = g.trace() / double(g.rows());
    if ((g - c2 * Eigen::MatrixXd::Identity(g.rows(), g.cols())).norm() >
            1e-10 * std::max(1.0, c2) ||
        f.b.norm() > 1e-12)
      throw std::invalid_argument(
          "affine_image: ball supports origin-preserving similarities only");
    return make_ball(static_cast<int>(f.A.rows()), std::sqrt(c2) * k.radius);
  }
  throw std::invalid_argument("affine_image: unsupported body kind");
}

bool has_vertex_list(const ConvexBody& k) {
  switch (k.kind) {
    case BodyKind::v_polytope:
      return true;
    case BodyKind::h_polytope:
      return false;
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::cube:
        case NamedKind::interval_product:
          return k.dim <= 16;
        case NamedKind::simplex_standard:
        case NamedKind::diamond_standard:
          return true;
        default:
          return false;
      }
  }
  return false;
}

std::vector<RealVector> body_vertices(const ConvexBody& k) {
  switch (k.kind) {
    case BodyKind::v_polytope:
      return k.vertices;
    case BodyKind::h_polytope:
      throw std::invalid_argument("body_vertices: H-polytopes are not enumerated");
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::cube: {
          std::vector<std::pair<double, double>> b(
              k.dim, {-k.half_width, k.half_width});
          return corner_list(b);
        }
        case NamedKind::interval_product:
          return corner_list(k.bounds);
        case NamedKind::simplex_standard: {
          std::vector<RealVector> v{RealVector::Zero(k.dim)};
          for (int i = 0; i < k.dim; ++i) {
            RealVector e = RealVector::Zero(k.dim);
            e(i) = 1.0;
            v.push_back(e);
          }
          return v;
        }
        case NamedKind::diamond_standard: {
          std::vector<RealVector> v;
          for (int i = 0; i < k.dim; ++i) {
            RealVector e = RealVector::Zero(k.dim);
            e(i) = 1.0;
            v.push_back(e);
            v.push_back(RealVector(-e));
          }
          return v;
        }
        default:
          throw std::invalid_argument("body_vertices: curved body");
      }
  }
  throw std::logic_error("body_vertices: unreachable");
}

bool has_exact_facets(const ConvexBody& k) {
  switch (k.kind) {
    case BodyKind::h_polytope:
      return true;
    case BodyKind::v_polytope:
      return k.dim <= 3 ||
             (static_cast<int>(k.vertices.size()) == k.dim + 1 &&
              affinely_independent(k.vertices));
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::cube:
        case NamedKind::interval_product:
        case NamedKind::simplex_standard:
          return true;
        case NamedKind::diamond_standard:
          return k.dim <= 10;
        default:
          return false;
      }
  }
  return false;
}

std::vector<Facet> body_facets(const ConvexBody& k) {
  switch (k.kind) {
    case BodyKind::h_polytope:
      return k.facets;
    case BodyKind::v_polytope: {
      if (k.dim == 1) {
        double lo = kInf, hi = -kInf;
        for (const auto& v : k.vertices) {
          lo = std::min(lo, v(0));
          hi = std::max(hi, v(0));
        }
        RealVector plus(1), minus(1);
        plus << 1.0;
        minus << -1.0;
        return {{plus, hi}, {minus, -lo}};
      }
      if (static_cast<int>(k.vertices.size()) == k.dim + 1 &&
          affinely_independent(k.vertices))
        return simplex_facets(k.vertices);
      if (k.dim == 2) return facets_from_hull2d(k.vertices);
      if (k.dim == 3) return facets_3d_bruteforce(k.vertices);
      throw std::invalid_argument(
          "body_facets: exact enumeration of V-polytopes stops at dim 3");
    }
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::cube: {
          std::vector<Facet> out;
          for (int i = 0; i < k.dim; ++i) {
            RealVector e = RealVector::Zero(k.dim);
            e(i) = 1.0;
            out.push_back({e, k.half_width});
            out.push_back({RealVector(-e), k.half_width});
          }
          return out;
        }
        case NamedKind::interval_product: {
          std::vector<Facet> out;
          for (int i = 0; i < k.dim; ++i) {
            RealVector e = RealVector::Zero(k.dim);
            e(i) = 1.0;
            out.push_back({e, k.bounds[i].second});
            out.push_back({RealVector(-e), -k.bounds[i].first});
          }
          return out;
        }
        case NamedKind::simplex_standard: {
          std::vector<Facet> out;
          for (int i = 0; i < k.dim; ++i) {
            RealVector e = RealVector::Zero(k.dim);
            e(i) = -1.0;
            out.push_back({e, 0.0});
          }
          out.push_back({RealVector::Ones(k.dim), 1.0});
          return out;
        }
        case NamedKind::diamond_standard: {
          if (k.dim > 10)
            throw std::invalid_argument("body_facets: diamond facets capped at dim 10");
          std::vector<Facet> out;
          for (std::size_t mask = 0; mask < (std::size_t(1) << k.dim); ++mask) {
            RealVector a(k.dim);
            for (int i = 0; i < k.dim; ++i) a(i) = (mask >> i) & 1 ? 1.0 : -1.0;
            out.push_back({a, 1.0});
          }
          return out;
        }
        default:
          throw std::invalid_argument("body_facets: curved body has no facets");
      }
  }
  throw std::logic_error("body_facets: unreachable");
}

ConvexBody scale_body(const ConvexBody& k, double s) {
  if (!(s > 0)) throw std::invalid_argument("scale_body: scale must be positive");
  ConvexBody out = k;
  switch (k.kind) {
    case BodyKind::v_polytope:
      for (auto& v : out.vertices) v *= s;
      return out;
    case BodyKind::h_polytope:
      for (auto& f : out.facets) f.b *= s;
      return out;
    case BodyKind::named:
      switch (k.named) {
        case NamedKind::ball:
          out.radius *= s;
          return out;
        case NamedKind::cube:
          out.half_width *= s;
          return out;
        case NamedKind::disk_product:
          for (auto& r : out.radii) r *= s;
          return out;
        case NamedKind::interval_product:
          for (auto& b : out.bounds) b = {s * b.first, s * b.second};
          return out;
        case NamedKind::simplex_standard:
        case NamedKind::diamond_standard: {
          ConvexBody v = make_v_polytope(body_vertices(k), /*already_extreme=*/true);
          for (auto& p : v.vertices) p *= s;
          v.complex_coords = k.complex_coords;
          return v;
        }
      }
  }
  throw std::logic_error("scale_body: unreachable");
}

bool origin_symmetric(const ConvexBody& k, double tol) {
  if (k.kind == BodyKind::named) {
    switch (k.named) {
      case NamedKind::ball:
      case NamedKind::cube:
      case NamedKind::diamond_standard:
      case NamedKind::disk_product:
        return true;
      case NamedKind::simplex_standard:
        return false;
      case NamedKind::interval_product:
        for (auto [lo, hi] : k.bounds)
          if (std::abs(lo + hi) > tol) return false;
        return true;
    }
  }
  if (has_vertex_list(k)) {
    for (const auto& v : body_vertices(k))
      if (member_distance(k, RealVector(-v)) > tol) return false;
    return true;
  }
  for (const auto& c : direction_set(k.dim, 64, 1)) {
    if (std::abs(support_function(k, c) - support_function(k, RealVector(-c))) > tol)
      return false;
  }
  return true;
}

double hausdorff_via_support(const ConvexBody& a, const ConvexBody& b,
                             const std::vector<RealVector>& dirs) {
  double worst = 0.0;
  for (const auto& c : dirs) {
    RealVector u = c.normalized();
    worst = std::max(worst, std::abs(support_function(a, u) - support_function(b, u)));
  }
  return worst;
}

std::vector<RealVector> direction_set(int dim, int count, std::uint64_t seed) {
  if (dim < 1 || count < 1) throw std::invalid_argument("direction_set: bad input");
  std::vector<RealVector> out;
  out.reserve(count);
  constexpr double kGolden = 0.6180339887498949;
  if (dim == 1) {
    for (int i = 0; i < count; ++i) {
      RealVector v(1);
      v << (i % 2 == 0 ? 1.0 : -1.0);
      out.push_back(v);
    }
    return out;
  }
  if (dim == 2) {
    const double offset = std::fmod(kGolden * double(seed + 1), 1.0);
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * (i + offset) / count;
      RealVector v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
    return out;
  }
  if (dim == 3) {
    const double offset = std::fmod(kGolden * double(seed + 1), 1.0);
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * std::numbers::pi * std::fmod((i + offset) * kGolden, 1.0);
      RealVector v(3);
      v << r * std::cos(th), r * std::sin(th), z;
      out.push_back(v);
    }
    return out;
  }
  Rng rng(seed);
  while (static_cast<int>(out.size()) < count) {
    RealVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    const double n = v.norm();
    if (n > 1e-6) out.push_back(v / n);
  }
  return out;
}

ScaleVector::ScaleVector(std::vector<double> scales) : a(std::move(scales)) {
  if (a.empty()) throw std::invalid_argument("ScaleVector: empty");
  for (double s : a)
    if (!(s > 0)) throw std::invalid_argument("ScaleVector: scales must be positive");
}

double ScaleVector::harmonic_sum() const {
  double s = 0.0;
  for (double v : a) s += 1.0 / v;
  return s;
}

double ScaleVector::square_sum() const {
  double s = 0.0;
  for (double v : a) s += 1.0 / (v * v);
  return s;
}

ScaleVector::Class ScaleVector::classify() const {
  if (harmonic_sum() <= 1.0) return Class::harmonic_feasible;
  if (square_sum() <= 1.0) return Class::square_feasible_only;
  return Class::infeasible;
}

SdVerdict sd_classify(const ScaleVector& s) {
  switch (s.classify()) {
    case ScaleVector::Class::harmonic_feasible:
      return SdVerdict::SD_certified;
    case ScaleVector::Class::square_feasible_only:
      return SdVerdict::unknown;
    case ScaleVector::Class::infeasible:
      return SdVerdict::not_SD_certified;
  }
  throw std::logic_error("sd_classify: unreachable");
}

ThetaResult theta_simplex_pointed(const ConvexBody& k, const ToleranceConfig& tol) {
  if (!has_vertex_list(k))
    throw std::invalid_argument("theta_simplex_pointed: vertex list required");
  const auto verts = body_vertices(k);
  const int d = k.dim;
  double scale = 1.0;
  for (const auto& v : verts) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  for (const auto& v : verts)
    if (v.minCoeff() < -1e-9 * scale)
      throw std::domain_error("theta_simplex_pointed: K must lie in the nonnegative orthant");
  if (!member(k, RealVector::Zero(d), 1e-8 * scale))
    throw std::domain_error("theta_simplex_pointed: K must be pointed at 0");

  std::vector<double> gam(d);
  for (int i = 0; i < d; ++i) {
    RealVector e = RealVector::Zero(d);
    e(i) = 1.0;
    gam[i] = gauge(k, e);
    if (!std::isfinite(gam[i]) || gam[i] < 1e-12)
      throw std::domain_error("theta_simplex_pointed: degenerate vector data");
  }

  // Vertices are nonnegative, so the box feasibility test for a given C puts
  // u_i at its floor gamma_i / C.
  auto feasible = [&](double c) {
    for (int i = 0; i < d; ++i)
      if (gam[i] > c * (1.0 + 1e-14)) return false;
    for (const auto& v : verts) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += v(i) * gam[i];
      if (s > c * (1.0 + 1e-14)) return false;
    }
    return true;
  };

  double hi = 1.0;
  for (int i = 0; i < d; ++i) hi = std::max(hi, gam[i]);
  for (const auto& v : verts) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += v(i) * gam[i];
    hi = std::max(hi, s);
  }
  hi += 1.0;
  double lo = 1.0;
  if (feasible(lo)) {
    hi = lo;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? hi : lo) = mid;
    }
  }
  const double theta = hi;

  ThetaResult res;
  res.theta = theta;
  res.s.resize(d);
  std::vector<RealVector> simplex_verts{RealVector::Zero(d)};
  for (int i = 0; i < d; ++i) {
    res.s[i] = theta / gam[i];
    RealVector e = RealVector::Zero(d);
    e(i) = res.s[i];
    simplex_verts.push_back(e);
  }
  res.simplex = make_v_polytope(simplex_verts, /*already_extreme=*/true);

  // Post check both containments before reporting.
  const double slack = std::max(tol.abs_tol, 1e-9) * std::max(1.0, theta);
  for (const auto& v : verts) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += v(i) / res.s[i];
    if (s > 1.0 + slack)
      throw std::runtime_error("theta_simplex_pointed: K escaped the witness simplex");
  }
  for (int i = 0; i < d; ++i) {
    RealVector e = RealVector::Zero(d);
    e(i) = res.s[i];
    if (gauge(k, e) > theta * (1.0 + 1e-9) + slack)
      throw std::runtime_error("theta_simplex_pointed: witness simplex escaped C*K");
  }
  return res;
}

}  // namespace mct
