#include "mct/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mct {

namespace {

Json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double double_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

Json entries_row_major(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return rows;
}

void fill_row_major(ComplexMatrix& m, const Json& entries) {
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(m.rows() * m.cols()))
    throw std::invalid_argument("matrix entry count mismatch");
  std::size_t at = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Json& e = entries[at++];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
}

RealVector real_vector_from(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of reals");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

Json real_vector_to(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string named_shape(NamedKind k) {
  switch (k) {
    case NamedKind::ball: return "ball";
    case NamedKind::cube: return "cube";
    case NamedKind::simplex_standard: return "simplex_standard";
    case NamedKind::diamond_standard: return "diamond_standard";
    case NamedKind::disk_product: return "disk_product";
    case NamedKind::interval_product: return "interval_product";
  }
  throw std::invalid_argument("unknown named body");
}

NamedKind named_from(const std::string& s) {
  if (s == "ball") return NamedKind::ball;
  if (s == "cube") return NamedKind::cube;
  if (s == "simplex_standard") return NamedKind::simplex_standard;
  if (s == "diamond_standard") return NamedKind::diamond_standard;
  if (s == "disk_product") return NamedKind::disk_product;
  if (s == "interval_product") return NamedKind::interval_product;
  throw std::invalid_argument("unknown named body shape: " + s);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = static_cast<int>(m.rows());
  j["cols"] = static_cast<int>(m.cols());
  j["entries"] = entries_row_major(m);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  ComplexMatrix m(rows, cols);
  fill_row_major(m, j.at("entries"));
  return m;
}

Json tuple_to_json(const MatrixTuple& t) {
  Json j;
  j["d"] = t.d();
  j["n"] = t.n();
  j["hermitian"] = t.hermitian;
  Json mats = Json::array();
  for (const auto& m : t.mats) mats.push_back(entries_row_major(m));
  j["matrices"] = std::move(mats);
  return j;
}

MatrixTuple tuple_from_json(const Json& j) {
  const int d = j.at("d").get<int>();
  const int n = j.at("n").get<int>();
  if (d < 0 || n < 0) throw std::invalid_argument("negative tuple shape");
  const Json& herm = j.at("hermitian");
  const Json& mats = j.at("matrices");
  if (!herm.is_array() || static_cast<int>(herm.size()) != d)
    throw std::invalid_argument("tuple hermitian flags must have d entries");
  if (!mats.is_array() || static_cast<int>(mats.size()) != d)
    throw std::invalid_argument("tuple must carry d matrices");
  std::vector<ComplexMatrix> ms(d, ComplexMatrix(n, n));
  std::vector<bool> flags(d);
  for (int k = 0; k < d; ++k) {
    fill_row_major(ms[k], mats[k]);
    flags[k] = herm[k].get<bool>();
  }
  return MatrixTuple(std::move(ms), std::move(flags));
}

Json body_to_json(const ConvexBody& k) {
  Json j;
  j["dim"] = k.dim;
  j["complex"] = k.complex_coords;
  if (!k.label.empty()) j["label"] = k.label;
  switch (k.kind) {
    case BodyKind::v_polytope: {
      j["kind"] = "v_polytope";
      Json vs = Json::array();
      for (const auto& v : k.vertices) vs.push_back(real_vector_to(v));
      j["vertices"] = std::move(vs);
      break;
    }
    case BodyKind::h_polytope: {
      j["kind"] = "h_polytope";
      Json fs = Json::array();
      for (const auto& f : k.facets)
        fs.push_back(Json{{"a", real_vector_to(f.a)}, {"b", f.b}});
      j["facets"] = std::move(fs);
      break;
    }
    case BodyKind::named: {
      j["kind"] = "named";
      Json name;
      name["shape"] = named_shape(k.named);
      switch (k.named) {
        case NamedKind::ball: name["radius"] = k.radius; break;
        case NamedKind::cube: name["half_width"] = k.half_width; break;
        case NamedKind::simplex_standard:
        case NamedKind::diamond_standard: break;
        case NamedKind::disk_product: name["radii"] = k.radii; break;
        case NamedKind::interval_product: {
          Json bs = Json::array();
          for (const auto& [lo, hi] : k.bounds)
            bs.push_back(Json::array({lo, hi}));
          name["bounds"] = std::move(bs);
          break;
        }
      }
      j["name"] = std::move(name);
      break;
    }
  }
  return j;
}

ConvexBody body_from_json(const Json& j) {
  const int dim = j.at("dim").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  ConvexBody k;
  if (kind == "v_polytope") {
    std::vector<RealVector> vs;
    for (const Json& v : j.at("vertices")) vs.push_back(real_vector_from(v));
    for (const auto& v : vs)
      if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument("vertex dimension mismatch");
    k = make_v_polytope(std::move(vs));
  } else if (kind == "h_polytope") {
    std::vector<Facet> fs;
    for (const Json& f : j.at("facets")) {
      Facet facet;
      facet.a = real_vector_from(f.at("a"));
      facet.b = f.at("b").get<double>();
      if (static_cast<int>(facet.a.size()) != dim)
        throw std::invalid_argument("facet dimension mismatch");
      fs.push_back(std::move(facet));
    }
    k = make_h_polytope(dim, std::move(fs));
  } else if (kind == "named") {
    const Json& name = j.at("name");
    switch (named_from(name.at("shape").get<std::string>())) {
      case NamedKind::ball:
        k = make_ball(dim, name.at("radius").get<double>());
        break;
      case NamedKind::cube:
        k = make_cube(dim, name.at("half_width").get<double>());
        break;
      case NamedKind::simplex_standard:
        k = make_standard_simplex(dim);
        break;
      case NamedKind::diamond_standard:
        k = make_standard_diamond(dim);
        break;
      case NamedKind::disk_product:
        k = make_disk_product(name.at("radii").get<std::vector<double>>());
        break;
      case NamedKind::interval_product: {
        std::vector<std::pair<double, double>> bounds;
        for (const Json& b : name.at("bounds"))
          bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
        k = make_interval_product(std::move(bounds));
        break;
      }
    }
  } else {
    throw std::invalid_argument("unknown body kind: " + kind);
  }
  if (k.dim != dim) throw std::invalid_argument("body dimension mismatch");
  if (j.contains("complex")) k.complex_coords = j.at("complex").get<bool>();
  if (j.contains("label")) k.label = j.at("label").get<std::string>();
  return k;
}

Json certificate_to_json(const DilationCertificate& c) {
  Json j;
  j["construction"] = c.construction;
  j["input"] = tuple_to_json(c.input);
  j["dilation"] = tuple_to_json(c.dilation);
  j["isometry"] = matrix_to_json(c.isometry.V);
  Json claims = Json::array();
  for (const auto& cl : c.claims) {
    Json cj;
    cj["name"] = cl.name;
    cj["residual"] = finite_or_null(cl.residual);
    cj["bound"] = cl.bound;
    if (!cl.params.empty()) cj["params"] = cl.params;
    claims.push_back(std::move(cj));
  }
  j["claims"] = std::move(claims);
  j["certified_scale"] = c.certified_scale;
  if (!c.certified_scales.empty()) j["certified_scales"] = c.certified_scales;
  if (!c.group_sizes.empty()) j["group_sizes"] = c.group_sizes;
  if (!c.bodies.empty()) {
    Json bs = Json::array();
    for (const auto& b : c.bodies) bs.push_back(body_to_json(b));
    j["bodies"] = std::move(bs);
  }
  if (!c.intermediates.empty()) {
    Json im;
    for (const auto& [key, t] : c.intermediates) im[key] = tuple_to_json(t);
    j["intermediates"] = std::move(im);
  }
  if (!c.reported.empty()) {
    Json rep;
    for (const auto& [key, x] : c.reported) rep[key] = finite_or_null(x);
    j["reported"] = std::move(rep);
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

DilationCertificate certificate_from_json(const Json& j) {
  DilationCertificate c;
  c.construction = j.at("construction").get<std::string>();
  c.input = tuple_from_json(j.at("input"));
  c.dilation = tuple_from_json(j.at("dilation"));
  c.isometry = Isometry(matrix_from_json(j.at("isometry")));
  for (const Json& cj : j.at("claims")) {
    Claim cl;
    cl.name = cj.at("name").get<std::string>();
    cl.residual = double_from(cj.at("residual"));
    cl.bound = cj.at("bound").get<double>();
    if (cj.contains("params")) cl.params = cj.at("params").get<std::vector<double>>();
    c.claims.push_back(std::move(cl));
  }
  if (j.contains("certified_scale"))
    c.certified_scale = j.at("certified_scale").get<double>();
  if (j.contains("certified_scales"))
    c.certified_scales = j.at("certified_scales").get<std::vector<double>>();
  if (j.contains("group_sizes"))
    c.group_sizes = j.at("group_sizes").get<std::vector<int>>();
  if (j.contains("bodies"))
    for (const Json& b : j.at("bodies")) c.bodies.push_back(body_from_json(b));
  if (j.contains("intermediates"))
    for (auto it = j.at("intermediates").begin(); it != j.at("intermediates").end(); ++it)
      c.intermediates.emplace(it.key(), tuple_from_json(it.value()));
  if (j.contains("reported"))
    for (auto it = j.at("reported").begin(); it != j.at("reported").end(); ++it)
      c.reported.emplace(it.key(), double_from(it.value()));
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  return c;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["message"] = r.message;
  Json claims = Json::array();
  for (const auto& cl : r.recomputed) {
    Json cj;
    cj["name"] = cl.name;
    cj["residual"] = finite_or_null(cl.residual);
    cj["bound"] = cl.bound;
    claims.push_back(std::move(cj));
  }
  j["claims"] = std::move(claims);
  return j;
}

Json membership_to_json(const MembershipVerdict& v) {
  Json j;
  j["verdict"] = verdict_name(v.verdict);
  j["margin"] = v.margin;
  if (v.witness) j["witness"] = real_vector_to(*v.witness);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json level1_range_to_json(const Level1Range& r) {
  Json j;
  j["inner"] = body_to_json(r.inner);
  j["outer"] = body_to_json(r.outer);
  j["complex"] = r.complex;
  return j;
}

Json theta_to_json(const ThetaResult& r) {
  Json j;
  j["theta"] = r.theta;
  j["s"] = r.s;
  j["simplex"] = body_to_json(r.simplex);
  return j;
}

Json minimality_to_json(const MinimalityReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  j["w1_in_k"] = r.w1_in_k;
  j["w1_margin"] = r.w1_margin;
  j["normal_summand_dims"] = r.normal_summand_dims;
  Json per_vertex = Json::array();
  for (const auto& basis : r.vertex_eigenvectors) {
    Json vecs = Json::array();
    for (const auto& v : basis) {
      Json entries = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        entries.push_back(Json::array({v(i).real(), v(i).imag()}));
      vecs.push_back(std::move(entries));
    }
    per_vertex.push_back(std::move(vecs));
  }
  j["vertex_eigenvectors"] = std::move(per_vertex);
  j["notes"] = r.notes;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace mct
