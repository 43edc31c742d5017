#include "msch/io.hpp"

#include "msch/error.hpp"
#include "msch/toric.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace msch {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) bad("expected an index");
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an index array");
  std::vector<std::size_t> out;
  for (const auto& e : j) out.push_back(index_from_json(e));
  return out;
}

std::vector<LatticeVector> vectors_from_json(const Json& j, std::size_t rank) {
  if (!j.is_array()) bad("expected an array of vectors");
  std::vector<LatticeVector> out;
  for (const auto& e : j) out.push_back(vector_from_json(e, rank));
  return out;
}

Json vectors_to_json(const std::vector<LatticeVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json exponents_to_json(const std::vector<Int>& e) {
  Json out = Json::array();
  for (const auto& x : e) out.push_back(to_json(x));
  return out;
}

MorphismKind kind_from_string(const std::string& s) {
  for (auto k : {MorphismKind::General, MorphismKind::Identity, MorphismKind::OpenImmersion,
                 MorphismKind::ClosedImmersion, MorphismKind::Finite, MorphismKind::Projective, MorphismKind::Toric,
                 MorphismKind::Composite})
    if (s == to_string(k)) return k;
  bad("unknown morphism kind '" + s + "'");
}

Json morphism_body(const SchemeMorphism& f) {
  Json maps = Json::array();
  for (const auto& m : f.stalk_maps) maps.push_back(to_json(m));
  return {{"kind", to_string(f.kind)}, {"point_map", f.point_map}, {"stalk_maps", maps}};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long long>()) : Int(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      bad("bad integer '" + s + "'");
    return Int(s);
  }
  bad("expected an integer");
}

Json to_json(const LatticeVector& v) { return exponents_to_json(v.coords()); }

LatticeVector vector_from_json(const Json& j, std::size_t rank) {
  if (!j.is_array() || j.size() != rank) bad("expected a vector of length " + std::to_string(rank));
  std::vector<Int> c;
  for (const auto& e : j) c.push_back(int_from_json(e));
  return LatticeVector(std::move(c));
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a matrix");
  if (j.empty()) return IntMatrix();
  if (!j[0].is_array()) bad("expected matrix rows");
  std::vector<LatticeVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r, j[0].size()));
  return IntMatrix::from_rows(rows, j[0].size());
}

Json to_json(const AffineMonoid& a) {
  return {{"rank", a.rank()}, {"generators", vectors_to_json(a.generators())},
          {"ideal", vectors_to_json(a.ideal_generators())}};
}

AffineMonoid monoid_from_json(const Json& j) {
  std::size_t rank = index_from_json(field(j, "rank"));
  auto gens = vectors_from_json(field(j, "generators"), rank);
  std::vector<LatticeVector> ideal;
  if (j.contains("ideal")) ideal = vectors_from_json(j.at("ideal"), rank);
  return AffineMonoid(rank, std::move(gens), std::move(ideal));
}

Json to_json(const Fan& f) {
  Json cones = Json::array();
  for (std::size_t c : f.maximal_cones()) cones.push_back(f.cones()[c]);
  return {{"rank", f.rank()}, {"rays", vectors_to_json(f.rays())}, {"cones", cones}};
}

Fan fan_from_json(const Json& j) {
  std::size_t rank = index_from_json(field(j, "rank"));
  auto rays = vectors_from_json(field(j, "rays"), rank);
  std::vector<std::vector<std::size_t>> cones;
  const Json& cs = field(j, "cones");
  if (!cs.is_array()) bad("cones must be an array");
  for (const auto& c : cs) {
    cones.push_back(indices_from_json(c));
    for (std::size_t r : cones.back())
      if (r >= rays.size()) bad("cone refers to ray " + std::to_string(r));
  }
  return Fan(rank, std::move(rays), cones);
}

MonoidScheme scheme_from_json(const Json& j) {
  if (j.is_object() && j.contains("fan")) return scheme_from_fan(fan_from_json(j.at("fan")));
  if (j.is_object() && j.contains("charts")) {
    std::vector<AffineMonoid> charts;
    for (const auto& c : field(j, "charts")) charts.push_back(monoid_from_json(c));
    std::vector<Identification> ids;
    if (j.contains("identifications"))
      for (const auto& e : j.at("identifications")) {
        Identification id;
        id.chart_a = index_from_json(field(e, "chart_a"));
        id.chart_b = index_from_json(field(e, "chart_b"));
        if (id.chart_a >= charts.size() || id.chart_b >= charts.size()) bad("identification names a missing chart");
        id.invert_a = indices_from_json(field(e, "invert_a"));
        id.invert_b = indices_from_json(field(e, "invert_b"));
        id.iso = matrix_from_json(field(e, "iso"));
        ids.push_back(std::move(id));
      }
    return glue(charts, ids);
  }
  const Json& pts = field(j, "points");
  if (!pts.is_array()) bad("points must be an array");
  const std::size_t n = pts.size();
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  for (const auto& p : pts) {
    stalks.push_back(monoid_from_json(field(p, "stalk")));
    labels.push_back(p.contains("label") ? p.at("label").get<std::string>() : "x" + std::to_string(labels.size()));
  }
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  if (j.contains("order"))
    for (const auto& pair : j.at("order")) {
      auto yx = indices_from_json(pair);
      if (yx.size() != 2 || yx[0] >= n || yx[1] >= n) bad("order entries are [y, x] point pairs");
      le[yx[0]][yx[1]] = true;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (le[a][k] && le[k][b]) le[a][b] = true;
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> res;
  if (j.contains("restrictions"))
    for (const auto& r : j.at("restrictions")) {
      std::size_t from = index_from_json(field(r, "from")), to = index_from_json(field(r, "to"));
      if (from >= n || to >= n || !le[to][from]) bad("restriction between incomparable points");
      res[{from, to}] = matrix_from_json(field(r, "matrix"));
    }
  MonoidScheme x(std::move(stalks), std::move(le), std::move(res), std::move(labels));
  x.validate();
  return x;
}

Json to_json(const MonoidScheme& x) {
  Json pts = Json::array(), order = Json::array(), res = Json::array();
  for (std::size_t p = 0; p < x.size(); ++p)
    pts.push_back({{"label", x.label(p)}, {"height", x.height(p)}, {"stalk", to_json(x.stalk(p))}});
  for (std::size_t y = 0; y < x.size(); ++y)
    for (std::size_t p = 0; p < x.size(); ++p)
      if (x.lt(y, p)) order.push_back({y, p});
  for (const auto& [key, m] : x.restrictions())
    if (!m.is_identity()) res.push_back({{"from", key.first}, {"to", key.second}, {"matrix", to_json(m)}});
  return {{"points", pts}, {"order", order}, {"restrictions", res}};
}

IdealSheaf ideal_from_json(const MonoidScheme& x, const Json& j) {
  const auto maxima = x.maximal_points();
  std::map<std::size_t, std::vector<LatticeVector>> gens;
  for (const auto& e : field(j, "ideal")) {
    std::size_t k = index_from_json(field(e, "chart"));
    if (k >= maxima.size()) bad("ideal names chart " + std::to_string(k));
    gens[maxima[k]] = vectors_from_json(field(e, "generators"), x.stalk(maxima[k]).rank());
  }
  return ideal_sheaf_from_generators(x, gens);
}

Json to_json(const MonoidScheme& x, const IdealSheaf& j) {
  const auto maxima = x.maximal_points();
  Json out = Json::array();
  for (std::size_t k = 0; k < maxima.size(); ++k) {
    auto it = j.charts.find(maxima[k]);
    if (it == j.charts.end()) continue;
    Json entry = {{"chart", k}, {"unit", it->second.unit}};
    entry["generators"] = it->second.unit ? Json::array({to_json(LatticeVector(x.stalk(maxima[k]).rank()))})
                                          : vectors_to_json(it->second.ideal.generators);
    out.push_back(entry);
  }
  return {{"ideal", out}};
}

SchemeMorphism morphism_from_json(const Json& j) {
  if (j.is_object() && j.contains("fan_map")) {
    const Json& fm = j.at("fan_map");
    Fan src = fan_from_json(field(fm, "source")), tgt = fan_from_json(field(fm, "target"));
    IntMatrix phi = matrix_from_json(field(fm, "phi"));
    if (phi.rows() == 0) phi = IntMatrix(tgt.rank(), src.rank());  // maps to the point
    return morphism_from_fan_map(make_fan_morphism(src, tgt, phi));
  }
  auto src = std::make_shared<const MonoidScheme>(scheme_from_json(field(j, "source")));
  auto tgt = std::make_shared<const MonoidScheme>(scheme_from_json(field(j, "target")));
  MorphismKind kind = j.contains("kind") ? kind_from_string(j.at("kind").get<std::string>()) : MorphismKind::General;
  if (j.contains("point_map")) {
    std::vector<IntMatrix> maps;
    for (const auto& m : field(j, "stalk_maps")) maps.push_back(matrix_from_json(m));
    return make_morphism(src, tgt, indices_from_json(j.at("point_map")), std::move(maps), kind);
  }
  return morphism_from_matrix(src, tgt, matrix_from_json(field(j, "matrix")), kind);
}

Json to_json(const SchemeMorphism& f) {
  Json out = morphism_body(f);
  out["source"] = to_json(*f.source);
  out["target"] = to_json(*f.target);
  return out;
}

CartesianSquare square_from_json(const Json& j) {
  auto x = std::make_shared<const MonoidScheme>(scheme_from_json(field(j, "x")));
  SchemeMorphism e;
  if (j.contains("closed"))
    e = closed_subscheme(x, ideal_from_json(*x, j.at("closed"))).morphism;
  else if (j.contains("open"))
    e = open_subscheme(x, indices_from_json(j.at("open"))).morphism;
  else
    bad("square needs 'closed' or 'open'");
  const Json& p = field(j, "p");
  SchemeMorphism pm;
  if (p.contains("blowup")) {
    pm = blow_up(x, ideal_from_json(*x, p.at("blowup"))).pi;
  } else if (p.contains("normalization")) {
    if (x->maximal_points().size() != 1) throw Error(ErrorCode::Precondition, "normalization square needs affine X");
    Normalization nor = normalization(x->stalk(x->maximal_points()[0]));
    auto y = std::make_shared<const MonoidScheme>(from_affine(nor.monoid));
    pm = morphism_from_matrix(y, x, nor.embedding.matrix, MorphismKind::Finite);
  } else {
    auto y = std::make_shared<const MonoidScheme>(scheme_from_json(field(p, "scheme")));
    MorphismKind kind = p.contains("kind") ? kind_from_string(p.at("kind").get<std::string>()) : MorphismKind::General;
    pm = morphism_from_matrix(y, x, matrix_from_json(field(p, "matrix")), kind);
  }
  return make_square(e, pm);
}

Json to_json(const CartesianSquare& sq) {
  return {{"x", to_json(*sq.x)}, {"y", to_json(*sq.y)}, {"c", to_json(*sq.c)}, {"d", to_json(*sq.d)},
          {"p", morphism_body(sq.p)}, {"e", morphism_body(sq.e)}, {"d_to_y", morphism_body(sq.d_to_y)},
          {"d_to_c", morphism_body(sq.d_to_c)}};
}

Json to_json(const AlgebraPresentation& p) {
  Json bins = Json::array(), mons = Json::array();
  for (const auto& b : p.binomials) bins.push_back({{"lhs", exponents_to_json(b.lhs)}, {"rhs", exponents_to_json(b.rhs)}});
  for (const auto& m : p.monomials) mons.push_back(exponents_to_json(m));
  return {{"variables", p.variables}, {"generators", vectors_to_json(p.generators)}, {"binomials", bins},
          {"monomials", mons}, {"degree_bound", p.degree_bound}, {"is_domain", p.is_domain},
          {"is_reduced", p.is_reduced}, {"is_normal_claimed", p.is_normal_claimed}};
}

Json to_json(const Manifest& m) {
  Json pts = Json::array(), glues = Json::array();
  for (const auto& p : m.points)
    pts.push_back({{"label", p.label}, {"height", p.height}, {"chart", p.chart}, {"algebra", to_json(p.algebra)}});
  for (const auto& g : m.gluings) {
    Json a = Json::array(), b = Json::array();
    for (const auto& e : g.map_a) a.push_back(exponents_to_json(e));
    for (const auto& e : g.map_b) b.push_back(exponents_to_json(e));
    glues.push_back({{"chart_a", g.chart_a}, {"chart_b", g.chart_b}, {"overlap", g.overlap}, {"map_a", a}, {"map_b", b}});
  }
  return {{"points", pts}, {"gluings", glues}, {"note", m.note}};
}

std::string scheme_dot(const MonoidScheme& x) {
  std::ostringstream os;
  os << "digraph scheme {\n  rankdir=BT;\n";
  for (std::size_t p = 0; p < x.size(); ++p)
    os << "  p" << p << " [label=\"" << x.label(p) << "\\nh=" << x.height(p) << "\"];\n";
  for (std::size_t y = 0; y < x.size(); ++y)
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (!x.lt(y, p)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < x.size() && cover; ++z)
        if (x.lt(y, z) && x.lt(z, p)) cover = false;
      if (cover) os << "  p" << y << " -> p" << p << ";\n";
    }
  os << "}\n";
  return os.str();
}

std::string fan_dot(const Fan& f) {
  std::ostringstream os;
  os << "digraph fan {\n  rankdir=BT;\n";
  const auto& cs = f.cones();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    os << "  c" << c << " [label=\"{";
    for (std::size_t k = 0; k < cs[c].size(); ++k) os << (k ? "," : "") << cs[c][k];
    os << "}\\ndim=" << f.dim(c) << "\"];\n";
  }
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b)
      if (a != b && f.is_face(a, b) && f.dim(b) == f.dim(a) + 1) os << "  c" << a << " -> c" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace msch
