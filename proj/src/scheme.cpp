#include "msch/scheme.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace msch {

MonoidScheme::MonoidScheme(std::vector<AffineMonoid> stalks, std::vector<std::vector<bool>> le,
                           std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions,
                           std::vector<std::string> labels)
    : stalks_(std::move(stalks)), le_(std::move(le)), labels_(std::move(labels)) {
  const std::size_t n = stalks_.size();
  if (le_.size() != n) throw Error(ErrorCode::Precondition, "order matrix size mismatch");
  for (auto& [key, m] : restrictions)
    if (!m.is_identity()) restrictions_.emplace(key, std::move(m));
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("x" + std::to_string(i));
  for (std::size_t x = 0; x < n; ++x) {
    if (!le_[x][x]) throw Error(ErrorCode::Precondition, "order must be reflexive");
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && le_[x][y] && le_[y][x]) throw Error(ErrorCode::BadGluing, "order is not antisymmetric");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto below = [&](std::size_t x) { return std::count_if(le_.begin(), le_.end(), [&](const auto& row) { return row[x]; }); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below(a) < below(b); });
  heights_.assign(n, 0);
  for (std::size_t x : order)
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && le_[y][x]) heights_[x] = std::max(heights_[x], heights_[y] + 1);
}

const IntMatrix* MonoidScheme::restriction(std::size_t x, std::size_t y) const {
  auto it = restrictions_.find({x, y});
  return it == restrictions_.end() ? nullptr : &it->second;
}

IntMatrix MonoidScheme::restriction_matrix(std::size_t x, std::size_t y) const {
  if (const IntMatrix* m = restriction(x, y)) return *m;
  return IntMatrix::identity(stalks_[x].rank());
}

LatticeVector MonoidScheme::restrict(std::size_t x, std::size_t y, const LatticeVector& v) const {
  const IntMatrix* m = restriction(x, y);
  return m ? *m * v : v;
}

std::vector<std::size_t> MonoidScheme::maximal_points() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x) {
    bool maximal = true;
    for (std::size_t y = 0; y < size() && maximal; ++y)
      if (lt(x, y)) maximal = false;
    if (maximal) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> MonoidScheme::minimal_points() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x) {
    bool minimal = true;
    for (std::size_t y = 0; y < size() && minimal; ++y)
      if (lt(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> MonoidScheme::down_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < size(); ++y)
    if (le_[y][x]) out.push_back(y);
  return out;
}

std::vector<std::size_t> MonoidScheme::up_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < size(); ++y)
    if (le_[x][y]) out.push_back(y);
  return out;
}

std::size_t MonoidScheme::dimension() const {
  std::size_t d = 0;
  for (std::size_t h : heights_) d = std::max(d, h);
  return d;
}

std::size_t MonoidScheme::chart_prime(std::size_t x, std::size_t y) const {
  if (!le_[y][x]) throw Error(ErrorCode::Precondition, "point is not below the chart");
  const AffineMonoid& ax = stalks_[x];
  const AffineMonoid& ay = stalks_[y];
  std::vector<std::size_t> face;
  for (std::size_t i = 0; i < ax.generators().size(); ++i)
    if (ay.is_unit(restrict(x, y, ax.generators()[i]))) face.push_back(i);
  const auto& ps = ax.mspec();
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].face == face) return i;
  throw Error(ErrorCode::BadGluing, "point " + labels_[y] + " matches no prime of " + labels_[x]);
}

bool MonoidScheme::is_embedded() const {
  if (!restrictions_.empty()) return false;
  for (const auto& s : stalks_)
    if (s.rank() != stalks_.front().rank()) return false;
  return true;
}

std::size_t MonoidScheme::ambient_rank() const { return stalks_.empty() ? 0 : stalks_.front().rank(); }

bool MonoidScheme::is_cancellative() const {
  return std::all_of(stalks_.begin(), stalks_.end(), [](const AffineMonoid& a) { return a.is_cancellative(); });
}

bool MonoidScheme::is_reduced() const {
  for (std::size_t x : maximal_points())
    if (!msch::is_reduced(stalks_[x])) return false;
  return true;
}

void MonoidScheme::validate() const {
  for (std::size_t x = 0; x < size(); ++x) {
    const auto down = down_set(x);
    const auto& primes = stalks_[x].mspec();
    if (down.size() != primes.size())
      throw Error(ErrorCode::BadGluing, "down-set of " + labels_[x] + " does not match its spectrum");
    std::vector<std::size_t> idx;
    for (std::size_t y : down) idx.push_back(chart_prime(x, y));
    if (std::set<std::size_t>(idx.begin(), idx.end()).size() != idx.size())
      throw Error(ErrorCode::BadGluing, "two points share a prime of " + labels_[x]);
    for (std::size_t a = 0; a < down.size(); ++a) {
      for (std::size_t b = 0; b < down.size(); ++b)
        if (le_[down[a]][down[b]] != prime_le(primes[idx[a]], primes[idx[b]]))
          throw Error(ErrorCode::BadGluing, "order disagrees with the spectrum of " + labels_[x]);
      MonoidMap m{stalks_[x].localize(primes[idx[a]]), stalks_[down[a]], restriction_matrix(x, down[a])};
      if (!is_isomorphism(m))
        throw Error(ErrorCode::BadGluing, "stalk at " + labels_[down[a]] + " is not a localization of " + labels_[x]);
    }
    // transitions compose
    for (std::size_t y : down)
      for (std::size_t z : down)
        if (le_[z][y] && restriction_matrix(y, z) * restriction_matrix(x, y) != restriction_matrix(x, z)) {
          // only the action on the group matters
          for (const auto& b : stalks_[x].group().basis())
            if (restrict(y, z, restrict(x, y, b)) != restrict(x, z, b))
              throw Error(ErrorCode::BadGluing, "restrictions do not compose");
        }
  }
}

MonoidScheme from_affine(const AffineMonoid& a) {
  const auto& primes = a.mspec();
  const std::size_t n = primes.size();
  std::vector<AffineMonoid> stalks;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    stalks.push_back(a.localize(primes[i]));
    for (std::size_t j = 0; j < n; ++j) le[i][j] = prime_le(primes[i], primes[j]);
  }
  return MonoidScheme(std::move(stalks), std::move(le));
}

namespace {

struct Node {
  std::size_t chart;
  std::size_t prime;
};

}  // namespace

MonoidScheme glue(const std::vector<AffineMonoid>& charts, const std::vector<Identification>& identifications) {
  std::vector<Node> nodes;
  std::vector<std::size_t> offset;
  for (std::size_t c = 0; c < charts.size(); ++c) {
    offset.push_back(nodes.size());
    for (std::size_t p = 0; p < charts[c].mspec().size(); ++p) nodes.push_back({c, p});
  }
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<IntMatrix> to_parent;
  for (const auto& nd : nodes) to_parent.push_back(IntMatrix::identity(charts[nd.chart].rank()));

  // root of a node together with the lattice map chart(node) -> chart(root)
  auto find = [&](std::size_t v) {
    IntMatrix acc = IntMatrix::identity(charts[nodes[v].chart].rank());
    while (parent[v] != v) {
      acc = to_parent[v] * acc;
      v = parent[v];
    }
    return std::make_pair(v, acc);
  };

  for (const auto& id : identifications) {
    if (id.chart_a >= charts.size() || id.chart_b >= charts.size())
      throw Error(ErrorCode::BadGluing, "identification names a missing chart");
    const AffineMonoid& a = charts[id.chart_a];
    const AffineMonoid& b = charts[id.chart_b];
    if (id.iso.rows() != b.rank() || id.iso.cols() != a.rank() || a.rank() != b.rank() ||
        abs(determinant(id.iso)) != 1)
      throw Error(ErrorCode::BadGluing, "identification map is not a lattice isomorphism");
    AffineMonoid la = a.invert(id.invert_a);
    AffineMonoid lb = b.invert(id.invert_b);
    if (!is_isomorphism(MonoidMap{la, lb, id.iso}))
      throw Error(ErrorCode::BadGluing, "identification does not carry one localization onto the other");
    const auto& lgens = la.generators();
    auto in_open = [](const PrimeIdeal& p, const std::vector<std::size_t>& inv) {
      return std::all_of(inv.begin(), inv.end(),
                         [&](std::size_t i) { return std::binary_search(p.face.begin(), p.face.end(), i); });
    };
    for (std::size_t pi = 0; pi < a.mspec().size(); ++pi) {
      const PrimeIdeal& p = a.mspec()[pi];
      if (!in_open(p, id.invert_a)) continue;
      std::vector<bool> sig_p;
      for (const auto& g : lgens) sig_p.push_back(dot(p.functional, g) == 0);
      std::optional<std::size_t> match;
      for (std::size_t qi = 0; qi < b.mspec().size(); ++qi) {
        const PrimeIdeal& q = b.mspec()[qi];
        if (!in_open(q, id.invert_b)) continue;
        std::vector<bool> sig_q;
        for (const auto& g : lgens) sig_q.push_back(dot(q.functional, id.iso * g) == 0);
        if (sig_q == sig_p) {
          match = qi;
          break;
        }
      }
      if (!match) throw Error(ErrorCode::BadGluing, "a point of the overlap has no partner");
      auto [ra, ma] = find(offset[id.chart_a] + pi);
      auto [rb, mb] = find(offset[id.chart_b] + *match);
      if (ra == rb) {
        for (const auto& v : a.group().basis())
          if (ma * v != mb * (id.iso * v)) throw Error(ErrorCode::BadGluing, "identifications are not transitive");
        continue;
      }
      parent[ra] = rb;
      to_parent[ra] = mb * id.iso * unimodular_inverse(ma);
    }
  }

  std::map<std::size_t, std::size_t> cls;
  std::vector<std::size_t> node_point(nodes.size());
  std::vector<IntMatrix> node_map;
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    auto [r, m] = find(v);
    auto it = cls.find(r);
    if (it == cls.end()) {
      it = cls.emplace(r, roots.size()).first;
      roots.push_back(r);
    }
    node_point[v] = it->second;
    node_map.push_back(m);
  }
  const std::size_t n = roots.size();
  for (std::size_t c = 0; c < charts.size(); ++c) {
    std::set<std::size_t> seen;
    for (std::size_t p = 0; p < charts[c].mspec().size(); ++p)
      if (!seen.insert(node_point[offset[c] + p]).second)
        throw Error(ErrorCode::BadGluing, "gluing identifies two points of one chart");
  }

  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  for (std::size_t r : roots) {
    const Node& nd = nodes[r];
    stalks.push_back(charts[nd.chart].localize(charts[nd.chart].mspec()[nd.prime]));
    labels.push_back("c" + std::to_string(nd.chart) + "p" + std::to_string(nd.prime));
  }
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions;
  for (std::size_t c = 0; c < charts.size(); ++c) {
    const auto& ps = charts[c].mspec();
    for (std::size_t p = 0; p < ps.size(); ++p)
      for (std::size_t q = 0; q < ps.size(); ++q) {
        if (!prime_le(ps[p], ps[q])) continue;
        std::size_t y = node_point[offset[c] + p], x = node_point[offset[c] + q];
        le[y][x] = true;
        if (!restrictions.count({x, y}))
          restrictions.emplace(std::make_pair(x, y),
                               node_map[offset[c] + p] * unimodular_inverse(node_map[offset[c] + q]));
      }
  }
  MonoidScheme out(std::move(stalks), std::move(le), std::move(restrictions), std::move(labels));
  out.validate();
  return out;
}

MonoidScheme glue_embedded(const std::vector<AffineMonoid>& charts, const std::vector<std::vector<std::string>>& keys,
                           std::vector<std::vector<std::size_t>>* point_of_out) {
  struct Cls {
    AffineMonoid stalk;
    std::string key;
    std::string label;
  };
  std::vector<Cls> classes;
  std::vector<std::vector<std::size_t>> point_of(charts.size());
  for (std::size_t c = 0; c < charts.size(); ++c) {
    if (charts[c].rank() != charts.front().rank()) throw Error(ErrorCode::Precondition, "charts of different ranks");
    const auto& ps = charts[c].mspec();
    for (std::size_t p = 0; p < ps.size(); ++p) {
      AffineMonoid loc = charts[c].localize(ps[p]);
      std::string key = keys.empty() ? std::string() : keys.at(c).at(p);
      std::optional<std::size_t> found;
      for (std::size_t k = 0; k < classes.size() && !found; ++k) {
        const Cls& cl = classes[k];
        if (cl.key != key || cl.stalk.unit_lattice().rank() != loc.unit_lattice().rank()) continue;
        if (cl.stalk == loc) found = k;
      }
      if (!found) {
        found = classes.size();
        classes.push_back({loc, key, "c" + std::to_string(c) + "p" + std::to_string(p)});
      }
      point_of[c].push_back(*found);
    }
  }
  const std::size_t n = classes.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t c = 0; c < charts.size(); ++c) {
    const auto& ps = charts[c].mspec();
    for (std::size_t p = 0; p < ps.size(); ++p)
      for (std::size_t q = 0; q < ps.size(); ++q)
        if (prime_le(ps[p], ps[q])) le[point_of[c][p]][point_of[c][q]] = true;
  }
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  if (point_of_out) *point_of_out = point_of;
  for (auto& cl : classes) {
    stalks.push_back(cl.stalk);
    labels.push_back(cl.label);
  }
  return MonoidScheme(std::move(stalks), std::move(le), {}, std::move(labels));
}

MonoidScheme restrict_to(const MonoidScheme& x, const std::vector<std::size_t>& points) {
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  const std::size_t n = points.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions;
  for (std::size_t i = 0; i < n; ++i) {
    stalks.push_back(x.stalk(points[i]));
    labels.push_back(x.label(points[i]));
    for (std::size_t j = 0; j < n; ++j) {
      le[i][j] = x.le(points[i], points[j]);
      if (const IntMatrix* m = x.restriction(points[j], points[i])) restrictions.emplace(std::make_pair(j, i), *m);
    }
  }
  return MonoidScheme(std::move(stalks), std::move(le), std::move(restrictions), std::move(labels));
}

SeparatedResult is_separated(const MonoidScheme& x) {
  const auto maxima = x.maximal_points();
  for (std::size_t i = 0; i < maxima.size(); ++i)
    for (std::size_t j = i + 1; j < maxima.size(); ++j) {
      const std::size_t x1 = maxima[i], x2 = maxima[j];
      std::vector<std::size_t> common;
      for (std::size_t y = 0; y < x.size(); ++y)
        if (x.le(y, x1) && x.le(y, x2)) common.push_back(y);
      if (common.empty()) continue;
      std::optional<std::size_t> glb;
      for (std::size_t y : common)
        if (std::all_of(common.begin(), common.end(), [&](std::size_t z) { return x.le(z, y); })) glb = y;
      if (!glb) return {false, std::make_pair(x1, x2), "no greatest lower bound"};
      const AffineMonoid& a0 = x.stalk(*glb);
      std::vector<LatticeVector> images;
      for (const auto& g : x.stalk(x1).generators()) images.push_back(x.restrict(x1, *glb, g));
      for (const auto& g : x.stalk(x2).generators()) images.push_back(x.restrict(x2, *glb, g));
      AffineMonoid generated(a0.rank(), images);
      for (const auto& g : a0.generators())
        if (!generated.in_semigroup(g)) return {false, std::make_pair(x1, x2), "stalk map is not surjective"};
    }
  return {};
}

std::vector<MonoidScheme> components(const MonoidScheme& x) {
  if (!x.is_cancellative()) throw Error(ErrorCode::NotCancellative, "components need a cancellative scheme");
  std::vector<MonoidScheme> out;
  for (std::size_t eta : x.minimal_points()) out.push_back(restrict_to(x, x.up_set(eta)));
  return out;
}

bool is_smooth_monoid(const AffineMonoid& a) {
  if (!a.is_cancellative()) throw Error(ErrorCode::NotCancellative, "smoothness needs a cancellative stalk");
  std::vector<LatticeVector> basis = a.units();
  for (const auto& g : a.minimal_nonunit_generators()) basis.push_back(g);
  const Sublattice& grp = a.group();
  if (basis.size() != grp.rank()) return false;
  std::vector<LatticeVector> rows;
  for (const auto& b : basis) rows.push_back(LatticeVector(*grp.coordinates(b)));
  return abs(determinant(IntMatrix::from_rows(rows, grp.rank()))) == 1;
}

std::vector<bool> smooth_points(const MonoidScheme& x) {
  std::vector<bool> out;
  for (std::size_t p = 0; p < x.size(); ++p) out.push_back(is_smooth_monoid(x.stalk(p)));
  return out;
}

bool is_smooth(const MonoidScheme& x) {
  for (std::size_t p : x.maximal_points())
    if (!is_smooth_monoid(x.stalk(p))) return false;
  return true;
}

ChartIdeal localize_ideal(const MonoidScheme& x, const ChartIdeal& j, std::size_t chart, std::size_t y) {
  if (j.unit) return j;
  const AffineMonoid& ay = x.stalk(y);
  std::vector<LatticeVector> gens;
  for (const auto& g : j.ideal.generators) {
    LatticeVector h = x.restrict(chart, y, g);
    if (ay.is_unit(h)) return {true, {}};
    gens.push_back(h);
  }
  return {false, make_ideal(ay, gens)};
}

namespace {

bool same_ideal(const AffineMonoid& a, const ChartIdeal& i, const ChartIdeal& j) {
  if (i.unit || j.unit) return i.unit == j.unit;
  auto inside = [&](const ChartIdeal& s, const ChartIdeal& t) {
    return std::all_of(s.ideal.generators.begin(), s.ideal.generators.end(),
                       [&](const LatticeVector& g) { return in_ideal(a, t.ideal, g); });
  };
  return inside(i, j) && inside(j, i);
}

}  // namespace

void validate_ideal_sheaf(const MonoidScheme& x, const IdealSheaf& j) {
  const auto maxima = x.maximal_points();
  for (std::size_t m : maxima)
    if (!j.charts.count(m)) throw Error(ErrorCode::BadIdealSheaf, "no ideal given on chart " + x.label(m));
  for (std::size_t a = 0; a < maxima.size(); ++a)
    for (std::size_t b = a + 1; b < maxima.size(); ++b)
      for (std::size_t y = 0; y < x.size(); ++y) {
        if (!x.le(y, maxima[a]) || !x.le(y, maxima[b])) continue;
        ChartIdeal ia = localize_ideal(x, j.charts.at(maxima[a]), maxima[a], y);
        ChartIdeal ib = localize_ideal(x, j.charts.at(maxima[b]), maxima[b], y);
        if (!same_ideal(x.stalk(y), ia, ib))
          throw Error(ErrorCode::BadIdealSheaf, "chart ideals disagree at " + x.label(y));
      }
}

namespace {

std::size_t some_chart_above(const MonoidScheme& x, std::size_t y) {
  for (std::size_t m : x.maximal_points())
    if (x.le(y, m)) return m;
  throw Error(ErrorCode::Precondition, "point lies in no chart");
}

}  // namespace

std::vector<std::size_t> vanishing_locus(const MonoidScheme& x, const IdealSheaf& j) {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < x.size(); ++y) {
    std::size_t m = some_chart_above(x, y);
    if (!localize_ideal(x, j.charts.at(m), m, y).unit) out.push_back(y);
  }
  return out;
}

Subscheme closed_subscheme_points(const MonoidScheme& x, const IdealSheaf& j) {
  validate_ideal_sheaf(x, j);
  std::vector<std::size_t> pts = vanishing_locus(x, j);
  MonoidScheme base = restrict_to(x, pts);
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t m = some_chart_above(x, pts[i]);
    ChartIdeal loc = localize_ideal(x, j.charts.at(m), m, pts[i]);
    stalks.push_back(quotient_by_ideal(x.stalk(pts[i]), loc.ideal));
    labels.push_back(base.label(i));
    for (std::size_t k = 0; k < n; ++k) le[i][k] = base.le(i, k);
  }
  return {MonoidScheme(std::move(stalks), std::move(le), base.restrictions(), std::move(labels)), pts};
}

Closure equivariant_closure(const MonoidScheme& x, const std::vector<std::size_t>& z) {
  IdealSheaf sheaf;
  for (std::size_t m : x.maximal_points()) {
    std::vector<PrimeIdeal> primes;
    for (std::size_t p : z)
      if (x.le(p, m)) primes.push_back(x.stalk(m).mspec()[x.chart_prime(m, p)]);
    if (primes.empty()) {
      sheaf.charts[m] = {true, {}};
      continue;
    }
    MonoidIdeal inter = intersect_primes(x.stalk(m), primes);
    sheaf.charts[m] = {false, make_ideal(x.stalk(m), inter.generators)};
  }
  return {closed_subscheme_points(x, sheaf), sheaf};
}

IdealSheaf ideal_sheaf_from_generators(const MonoidScheme& x,
                                       const std::map<std::size_t, std::vector<LatticeVector>>& gens) {
  IdealSheaf sheaf;
  for (const auto& [m, list] : gens) {
    if (m >= x.size()) throw Error(ErrorCode::BadIdealSheaf, "ideal given on a missing point");
    const AffineMonoid& a = x.stalk(m);
    bool unit = std::any_of(list.begin(), list.end(), [&](const LatticeVector& g) { return a.is_unit(g); });
    for (const auto& g : list)
      if (a.member(g) == Membership::Outside) throw Error(ErrorCode::BadIdealSheaf, g.str() + " is not a section");
    sheaf.charts[m] = unit ? ChartIdeal{true, {}} : ChartIdeal{false, make_ideal(a, list)};
  }
  validate_ideal_sheaf(x, sheaf);
  return sheaf;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const MonoidScheme& x, const MonoidScheme& y,
                                                         const std::optional<IntMatrix>& lattice) {
  if (x.size() != y.size()) return std::nullopt;
  if (!x.restrictions().empty() || !y.restrictions().empty())
    throw Error(ErrorCode::Precondition, "isomorphism search needs identity restrictions");
  const std::size_t n = x.size();
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t p = 0; p < n; ++p) {
    const AffineMonoid& a = x.stalk(p);
    IntMatrix l = lattice ? *lattice : IntMatrix::identity(a.rank());
    if (l.cols() != a.rank()) throw Error(ErrorCode::Precondition, "lattice map has the wrong shape");
    std::vector<LatticeVector> gens, ideal;
    for (const auto& g : a.generators()) gens.push_back(l * g);
    for (const auto& g : a.ideal_generators()) ideal.push_back(l * g);
    AffineMonoid image(l.rows(), gens, ideal);
    for (std::size_t q = 0; q < n; ++q)
      if (x.height(p) == y.height(q) && y.stalk(q).rank() == image.rank() && y.stalk(q) == image)
        candidates[p].push_back(q);
    if (candidates[p].empty()) return std::nullopt;
  }
  std::vector<std::size_t> assign(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t p) -> bool {
    if (p == n) return true;
    for (std::size_t q : candidates[p]) {
      if (used[q]) continue;
      bool ok = true;
      for (std::size_t r = 0; r < p && ok; ++r)
        ok = x.le(r, p) == y.le(assign[r], q) && x.le(p, r) == y.le(q, assign[r]);
      if (!ok) continue;
      used[q] = true;
      assign[p] = q;
      if (self(self, p + 1)) return true;
      used[q] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return assign;
}

MonoidScheme product(const MonoidScheme& x, const MonoidScheme& y) {
  const std::size_t n = x.size() * y.size();
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions;
  auto idx = [&](std::size_t a, std::size_t b) { return a * y.size() + b; };
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) {
      stalks.push_back(smash(x.stalk(a), y.stalk(b)));
      labels.push_back("(" + x.label(a) + "," + y.label(b) + ")");
    }
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      for (std::size_t c = 0; c < x.size(); ++c)
        for (std::size_t d = 0; d < y.size(); ++d) {
          if (!x.le(c, a) || !y.le(d, b)) continue;
          le[idx(c, d)][idx(a, b)] = true;
          const IntMatrix* mx = x.restriction(a, c);
          const IntMatrix* my = y.restriction(b, d);
          if (!mx && !my) continue;
          IntMatrix rx = x.restriction_matrix(a, c), ry = y.restriction_matrix(b, d);
          IntMatrix block(rx.rows() + ry.rows(), rx.cols() + ry.cols());
          for (std::size_t i = 0; i < rx.rows(); ++i)
            for (std::size_t j = 0; j < rx.cols(); ++j) block(i, j) = rx(i, j);
          for (std::size_t i = 0; i < ry.rows(); ++i)
            for (std::size_t j = 0; j < ry.cols(); ++j) block(rx.rows() + i, rx.cols() + j) = ry(i, j);
          restrictions.emplace(std::make_pair(idx(a, b), idx(c, d)), std::move(block));
        }
  return MonoidScheme(std::move(stalks), std::move(le), std::move(restrictions), std::move(labels));
}

}  // namespace msch
