#include "msch/scheme_ops.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <set>

namespace msch {

Immersion closed_subscheme(std::shared_ptr<const MonoidScheme> x, const IdealSheaf& j) {
  Subscheme sub = closed_subscheme_points(*x, j);
  auto z = std::make_shared<const MonoidScheme>(std::move(sub.scheme));
  std::vector<IntMatrix> maps;
  for (std::size_t p : sub.points) maps.push_back(IntMatrix::identity(x->stalk(p).rank()));
  return {z, make_morphism(z, x, sub.points, std::move(maps), MorphismKind::ClosedImmersion)};
}

Immersion open_subscheme(std::shared_ptr<const MonoidScheme> x, const std::vector<std::size_t>& points) {
  std::set<std::size_t> s(points.begin(), points.end());
  for (std::size_t p : points)
    for (std::size_t q : x->down_set(p))
      if (!s.count(q)) throw Error(ErrorCode::Precondition, "point set is not open");
  auto u = std::make_shared<const MonoidScheme>(restrict_to(*x, points));
  std::vector<IntMatrix> maps;
  for (std::size_t p : points) maps.push_back(IntMatrix::identity(x->stalk(p).rank()));
  return {u, make_morphism(u, x, points, std::move(maps), MorphismKind::OpenImmersion)};
}

namespace {

struct Preimage {
  std::vector<std::size_t> points;
  std::optional<std::size_t> top;
};

Preimage preimage_of_chart(const SchemeMorphism& f, std::size_t x) {
  Preimage out;
  for (std::size_t p = 0; p < f.source->size(); ++p)
    if (f.target->le(f.point_map[p], x)) out.points.push_back(p);
  for (std::size_t t : out.points)
    if (std::all_of(out.points.begin(), out.points.end(), [&](std::size_t q) { return f.source->le(q, t); }))
      out.top = t;
  return out;
}

}  // namespace

IdealSheaf ideal_of_immersion(const SchemeMorphism& f) {
  if (!is_equivariant(f)) throw Error(ErrorCode::Precondition, "not an equivariant closed immersion");
  IdealSheaf sheaf;
  for (std::size_t x : f.target->maximal_points()) {
    Preimage pre = preimage_of_chart(f, x);
    if (!pre.top) {
      sheaf.charts[x] = {true, {}};
      continue;
    }
    const AffineMonoid& a = f.target->stalk(x);
    const AffineMonoid& b = f.source->stalk(*pre.top);
    IntMatrix n = f.stalk_maps[*pre.top] * f.target->restriction_matrix(x, f.point_map[*pre.top]);
    std::vector<LatticeVector> images;
    for (const auto& g : a.generators()) images.push_back(n * g);
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < images.size(); ++i)
      if (b.in_ideal(images[i])) gens.push_back(a.generators()[i]);
    AffineMonoid generated(b.rank(), images);
    for (const auto& h : b.ideal_generators()) {
      auto mult = generated.decompose(h);
      if (!mult) throw Error(ErrorCode::Precondition, "immersion is not surjective on a chart");
      LatticeVector lift(a.rank());
      for (std::size_t k = 0; k < mult->size(); ++k) {
        if ((*mult)[k] == 0) continue;
        auto it = std::find(images.begin(), images.end(), generated.generators()[k]);
        lift += (*mult)[k] * a.generators()[static_cast<std::size_t>(it - images.begin())];
      }
      gens.push_back(lift);
    }
    sheaf.charts[x] = {false, make_ideal(a, gens)};
  }
  return sheaf;
}

SchemeImage scheme_theoretic_image(const SchemeMorphism& f) {
  const MonoidScheme& y = *f.source;
  const MonoidScheme& x = *f.target;
  if (!y.is_embedded() || !x.is_embedded() || !y.is_cancellative() || !x.is_cancellative())
    throw Error(ErrorCode::Precondition, "image needs embedded cancellative schemes");
  const std::size_t ny = y.ambient_rank();
  std::vector<AffineMonoid> charts;
  std::vector<IntMatrix> chart_map;
  std::vector<std::vector<std::string>> keys;
  std::vector<std::vector<std::size_t>> key_points;
  for (std::size_t m : x.maximal_points()) {
    Preimage pre = preimage_of_chart(f, m);
    if (pre.points.empty()) continue;
    std::size_t minimal = 0, count = 0;
    for (std::size_t p : pre.points)
      if (std::none_of(pre.points.begin(), pre.points.end(), [&](std::size_t q) { return y.lt(q, p); })) {
        minimal = p;
        ++count;
      }
    if (count != 1) throw Error(ErrorCode::Precondition, "preimage of chart " + x.label(m) + " is reducible");
    const IntMatrix& n = f.stalk_maps[minimal];
    std::vector<LatticeVector> images;
    for (const auto& g : x.stalk(m).generators()) images.push_back(n * g);
    AffineMonoid img(ny, images);
    MonoidMap q{x.stalk(m), img, n};
    std::vector<std::string> k;
    std::vector<std::size_t> kp;
    for (const auto& p : img.mspec()) {
      PrimeIdeal back = pullback_prime(q, p);
      std::size_t idx = prime_index(x.stalk(m), back);
      std::optional<std::size_t> point;
      for (std::size_t z : x.down_set(m))
        if (x.chart_prime(m, z) == idx) point = z;
      kp.push_back(*point);
      k.push_back(std::to_string(*point));
    }
    charts.push_back(std::move(img));
    chart_map.push_back(n);
    keys.push_back(std::move(k));
    key_points.push_back(std::move(kp));
  }
  std::vector<std::vector<std::size_t>> point_of;
  auto z = std::make_shared<const MonoidScheme>(glue_embedded(charts, keys, &point_of));
  std::vector<std::size_t> zx(z->size());
  std::vector<IntMatrix> zmaps(z->size());
  for (std::size_t c = 0; c < charts.size(); ++c)
    for (std::size_t p = 0; p < point_of[c].size(); ++p) {
      zx[point_of[c][p]] = key_points[c][p];
      zmaps[point_of[c][p]] = chart_map[c];
    }
  SchemeMorphism imm = make_morphism(z, f.target, zx, zmaps, MorphismKind::ClosedImmersion);

  std::vector<std::size_t> yz;
  std::vector<IntMatrix> ymaps;
  for (std::size_t p = 0; p < y.size(); ++p) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < z->size() && !hit; ++i) {
      if (zx[i] != f.point_map[p]) continue;
      const AffineMonoid& a = z->stalk(i);
      bool local = true;
      for (const auto& g : a.generators()) {
        Membership mem = y.stalk(p).member(g);
        if (mem == Membership::Outside || (!a.is_unit(g) && y.stalk(p).is_unit(g))) local = false;
      }
      if (local) hit = i;
    }
    if (!hit) throw Error(ErrorCode::InvalidMorphism, "source point " + y.label(p) + " misses the image");
    yz.push_back(*hit);
    ymaps.push_back(IntMatrix::identity(ny));
  }
  SchemeMorphism factor = make_morphism(f.source, z, yz, ymaps);
  return {z, std::move(imm), std::move(factor)};
}

IdealSheaf pullback_ideal(const SchemeMorphism& f, const IdealSheaf& j) {
  const MonoidScheme& x = *f.target;
  const MonoidScheme& z = *f.source;
  IdealSheaf pulled;
  for (std::size_t m : z.maximal_points()) {
    const std::size_t q = f.point_map[m];
    std::optional<std::size_t> chart;
    for (const auto& [c, ideal] : j.charts)
      if (x.le(q, c)) chart = c;
    if (!chart) throw Error(ErrorCode::BadIdealSheaf, "ideal sheaf misses a chart");
    ChartIdeal loc = localize_ideal(x, j.charts.at(*chart), *chart, q);
    if (loc.unit) {
      pulled.charts[m] = {true, {}};
      continue;
    }
    std::vector<LatticeVector> gens;
    for (const auto& g : loc.ideal.generators) gens.push_back(f.stalk_maps[m] * g);
    pulled.charts[m] = {false, make_ideal(z.stalk(m), gens)};
  }
  return pulled;
}

namespace {

std::vector<std::size_t> over_image(const SchemeMorphism& open, const SchemeMorphism& other) {
  std::set<std::size_t> image(open.point_map.begin(), open.point_map.end());
  std::vector<std::size_t> pts;
  for (std::size_t p = 0; p < other.source->size(); ++p)
    if (image.count(other.point_map[p])) pts.push_back(p);
  return pts;
}

MonoidScheme pull_closed(const SchemeMorphism& closed, const SchemeMorphism& other) {
  return closed_subscheme_points(*other.source, pullback_ideal(other, ideal_of_immersion(closed))).scheme;
}

}  // namespace

MonoidScheme fiber_product(const SchemeMorphism& f, const SchemeMorphism& g) {
  if (f.target->size() != g.target->size()) throw Error(ErrorCode::Precondition, "legs have different targets");
  if (is_open_immersion(f)) return restrict_to(*g.source, over_image(f, g));
  if (is_open_immersion(g)) return restrict_to(*f.source, over_image(g, f));
  if (is_equivariant(f)) return pull_closed(f, g);
  if (is_equivariant(g)) return pull_closed(g, f);
  throw Error(ErrorCode::UnsupportedPullback, "neither leg is an open or equivariant closed immersion");
}

}  // namespace msch
