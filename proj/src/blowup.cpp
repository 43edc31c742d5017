#include "msch/blowup.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace msch {

GradedAffineMonoid make_graded(AffineMonoid base, LatticeVector degree) {
  if (degree.rank() != base.rank()) throw Error(ErrorCode::Precondition, "degree has the wrong rank");
  for (const auto& g : base.generators())
    if (dot(degree, g) < 0) throw Error(ErrorCode::Precondition, "generator of negative degree " + g.str());
  return {std::move(base), std::move(degree)};
}

GradedAffineMonoid rees_monoid(const AffineMonoid& a, const MonoidIdeal& center) {
  const std::size_t n = a.rank();
  std::vector<LatticeVector> gens, ideal;
  for (const auto& g : a.generators()) gens.push_back(concat(g, LatticeVector{0}));
  for (const auto& g : center.generators) gens.push_back(concat(g, LatticeVector{1}));
  for (const auto& g : a.ideal_generators()) ideal.push_back(concat(g, LatticeVector{0}));
  return make_graded(AffineMonoid(n + 1, std::move(gens), std::move(ideal)), LatticeVector::unit(n + 1, n));
}

AffineMonoid degree_zero_localization(const GradedAffineMonoid& a, const std::vector<std::size_t>& face) {
  const auto& gens = a.base.generators();
  std::optional<std::size_t> s;
  for (std::size_t i : face) {
    Int d = dot(a.degree, gens[i]);
    if (d > 0 && (!s || d < dot(a.degree, gens[*s]))) s = i;
  }
  if (!s) throw Error(ErrorCode::Precondition, "face has no generator of positive degree");
  const LatticeVector& sv = gens[*s];
  const Int d = dot(a.degree, sv);
  const long dl = static_cast<long>(d);

  std::set<LatticeVector> out;
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (dot(a.degree, gens[i]) == 0) out.insert(gens[i]);
    else positive.push_back(i);
  }
  // Minimal zero-sum sequences mod d have at most d terms.
  LatticeVector acc(a.base.rank());
  std::function<void(std::size_t, long, Int)> walk = [&](std::size_t from, long left, Int deg) {
    if (deg > 0 && deg % d == 0) {
      LatticeVector v = acc - (deg / d) * sv;
      if (!v.is_zero()) out.insert(v);
    }
    if (left == 0) return;
    for (std::size_t k = from; k < positive.size(); ++k) {
      acc += gens[positive[k]];
      walk(k, left - 1, deg + dot(a.degree, gens[positive[k]]));
      acc -= gens[positive[k]];
    }
  };
  walk(0, dl, Int(0));
  for (std::size_t i : face) out.insert(-(d * gens[i] - dot(a.degree, gens[i]) * sv));
  out.erase(LatticeVector(a.base.rank()));
  return AffineMonoid(a.base.rank(), std::vector<LatticeVector>(out.begin(), out.end()));
}

namespace {

std::string face_label(const std::vector<std::size_t>& face) {
  std::string s = "D+{";
  for (std::size_t i = 0; i < face.size(); ++i) s += (i ? "," : "") + std::to_string(face[i]);
  return s + "}";
}

}  // namespace

ProjResult mproj(const GradedAffineMonoid& a) {
  if (!a.base.is_cancellative()) throw Error(ErrorCode::NotCancellative, "mproj needs a cancellative monoid");
  const auto& gens = a.base.generators();
  std::vector<const PrimeIdeal*> relevant;
  for (const auto& p : a.base.mspec())
    if (std::any_of(p.face.begin(), p.face.end(), [&](std::size_t i) { return dot(a.degree, gens[i]) > 0; }))
      relevant.push_back(&p);
  if (relevant.empty()) throw Error(ErrorCode::EmptyProj, "every relevant element is nilpotent or of degree 0");
  const std::size_t n = relevant.size();
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    stalks.push_back(degree_zero_localization(a, relevant[i]->face));
    labels.push_back(face_label(relevant[i]->face));
    for (std::size_t j = 0; j < n; ++j) le[i][j] = prime_le(*relevant[i], *relevant[j]);
  }
  auto x = std::make_shared<const MonoidScheme>(std::move(stalks), std::move(le), std::map<std::pair<std::size_t, std::size_t>, IntMatrix>{},
                                                std::move(labels));
  x->validate();
  std::vector<LatticeVector> zero;
  for (const auto& g : gens)
    if (dot(a.degree, g) == 0) zero.push_back(g);
  auto base = std::make_shared<const MonoidScheme>(from_affine(AffineMonoid(a.base.rank(), zero)));
  return {x, morphism_from_matrix(x, base, IntMatrix::identity(a.base.rank()), MorphismKind::Projective)};
}

ProjResult projective_space(std::shared_ptr<const MonoidScheme> x, std::size_t n) {
  ProjResult pn = mproj(make_graded(AffineMonoid::free(n + 1), LatticeVector(std::vector<Int>(n + 1, Int(1)))));
  auto y = std::make_shared<const MonoidScheme>(product(*x, *pn.scheme));
  std::vector<std::size_t> pm;
  std::vector<IntMatrix> maps;
  const std::size_t k = pn.scheme->size();
  for (std::size_t a = 0; a < x->size(); ++a)
    for (std::size_t b = 0; b < k; ++b) {
      pm.push_back(a);
      const std::size_t r = x->stalk(a).rank();
      IntMatrix m(r + pn.scheme->stalk(b).rank(), r);
      for (std::size_t i = 0; i < r; ++i) m(i, i) = 1;
      maps.push_back(std::move(m));
    }
  return {y, make_morphism(y, x, std::move(pm), std::move(maps), MorphismKind::Projective)};
}

BlowupResult blow_up(std::shared_ptr<const MonoidScheme> x, const IdealSheaf& center) {
  if (!x->is_cancellative()) throw Error(ErrorCode::NotCancellative, "blow-up centers need cancellative stalks");
  if (!x->is_embedded()) throw Error(ErrorCode::Precondition, "blow-up needs an embedded scheme");
  validate_ideal_sheaf(*x, center);
  const std::size_t n = x->ambient_rank();
  std::vector<AffineMonoid> charts;
  std::vector<std::vector<std::string>> keys;
  std::vector<std::vector<std::size_t>> key_points;
  for (std::size_t m : x->maximal_points()) {
    const AffineMonoid& a = x->stalk(m);
    auto it = center.charts.find(m);
    std::vector<AffineMonoid> local;
    if (it == center.charts.end() || it->second.unit || it->second.ideal.generators.empty()) {
      local.push_back(a);
    } else {
      const auto& js = it->second.ideal.generators;
      for (std::size_t i = 0; i < js.size(); ++i) {
        std::vector<LatticeVector> gens = a.generators();
        for (std::size_t j = 0; j < js.size(); ++j)
          if (j != i) gens.push_back(js[j] - js[i]);
        local.emplace_back(n, std::move(gens));
      }
    }
    for (auto& c : local) {
      MonoidMap inc{a, c, IntMatrix::identity(n)};
      std::vector<std::string> k;
      std::vector<std::size_t> kp;
      for (const auto& p : c.mspec()) {
        std::size_t idx = prime_index(a, pullback_prime(inc, p));
        std::optional<std::size_t> point;
        for (std::size_t z : x->down_set(m))
          if (x->chart_prime(m, z) == idx) point = z;
        kp.push_back(*point);
        k.push_back(std::to_string(*point));
      }
      charts.push_back(std::move(c));
      keys.push_back(std::move(k));
      key_points.push_back(std::move(kp));
    }
  }
  std::vector<std::vector<std::size_t>> point_of;
  auto y = std::make_shared<const MonoidScheme>(glue_embedded(charts, keys, &point_of));
  y->validate();
  std::vector<std::size_t> pm(y->size());
  for (std::size_t c = 0; c < charts.size(); ++c)
    for (std::size_t p = 0; p < point_of[c].size(); ++p) pm[point_of[c][p]] = key_points[c][p];
  std::vector<IntMatrix> maps(y->size(), IntMatrix::identity(n));
  SchemeMorphism pi = make_morphism(y, x, std::move(pm), std::move(maps), MorphismKind::Projective);
  IdealSheaf e = pullback_ideal(pi, center);
  Immersion d = closed_subscheme(y, e);
  return {y, std::move(pi), std::move(e), std::move(d)};
}

std::vector<bool> inverted_charts(const SchemeMorphism& pi, const IdealSheaf& center) {
  IdealSheaf e = pullback_ideal(pi, center);
  std::vector<bool> out;
  for (std::size_t m : pi.source->maximal_points()) {
    const ChartIdeal& j = e.charts.at(m);
    if (j.unit) {
      out.push_back(true);
      continue;
    }
    const AffineMonoid& a = pi.source->stalk(m);
    const auto& gens = j.ideal.generators;
    bool principal = false;
    for (const auto& g : gens)
      if (std::all_of(gens.begin(), gens.end(), [&](const LatticeVector& h) { return a.member(h - g) == Membership::InMonoid; }))
        principal = true;
    out.push_back(principal && a.is_cancellative());
  }
  return out;
}

bool verify_inverts(const SchemeMorphism& pi, const IdealSheaf& center) {
  auto v = inverted_charts(pi, center);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

PullbackBlowup finite_pullback_blowup(const SchemeMorphism& f, const IdealSheaf& center) {
  BlowupResult tgt = blow_up(f.target, center);
  BlowupResult src = blow_up(f.source, pullback_ideal(f, center));
  const MonoidScheme& ys = *src.scheme;
  const MonoidScheme& yt = *tgt.scheme;
  std::vector<std::size_t> pm;
  std::vector<IntMatrix> maps;
  for (std::size_t p = 0; p < ys.size(); ++p) {
    const std::size_t xs = src.pi.point_map[p];
    const std::size_t xt = f.point_map[xs];
    const IntMatrix& m = f.stalk_maps[xs];
    std::optional<std::size_t> hit;
    for (std::size_t q = 0; q < yt.size() && !hit; ++q) {
      if (tgt.pi.point_map[q] != xt) continue;
      const AffineMonoid& a = yt.stalk(q);
      bool local = true;
      for (const auto& g : a.generators()) {
        LatticeVector h = m * g;
        if (ys.stalk(p).member(h) == Membership::Outside || (!a.is_unit(g) && ys.stalk(p).is_unit(h))) local = false;
      }
      if (local) hit = q;
    }
    if (!hit) throw Error(ErrorCode::InvalidMorphism, "no blow-up point receives " + ys.label(p));
    pm.push_back(*hit);
    maps.push_back(m);
  }
  SchemeMorphism g = make_morphism(src.scheme, tgt.scheme, std::move(pm), std::move(maps), MorphismKind::Finite);
  return {std::move(src), std::move(tgt), std::move(g)};
}

}  // namespace msch
