#include "msch/cdh.hpp"

#include "msch/error.hpp"
#include "msch/toric.hpp"

#include <algorithm>
#include <set>

namespace msch {

const char* to_string(SquareClass c) {
  switch (c) {
    case SquareClass::SmoothBlowup: return "SmoothBlowup";
    case SquareClass::FiniteAbstractBlowup: return "FiniteAbstractBlowup";
    case SquareClass::AbstractBlowup: return "AbstractBlowup";
    case SquareClass::Zariski: return "Zariski";
    case SquareClass::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

namespace {

IntMatrix invert_stalk_map(const IntMatrix& m) {
  if (m.is_identity()) return m;
  if (m.rows() != m.cols() || abs(determinant(m)) != 1)
    throw Error(ErrorCode::Precondition, "immersion stalk map is not a lattice isomorphism");
  return unimodular_inverse(m);
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& pts) {
  std::set<std::size_t> s(pts.begin(), pts.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.count(i)) out.push_back(i);
  return out;
}

}  // namespace

CartesianSquare make_square(const SchemeMorphism& e, const SchemeMorphism& p) {
  const auto& y = p.source;
  std::vector<std::size_t> pts;
  std::shared_ptr<const MonoidScheme> d;
  MorphismKind kind;
  if (is_open_immersion(e)) {
    std::set<std::size_t> image(e.point_map.begin(), e.point_map.end());
    for (std::size_t q = 0; q < y->size(); ++q)
      if (image.count(p.point_map[q])) pts.push_back(q);
    d = std::make_shared<const MonoidScheme>(restrict_to(*y, pts));
    kind = MorphismKind::OpenImmersion;
  } else if (is_equivariant(e)) {
    Subscheme sub = closed_subscheme_points(*y, pullback_ideal(p, ideal_of_immersion(e)));
    pts = sub.points;
    d = std::make_shared<const MonoidScheme>(std::move(sub.scheme));
    kind = MorphismKind::ClosedImmersion;
  } else {
    throw Error(ErrorCode::UnsupportedPullback, "e is neither an open nor an equivariant closed immersion");
  }
  std::vector<IntMatrix> ids;
  for (std::size_t q : pts) ids.push_back(IntMatrix::identity(y->stalk(q).rank()));
  SchemeMorphism dy = make_morphism(d, y, pts, std::move(ids), kind);
  std::vector<std::size_t> pc;
  std::vector<IntMatrix> mc;
  for (std::size_t q : pts) {
    auto it = std::find(e.point_map.begin(), e.point_map.end(), p.point_map[q]);
    const std::size_t c = static_cast<std::size_t>(it - e.point_map.begin());
    pc.push_back(c);
    mc.push_back(p.stalk_maps[q] * invert_stalk_map(e.stalk_maps[c]));
  }
  SchemeMorphism dc = make_morphism(d, e.source, std::move(pc), std::move(mc));
  return {d, y, e.source, p.target, std::move(dy), std::move(dc), p, e};
}

bool is_smooth_closed(const MonoidScheme& c) {
  for (std::size_t m : c.maximal_points()) {
    const AffineMonoid& s = c.stalk(m);
    std::vector<LatticeVector> kept;
    for (const auto& g : s.generators())
      if (s.member(g) == Membership::InMonoid) kept.push_back(g);
    AffineMonoid hull(s.rank(), s.generators());
    RationalCone face(s.rank(), kept);
    if (!is_face_of(face, hull.cone())) return false;
    // The ideal must be everything off the face: then it is prime.
    for (const auto& g : s.generators())
      if (face.contains(g) && s.member(g) != Membership::InMonoid) return false;
    for (const auto& g : s.ideal_generators())
      if (face.contains(g)) return false;
    AffineMonoid f(s.rank(), kept);
    if (!is_smooth_monoid(f)) return false;
  }
  return true;
}

Classification classify(const CartesianSquare& sq) {
  CartesianSquare expected;
  try {
    expected = make_square(sq.e, sq.p);
  } catch (const Error& err) {
    throw Error(ErrorCode::NotCartesian, std::string("fiber product not computable: ") + err.what());
  }
  const auto& dy = sq.d_to_y.point_map;
  if (dy.size() != expected.d->size()) throw Error(ErrorCode::NotCartesian, "D has the wrong number of points");
  const auto& ey = expected.d_to_y.point_map;
  for (std::size_t a = 0; a < dy.size(); ++a) {
    auto it = std::find(ey.begin(), ey.end(), dy[a]);
    if (it == ey.end()) throw Error(ErrorCode::NotCartesian, "D meets Y outside the fiber product");
    const AffineMonoid& want = expected.d->stalk(static_cast<std::size_t>(it - ey.begin()));
    if (!is_isomorphism(MonoidMap{want, sq.d->stalk(a), sq.d_to_y.stalk_maps[a]}))
      throw Error(ErrorCode::NotCartesian, "stalk of D at " + sq.d->label(a) + " differs from the fiber product");
    if (sq.e.point_map[sq.d_to_c.point_map[a]] != sq.p.point_map[dy[a]])
      throw Error(ErrorCode::NotCartesian, "square does not commute");
    for (std::size_t b = 0; b < dy.size(); ++b)
      if (sq.d->le(a, b) != sq.y->le(dy[a], dy[b])) throw Error(ErrorCode::NotCartesian, "D is not a subspace of Y");
  }

  if (is_equivariant(sq.e)) {
    ProperResult pr = is_proper(sq.p);
    const auto ypts = complement(sq.y->size(), dy);
    const auto xpts = complement(sq.x->size(), sq.e.point_map);
    bool iso_off = std::all_of(ypts.begin(), ypts.end(), [&](std::size_t q) {
      return std::find(xpts.begin(), xpts.end(), sq.p.point_map[q]) != xpts.end();
    });
    if (iso_off) iso_off = is_isomorphism(restrict_morphism(sq.p, ypts, xpts));
    if (pr.proper == Tri::Yes && iso_off) {
      std::string cert = "proper (" + pr.certificate + "); Y\\D -> X\\C is an isomorphism";
      if (sq.p.kind == MorphismKind::Projective && is_smooth_closed(*sq.c)) {
        try {
          BlowupResult bl = blow_up(sq.x, ideal_of_immersion(sq.e));
          if (find_isomorphism(*bl.scheme, *sq.y))
            return {SquareClass::SmoothBlowup, cert + "; Y is the blow-up along the smooth center C"};
        } catch (const Error&) {
        }
      }
      if (is_finite(sq.p) == Tri::Yes) return {SquareClass::FiniteAbstractBlowup, cert + "; p is finite"};
      return {SquareClass::AbstractBlowup, cert};
    }
  }
  if (is_open_immersion(sq.e) && is_open_immersion(sq.p)) {
    std::set<std::size_t> covered(sq.e.point_map.begin(), sq.e.point_map.end());
    covered.insert(sq.p.point_map.begin(), sq.p.point_map.end());
    if (covered.size() == sq.x->size()) return {SquareClass::Zariski, "open immersions covering X"};
  }
  return {SquareClass::Unclassified, "no class applies"};
}

CartesianSquare reduced_refinement(const CartesianSquare& sq) {
  Immersion u = open_subscheme(sq.y, complement(sq.y->size(), sq.d_to_y.point_map));
  SchemeImage img = scheme_theoretic_image(u.morphism);
  if (is_isomorphism(img.immersion)) return sq;
  return make_square(sq.e, compose(sq.p, img.immersion));
}

bool is_valid(const DensityWitness& w) {
  std::set<std::size_t> open(w.open.begin(), w.open.end());
  for (std::size_t p : w.open) {
    if (p >= w.x->size()) return false;
    for (std::size_t q : w.x->down_set(p))
      if (!open.count(q)) return false;
  }
  for (std::size_t p = 0; p < w.x->size(); ++p)
    if (!open.count(p) && w.x->height(p) < w.index) return false;
  return true;
}

ReducingData reducing_data(const CartesianSquare& sq, const DensityWitness& c0, const DensityWitness& y0,
                           const DensityWitness& d0) {
  const std::size_t i = c0.index;
  if (c0.x->size() != sq.c->size() || y0.x->size() != sq.y->size() || d0.x->size() != sq.d->size())
    throw Error(ErrorCode::WitnessInvalid, "witness lives on the wrong scheme");
  if (y0.index != i || d0.index + (i > 0 ? 1 : 0) != i)
    throw Error(ErrorCode::WitnessInvalid, "witness indices must be i, i, i-1");
  for (const auto* w : {&c0, &y0, &d0})
    if (!is_valid(*w)) throw Error(ErrorCode::WitnessInvalid, "witness open set is not dense of the given index");

  std::vector<std::size_t> bad;
  for (std::size_t c : complement(sq.c->size(), c0.open)) bad.push_back(sq.e.point_map[c]);
  for (std::size_t q : complement(sq.y->size(), y0.open)) bad.push_back(sq.p.point_map[q]);
  for (std::size_t q : complement(sq.d->size(), d0.open)) bad.push_back(sq.p.point_map[sq.d_to_y.point_map[q]]);
  std::vector<std::size_t> closed;
  if (!bad.empty()) closed = equivariant_closure(*sq.x, bad).subscheme.points;
  ReducingData out;
  out.x_prime = {sq.x, i, complement(sq.x->size(), closed)};
  const auto& xp = out.x_prime.open;
  if (xp.empty()) {
    out.cls = {SquareClass::AbstractBlowup, "empty base"};
    out.verified = is_valid(out.x_prime);
    return out;
  }
  auto over = [&](const SchemeMorphism& f) {
    std::vector<std::size_t> pts;
    for (std::size_t q = 0; q < f.source->size(); ++q)
      if (std::find(xp.begin(), xp.end(), f.point_map[q]) != xp.end()) pts.push_back(q);
    return restrict_morphism(f, pts, xp);
  };
  out.square = make_square(over(sq.e), over(sq.p));
  out.cls = classify(*out.square);
  out.verified = is_valid(out.x_prime) && out.cls.cls != SquareClass::Unclassified && out.cls.cls != SquareClass::Zariski;
  return out;
}

namespace {

std::vector<std::size_t> sorted_union(const MonoidScheme& x, const std::vector<std::size_t>& maxima) {
  std::set<std::size_t> s;
  for (std::size_t m : maxima)
    for (std::size_t q : x.down_set(m)) s.insert(q);
  return {s.begin(), s.end()};
}

}  // namespace

std::vector<GeneratedSquare> generate_squares(std::shared_ptr<const MonoidScheme> x) {
  std::vector<GeneratedSquare> out;
  auto emit = [&](std::string origin, CartesianSquare sq) {
    Classification cls = classify(sq);
    out.push_back({std::move(origin), std::move(sq), std::move(cls)});
  };

  const auto maxima = x->maximal_points();
  if (maxima.size() >= 2)
    for (std::size_t m : maxima) {
      std::vector<std::size_t> rest;
      for (std::size_t k : maxima)
        if (k != m) rest.push_back(k);
      Immersion u = open_subscheme(x, sorted_union(*x, {m}));
      Immersion v = open_subscheme(x, sorted_union(*x, rest));
      emit("zariski:" + x->label(m), make_square(v.morphism, u.morphism));
    }

  if (maxima.size() == 1 && x->is_cancellative() && !is_normal(x->stalk(maxima[0]))) {
    Normalization nor = normalization(x->stalk(maxima[0]));
    auto y = std::make_shared<const MonoidScheme>(from_affine(nor.monoid));
    SchemeMorphism p = morphism_from_matrix(y, x, nor.embedding.matrix, MorphismKind::Finite);
    std::vector<std::size_t> singular;
    for (std::size_t q = 0; q < x->size(); ++q)
      if (!is_normal(x->stalk(q))) singular.push_back(q);
    Closure cl = equivariant_closure(*x, singular);
    emit("normalization", make_square(closed_subscheme(x, cl.ideal).morphism, p));
  }

  std::optional<Fan> fan;
  try {
    fan = fan_from_scheme(*x);
  } catch (const Error&) {
  }
  if (fan && !fan->is_smooth()) {
    Resolution res = resolve(*fan);
    Fan cur = *fan;
    for (std::size_t k = 0; k < res.inserted.size(); ++k) {
      const LatticeVector& v = res.inserted[k];
      Fan next = star_subdivision(cur, v);
      auto xk = std::make_shared<const MonoidScheme>(scheme_from_fan(cur));
      const std::size_t tau = *cur.smallest_cone_containing(v);
      Closure cl = equivariant_closure(*xk, {tau});
      SchemeMorphism e = closed_subscheme(xk, cl.ideal).morphism;
      MonoidScheme target = scheme_from_fan(next);
      BlowupResult bl = blow_up(xk, cl.ideal);
      if (find_isomorphism(*bl.scheme, target))
        emit("resolution-blowup:" + std::to_string(k), make_square(e, bl.pi));
      else
        emit("resolution-toric:" + std::to_string(k),
             make_square(e, morphism_from_fan_map(make_fan_morphism(next, cur, IntMatrix::identity(cur.rank())))));
      cur = next;
    }
  }
  return out;
}

}  // namespace msch
