#include "msch/morphism.hpp"

#include "msch/error.hpp"
#include "msch/toric.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace msch {

const char* to_string(MorphismKind k) {
  switch (k) {
    case MorphismKind::General: return "general";
    case MorphismKind::Identity: return "identity";
    case MorphismKind::OpenImmersion: return "open_immersion";
    case MorphismKind::ClosedImmersion: return "closed_immersion";
    case MorphismKind::Finite: return "finite";
    case MorphismKind::Projective: return "projective";
    case MorphismKind::Toric: return "toric";
    case MorphismKind::Composite: return "composite";
  }
  return "general";
}

const char* to_string(LiftResult r) {
  switch (r) {
    case LiftResult::UniqueLift: return "UniqueLift";
    case LiftResult::NoLift: return "NoLift";
    case LiftResult::MultipleLifts: return "MultipleLifts";
  }
  return "NoLift";
}

namespace {

// A lattice map carries A into B as a local homomorphism.
bool is_local_into(const AffineMonoid& a, const AffineMonoid& b, const IntMatrix& m) {
  if (m.rows() != b.rank() || m.cols() != a.rank()) return false;
  for (const auto& g : a.generators()) {
    LatticeVector h = m * g;
    Membership mem = b.member(h);
    if (mem == Membership::Outside) return false;
    if (mem == Membership::InMonoid && !a.is_unit(g) && b.is_unit(h)) return false;
  }
  for (const auto& g : a.ideal_generators())
    if (!b.in_ideal(m * g)) return false;
  return true;
}

bool agree_on_group(const AffineMonoid& a, const IntMatrix& p, const IntMatrix& q) {
  for (const auto& v : a.group().basis())
    if (p * v != q * v) return false;
  return true;
}

}  // namespace

void validate(const SchemeMorphism& f) {
  const MonoidScheme& y = *f.source;
  const MonoidScheme& x = *f.target;
  if (f.point_map.size() != y.size() || f.stalk_maps.size() != y.size())
    throw Error(ErrorCode::InvalidMorphism, "point or stalk map has the wrong size");
  for (std::size_t p = 0; p < y.size(); ++p) {
    if (f.point_map[p] >= x.size()) throw Error(ErrorCode::InvalidMorphism, "point map leaves the target");
    if (!is_local_into(x.stalk(f.point_map[p]), y.stalk(p), f.stalk_maps[p]))
      throw Error(ErrorCode::InvalidMorphism, "stalk map at " + y.label(p) + " is not a local homomorphism");
  }
  for (std::size_t p = 0; p < y.size(); ++p)
    for (std::size_t q = 0; q < y.size(); ++q) {
      if (p == q || !y.le(q, p)) continue;
      const std::size_t fp = f.point_map[p], fq = f.point_map[q];
      if (!x.le(fq, fp)) throw Error(ErrorCode::InvalidMorphism, "point map is not monotone");
      IntMatrix lhs = y.restriction_matrix(p, q) * f.stalk_maps[p];
      IntMatrix rhs = f.stalk_maps[q] * x.restriction_matrix(fp, fq);
      if (!agree_on_group(x.stalk(fp), lhs, rhs))
        throw Error(ErrorCode::InvalidMorphism, "stalk maps do not commute with restrictions");
    }
}

SchemeMorphism make_morphism(std::shared_ptr<const MonoidScheme> source, std::shared_ptr<const MonoidScheme> target,
                             std::vector<std::size_t> point_map, std::vector<IntMatrix> stalk_maps, MorphismKind kind) {
  SchemeMorphism f{std::move(source), std::move(target), std::move(point_map), std::move(stalk_maps), kind, {}, {}};
  validate(f);
  return f;
}

SchemeMorphism morphism_from_matrix(std::shared_ptr<const MonoidScheme> source,
                                    std::shared_ptr<const MonoidScheme> target, const IntMatrix& m,
                                    MorphismKind kind) {
  std::vector<std::size_t> pm;
  for (std::size_t p = 0; p < source->size(); ++p) {
    std::optional<std::size_t> hit;
    for (std::size_t q = 0; q < target->size() && !hit; ++q)
      if (is_local_into(target->stalk(q), source->stalk(p), m)) hit = q;
    if (!hit) throw Error(ErrorCode::InvalidMorphism, "no target point receives " + source->label(p));
    pm.push_back(*hit);
  }
  std::vector<IntMatrix> maps(source->size(), m);
  return make_morphism(std::move(source), std::move(target), std::move(pm), std::move(maps), kind);
}

SchemeMorphism identity_morphism(std::shared_ptr<const MonoidScheme> x) {
  std::vector<std::size_t> pm;
  std::vector<IntMatrix> maps;
  for (std::size_t p = 0; p < x->size(); ++p) {
    pm.push_back(p);
    maps.push_back(IntMatrix::identity(x->stalk(p).rank()));
  }
  return SchemeMorphism{x, x, std::move(pm), std::move(maps), MorphismKind::Identity, {}, {}};
}

SchemeMorphism compose(const SchemeMorphism& g, const SchemeMorphism& f) {
  if (f.target.get() != g.source.get() && f.target->size() != g.source->size())
    throw Error(ErrorCode::InvalidMorphism, "morphisms are not composable");
  SchemeMorphism h;
  h.source = f.source;
  h.target = g.target;
  for (std::size_t p = 0; p < f.source->size(); ++p) {
    h.point_map.push_back(g.point_map[f.point_map[p]]);
    h.stalk_maps.push_back(f.stalk_maps[p] * g.stalk_maps[f.point_map[p]]);
  }
  h.kind = MorphismKind::Composite;
  auto flatten = [&](const SchemeMorphism& m) {
    if (m.kind == MorphismKind::Composite) h.parts.insert(h.parts.end(), m.parts.begin(), m.parts.end());
    else h.parts.push_back(m);
  };
  flatten(f);
  flatten(g);
  if (f.fan_map && g.fan_map) h.fan_map = FanMorphism{f.fan_map->source, g.fan_map->target, g.fan_map->phi * f.fan_map->phi};
  validate(h);
  return h;
}

SchemeMorphism restrict_morphism(const SchemeMorphism& f, const std::vector<std::size_t>& source_points,
                                 const std::vector<std::size_t>& target_points) {
  auto src = std::make_shared<const MonoidScheme>(restrict_to(*f.source, source_points));
  auto tgt = std::make_shared<const MonoidScheme>(restrict_to(*f.target, target_points));
  std::vector<std::size_t> pm;
  std::vector<IntMatrix> maps;
  for (std::size_t p : source_points) {
    auto it = std::find(target_points.begin(), target_points.end(), f.point_map[p]);
    if (it == target_points.end()) throw Error(ErrorCode::Precondition, "restricted source leaves the target set");
    pm.push_back(static_cast<std::size_t>(it - target_points.begin()));
    maps.push_back(f.stalk_maps[p]);
  }
  // These kinds are stable under restriction to an open of the target.
  MorphismKind kind = f.kind == MorphismKind::Composite || f.kind == MorphismKind::Toric ? MorphismKind::General : f.kind;
  return make_morphism(src, tgt, std::move(pm), std::move(maps), kind);
}

namespace {

bool is_order_embedding(const SchemeMorphism& f) {
  const auto& pm = f.point_map;
  if (std::set<std::size_t>(pm.begin(), pm.end()).size() != pm.size()) return false;
  for (std::size_t a = 0; a < pm.size(); ++a)
    for (std::size_t b = 0; b < pm.size(); ++b)
      if (f.source->le(a, b) != f.target->le(pm[a], pm[b])) return false;
  return true;
}

bool stalks_iso(const SchemeMorphism& f) {
  for (std::size_t p = 0; p < f.source->size(); ++p)
    if (!is_isomorphism(MonoidMap{f.target->stalk(f.point_map[p]), f.source->stalk(p), f.stalk_maps[p]}))
      return false;
  return true;
}

// Whether the points over the chart W(x) form an affine open W(top).
struct ChartPreimage {
  bool empty = true;
  bool affine = false;
  std::size_t top = 0;
};

ChartPreimage chart_preimage(const SchemeMorphism& f, std::size_t x) {
  std::vector<std::size_t> pre;
  for (std::size_t p = 0; p < f.source->size(); ++p)
    if (f.target->le(f.point_map[p], x)) pre.push_back(p);
  ChartPreimage out;
  if (pre.empty()) return out;
  out.empty = false;
  for (std::size_t t : pre)
    if (std::all_of(pre.begin(), pre.end(), [&](std::size_t q) { return f.source->le(q, t); })) {
      out.affine = true;
      out.top = t;
    }
  return out;
}

// A_X(x) -> A_Y(top) through the restriction to f(top).
IntMatrix chart_map(const SchemeMorphism& f, std::size_t x, std::size_t top) {
  return f.stalk_maps[top] * f.target->restriction_matrix(x, f.point_map[top]);
}

}  // namespace

bool is_isomorphism(const SchemeMorphism& f) {
  return f.source->size() == f.target->size() && is_order_embedding(f) && stalks_iso(f);
}

bool is_open_immersion(const SchemeMorphism& f) {
  if (!is_order_embedding(f) || !stalks_iso(f)) return false;
  std::set<std::size_t> image(f.point_map.begin(), f.point_map.end());
  for (std::size_t p : image)
    for (std::size_t q : f.target->down_set(p))
      if (!image.count(q)) return false;
  return true;
}

bool is_closed_immersion(const SchemeMorphism& f) {
  if (!is_order_embedding(f)) return false;
  for (std::size_t x : f.target->maximal_points()) {
    ChartPreimage cp = chart_preimage(f, x);
    if (cp.empty) continue;
    if (!cp.affine) return false;
    IntMatrix n = chart_map(f, x, cp.top);
    std::vector<LatticeVector> images;
    for (const auto& g : f.target->stalk(x).generators()) images.push_back(n * g);
    const AffineMonoid& b = f.source->stalk(cp.top);
    AffineMonoid generated(b.rank(), images);
    for (const auto& h : b.generators())
      if (b.member(h) == Membership::InMonoid && !generated.in_semigroup(h)) return false;
  }
  return true;
}

bool is_equivariant(const SchemeMorphism& f) {
  if (!is_closed_immersion(f)) return false;
  for (std::size_t x : f.target->maximal_points()) {
    ChartPreimage cp = chart_preimage(f, x);
    if (cp.empty) continue;
    IntMatrix n = chart_map(f, x, cp.top);
    const Sublattice& grp = f.target->stalk(x).group();
    std::vector<LatticeVector> images;
    for (const auto& b : grp.basis()) images.push_back(n * b);
    if (rank(images, n.rows()) != grp.rank()) return false;
  }
  return true;
}

Tri is_finite(const SchemeMorphism& f) {
  bool unknown = false;
  for (std::size_t x : f.target->maximal_points()) {
    ChartPreimage cp = chart_preimage(f, x);
    if (cp.empty) continue;
    if (!cp.affine) return Tri::No;
    MonoidMap m{f.target->stalk(x), f.source->stalk(cp.top), chart_map(f, x, cp.top)};
    if (is_integral(m)) continue;
    if (m.target.is_cancellative()) return Tri::No;
    unknown = true;
  }
  return unknown ? Tri::Unknown : Tri::Yes;
}

bool is_birational(const SchemeMorphism& f) {
  const auto gy = f.source->minimal_points();
  const auto gx = f.target->minimal_points();
  std::set<std::size_t> images;
  for (std::size_t y : gy) images.insert(f.point_map[y]);
  if (images.size() != gy.size() || images != std::set<std::size_t>(gx.begin(), gx.end())) return false;
  for (std::size_t p = 0; p < f.source->size(); ++p)
    if (images.count(f.point_map[p]) && std::find(gy.begin(), gy.end(), p) == gy.end()) return false;
  for (std::size_t y : gy)
    if (!is_isomorphism(MonoidMap{f.target->stalk(f.point_map[y]), f.source->stalk(y), f.stalk_maps[y]}))
      return false;
  return true;
}

ProperResult is_proper(const SchemeMorphism& f) {
  if (f.kind == MorphismKind::Identity) return {Tri::Yes, "identity"};
  if (f.kind == MorphismKind::Projective) return {Tri::Yes, "projective morphism"};
  if (f.kind == MorphismKind::Composite && !f.parts.empty()) {
    std::string cert = "composite of";
    bool all = true;
    for (const auto& part : f.parts) {
      ProperResult r = is_proper(part);
      if (r.proper != Tri::Yes) {
        all = false;
        break;
      }
      cert += " [" + r.certificate + "]";
    }
    if (all) return {Tri::Yes, cert};
  }
  if (is_isomorphism(f)) return {Tri::Yes, "isomorphism"};
  if (is_equivariant(f)) return {Tri::Yes, "equivariant closed immersion"};
  if (is_finite(f) == Tri::Yes) return {Tri::Yes, "finite morphism"};
  std::optional<FanMorphism> fm = f.fan_map;
  if (!fm) {
    try {
      fm = fan_map_from_morphism(f);
    } catch (const Error&) {
    }
  }
  if (fm) {
    if (is_proper_fan_map(*fm)) return {Tri::Yes, "toric: fan preimages are unions of cones"};
    return {Tri::No, "toric: some fan preimage is not covered by source cones"};
  }
  return {Tri::Unknown, "no rule applies"};
}

namespace {

// Gens of a go into V = Z^u ⊕ N t locally under m (last coordinate = valuation).
bool local_into_dvm(const AffineMonoid& a, const IntMatrix& m) {
  if (!a.is_cancellative()) return false;
  const std::size_t t = m.rows() - 1;
  for (const auto& g : a.generators()) {
    LatticeVector h = m * g;
    if (a.is_unit(g) ? h[t] != 0 : h[t] <= 0) return false;
  }
  return true;
}

}  // namespace

LiftResult dvm_lift_check(const SchemeMorphism& f, const DvmSquare& sq) {
  const MonoidScheme& y = *f.source;
  const MonoidScheme& x = *f.target;
  if (sq.generic >= y.size() || sq.closed >= x.size()) throw Error(ErrorCode::WitnessInvalid, "square names a missing point");
  const AffineMonoid& eta = y.stalk(sq.generic);
  if (sq.alpha.rows() != sq.unit_rank + 1 || sq.alpha.cols() != eta.rank())
    throw Error(ErrorCode::WitnessInvalid, "valuation map has the wrong shape");
  if (!eta.is_cancellative() || eta.unit_generators().size() != eta.generators().size())
    throw Error(ErrorCode::WitnessInvalid, "the generic stalk must be a group");
  const std::size_t fe = f.point_map[sq.generic];
  if (!x.le(fe, sq.closed)) throw Error(ErrorCode::WitnessInvalid, "square does not commute on points");
  IntMatrix beta = sq.alpha * f.stalk_maps[sq.generic] * x.restriction_matrix(sq.closed, fe);
  if (!local_into_dvm(x.stalk(sq.closed), beta)) throw Error(ErrorCode::WitnessInvalid, "closed point map is not local");
  std::size_t lifts = 0;
  for (std::size_t p = 0; p < y.size(); ++p) {
    if (!y.le(sq.generic, p) || f.point_map[p] != sq.closed) continue;
    if (local_into_dvm(y.stalk(p), sq.alpha * y.restriction_matrix(p, sq.generic))) ++lifts;
  }
  if (lifts == 0) return LiftResult::NoLift;
  return lifts == 1 ? LiftResult::UniqueLift : LiftResult::MultipleLifts;
}

std::vector<DvmSquare> random_dvm_squares(const SchemeMorphism& f, std::size_t count, std::uint64_t seed,
                                          std::size_t max_unit_rank, int bound) {
  const MonoidScheme& y = *f.source;
  const MonoidScheme& x = *f.target;
  std::vector<std::size_t> generic;
  for (std::size_t p : y.minimal_points()) {
    const AffineMonoid& a = y.stalk(p);
    if (a.is_cancellative() && a.unit_generators().size() == a.generators().size()) generic.push_back(p);
  }
  if (generic.empty()) throw Error(ErrorCode::Precondition, "source has no generic point with a group stalk");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-bound, bound);
  std::vector<DvmSquare> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 1)) throw Error(ErrorCode::BudgetExceeded, "could not sample valid squares");
    DvmSquare sq;
    sq.unit_rank = std::uniform_int_distribution<std::size_t>(0, max_unit_rank)(rng);
    sq.generic = generic[std::uniform_int_distribution<std::size_t>(0, generic.size() - 1)(rng)];
    const std::size_t n = y.stalk(sq.generic).rank();
    sq.alpha = IntMatrix(sq.unit_rank + 1, n);
    for (std::size_t r = 0; r <= sq.unit_rank; ++r)
      for (std::size_t c = 0; c < n; ++c) sq.alpha(r, c) = coeff(rng);
    const std::size_t fe = f.point_map[sq.generic];
    std::vector<std::size_t> valid;
    for (std::size_t q = 0; q < x.size(); ++q) {
      if (!x.le(fe, q)) continue;
      IntMatrix beta = sq.alpha * f.stalk_maps[sq.generic] * x.restriction_matrix(q, fe);
      if (local_into_dvm(x.stalk(q), beta)) valid.push_back(q);
    }
    if (valid.empty()) continue;
    sq.closed = valid[std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng)];
    out.push_back(std::move(sq));
  }
  return out;
}

bool check_height_monotone(const SchemeMorphism& f) {
  for (std::size_t p = 0; p < f.source->size(); ++p)
    if (f.source->height(p) > f.target->height(f.point_map[p])) return false;
  return true;
}

}  // namespace msch
