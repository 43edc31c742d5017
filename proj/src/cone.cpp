#include "msch/cone.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace msch {

namespace {

using ZeroSet = std::vector<bool>;

bool subset_of(const ZeroSet& a, const ZeroSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

ZeroSet intersection(const ZeroSet& a, const ZeroSet& b) {
  ZeroSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

// Solve B x = e_j over Q and scale to a primitive integer vector.
LatticeVector inverse_column(const IntMatrix& b, std::size_t j) {
  std::vector<Rat> rhs(b.rows(), Rat(0));
  rhs[j] = 1;
  auto x = solve_rational(b, rhs);
  Int den = 1;
  for (const Rat& q : *x) den = lcm(den, denominator(q));
  LatticeVector v(x->size());
  for (std::size_t i = 0; i < x->size(); ++i) v[i] = numerator(Rat((*x)[i] * den));
  return v.primitive();
}

// Extreme rays of the pointed cone { y in Q^r : <a, y> >= 0 for a in constraints }.
// The constraints must span Q^r. Double description with combinatorial adjacency.
std::vector<LatticeVector> extreme_rays_of_dual(std::size_t r, const std::vector<LatticeVector>& constraints) {
  if (r == 0) return {};
  const std::size_t m = constraints.size();
  std::vector<std::size_t> basis_rows;
  std::vector<LatticeVector> chosen;
  for (std::size_t i = 0; i < m && basis_rows.size() < r; ++i) {
    chosen.push_back(constraints[i]);
    if (rank(chosen, r) == chosen.size()) basis_rows.push_back(i);
    else chosen.pop_back();
  }
  if (basis_rows.size() != r) throw Error(ErrorCode::Precondition, "constraints do not span");
  IntMatrix b = IntMatrix::from_rows(chosen, r);

  struct Ray {
    LatticeVector v;
    ZeroSet zero;
  };
  std::vector<Ray> rays;
  std::vector<bool> processed(m, false);
  for (std::size_t i : basis_rows) processed[i] = true;
  for (std::size_t j = 0; j < r; ++j) {
    Ray ray{inverse_column(b, j), ZeroSet(m, false)};
    for (std::size_t k = 0; k < r; ++k)
      if (k != j) ray.zero[basis_rows[k]] = true;
    rays.push_back(std::move(ray));
  }

  for (std::size_t h = 0; h < m; ++h) {
    if (processed[h]) continue;
    processed[h] = true;
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(constraints[h], rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
      else zer.push_back(i);
    }
    std::vector<Ray> next;
    for (std::size_t i : pos) next.push_back(rays[i]);
    for (std::size_t i : zer) {
      next.push_back(rays[i]);
      next.back().zero[h] = true;
    }
    for (std::size_t p : pos)
      for (std::size_t n : neg) {
        ZeroSet common = intersection(rays[p].zero, rays[n].zero);
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != n && subset_of(common, rays[t].zero)) adjacent = false;
        if (!adjacent) continue;
        LatticeVector w = val[p] * rays[n].v - val[n] * rays[p].v;
        Ray nr{w.primitive(), common};
        nr.zero[h] = true;
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }
  std::vector<LatticeVector> out;
  for (auto& ray : rays) out.push_back(std::move(ray.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

struct RationalCone::Data {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
  SpanCoordinates span;
  std::vector<LatticeVector> facets;
  std::vector<LatticeVector> lineality;

  mutable std::once_flag faces_once;
  mutable std::vector<Face> faces;
};

RationalCone::RationalCone(std::size_t rank, std::vector<LatticeVector> generators) {
  auto d = std::make_shared<Data>();
  d->rank = rank;
  for (auto& g : generators) {
    if (g.rank() != rank) throw Error(ErrorCode::Precondition, "generator rank mismatch");
    if (!g.is_zero()) d->generators.push_back(std::move(g));
  }
  std::sort(d->generators.begin(), d->generators.end());
  d->generators.erase(std::unique(d->generators.begin(), d->generators.end()), d->generators.end());

  d->span = span_coordinates(d->generators, rank);
  const std::size_t r = d->span.dim;
  std::vector<LatticeVector> local;
  for (const auto& g : d->generators) local.push_back(d->span.coords(g));
  std::vector<LatticeVector> normals = extreme_rays_of_dual(r, local);
  for (const auto& y : normals) d->facets.push_back(d->span.lift_functional(y));
  if (r > 0) {
    std::vector<LatticeVector> lin_local =
        normals.empty() ? std::vector<LatticeVector>{} : integer_kernel(IntMatrix::from_rows(normals, r));
    if (normals.empty())
      for (std::size_t i = 0; i < r; ++i) lin_local.push_back(LatticeVector::unit(r, i));
    for (const auto& z : lin_local) d->lineality.push_back(d->span.lift(z));
  }
  d_ = std::move(d);
}

RationalCone RationalCone::from_inequalities(std::size_t rank, const std::vector<LatticeVector>& inequalities,
                                             const std::vector<LatticeVector>& equations) {
  std::vector<LatticeVector> gens(inequalities);
  for (const auto& e : equations) {
    gens.push_back(e);
    gens.push_back(-e);
  }
  return dual_cone(RationalCone(rank, std::move(gens)));
}

RationalCone RationalCone::whole_space(std::size_t rank) {
  std::vector<LatticeVector> gens;
  for (std::size_t i = 0; i < rank; ++i) {
    gens.push_back(LatticeVector::unit(rank, i));
    gens.push_back(-LatticeVector::unit(rank, i));
  }
  return RationalCone(rank, std::move(gens));
}

RationalCone RationalCone::orthant(std::size_t rank) {
  std::vector<LatticeVector> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back(LatticeVector::unit(rank, i));
  return RationalCone(rank, std::move(gens));
}

std::size_t RationalCone::rank() const { return d_->rank; }
std::size_t RationalCone::dim() const { return d_->span.dim; }
const std::vector<LatticeVector>& RationalCone::generators() const { return d_->generators; }
const std::vector<LatticeVector>& RationalCone::facets() const { return d_->facets; }
std::vector<LatticeVector> RationalCone::equations() const { return d_->span.equations(); }
const std::vector<LatticeVector>& RationalCone::lineality() const { return d_->lineality; }
const SpanCoordinates& RationalCone::span() const { return d_->span; }

bool RationalCone::contains(const LatticeVector& v) const {
  if (!d_->span.in_span(v)) return false;
  return std::all_of(d_->facets.begin(), d_->facets.end(), [&](const LatticeVector& f) { return dot(f, v) >= 0; });
}

bool RationalCone::contains(const RationalCone& other) const {
  const auto& g = other.generators();
  return std::all_of(g.begin(), g.end(), [&](const LatticeVector& v) { return contains(v); });
}

bool RationalCone::in_relative_interior(const LatticeVector& v) const {
  if (!d_->span.in_span(v)) return false;
  return std::all_of(d_->facets.begin(), d_->facets.end(), [&](const LatticeVector& f) { return dot(f, v) > 0; });
}

LatticeVector RationalCone::positive_functional() const {
  LatticeVector w(rank());
  for (const auto& f : d_->facets) w += f;
  return w;
}

bool operator==(const RationalCone& a, const RationalCone& b) {
  return a.rank() == b.rank() && a.contains(b) && b.contains(a);
}

const std::vector<Face>& RationalCone::faces() const {
  std::call_once(d_->faces_once, [this] {
    const auto& gens = d_->generators;
    const auto& facets = d_->facets;
    auto make_face = [&](std::vector<std::size_t> gen_idx) {
      Face f;
      for (std::size_t j = 0; j < facets.size(); ++j) {
        bool tight = true;
        for (std::size_t i : gen_idx)
          if (dot(facets[j], gens[i]) != 0) {
            tight = false;
            break;
          }
        if (tight) f.tight_facets.push_back(j);
      }
      std::vector<LatticeVector> vs;
      for (std::size_t i : gen_idx) vs.push_back(gens[i]);
      f.dim = msch::rank(vs, d_->rank);
      f.generators = std::move(gen_idx);
      return f;
    };
    std::vector<std::size_t> all(gens.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<Face> out{make_face(all)};
    std::set<std::vector<std::size_t>> seen{all};
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (std::size_t j = 0; j < facets.size(); ++j) {
        const Face& cur = out[k];
        if (std::binary_search(cur.tight_facets.begin(), cur.tight_facets.end(), j)) continue;
        std::vector<std::size_t> sub;
        for (std::size_t i : cur.generators)
          if (dot(facets[j], gens[i]) == 0) sub.push_back(i);
        if (seen.insert(sub).second) out.push_back(make_face(std::move(sub)));
      }
    }
    d_->faces = std::move(out);
  });
  return d_->faces;
}

std::vector<LatticeVector> RationalCone::extreme_rays() const {
  if (!is_pointed()) throw Error(ErrorCode::NotPointed, "extreme rays of a cone with lineality");
  std::vector<LatticeVector> rays;
  for (const Face& f : faces())
    if (f.dim == 1) rays.push_back(d_->generators[f.generators.front()].primitive());
  std::sort(rays.begin(), rays.end());
  return rays;
}

RationalCone RationalCone::face_cone(const Face& f) const {
  std::vector<LatticeVector> vs;
  for (std::size_t i : f.generators) vs.push_back(d_->generators[i]);
  return RationalCone(d_->rank, std::move(vs));
}

RationalCone dual_cone(const RationalCone& c) {
  std::vector<LatticeVector> gens(c.facets());
  for (const auto& e : c.equations()) {
    gens.push_back(e);
    gens.push_back(-e);
  }
  return RationalCone(c.rank(), std::move(gens));
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  std::vector<LatticeVector> ineq(a.facets());
  ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
  std::vector<LatticeVector> eq = a.equations();
  for (const auto& e : b.equations()) eq.push_back(e);
  return RationalCone::from_inequalities(a.rank(), ineq, eq);
}

bool is_face_of(const RationalCone& f, const RationalCone& c) {
  if (!c.contains(f)) return false;
  std::vector<LatticeVector> face_gens;
  for (const auto& g : c.generators()) {
    bool on_face = true;
    for (const auto& n : c.facets()) {
      bool tight_on_f = std::all_of(f.generators().begin(), f.generators().end(),
                                    [&](const LatticeVector& v) { return dot(n, v) == 0; });
      if (tight_on_f && dot(n, g) != 0) {
        on_face = false;
        break;
      }
    }
    if (on_face) face_gens.push_back(g);
  }
  return f.contains(RationalCone(c.rank(), face_gens));
}

std::vector<std::vector<LatticeVector>> triangulate(const RationalCone& c) {
  if (!c.is_pointed()) throw Error(ErrorCode::NotPointed, "triangulation of a cone with lineality");
  const auto& faces = c.faces();
  const auto& gens = c.generators();
  // ray faces, and for each face the list of its rays (by face index)
  std::vector<std::size_t> ray_faces;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].dim == 1) ray_faces.push_back(i);
  auto contains_face = [&](const Face& big, const Face& small) {
    return std::includes(big.generators.begin(), big.generators.end(), small.generators.begin(),
                         small.generators.end());
  };
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
  auto rec = [&](auto&& self, std::size_t fi) -> const std::vector<std::vector<std::size_t>>& {
    auto it = memo.find(fi);
    if (it != memo.end()) return it->second;
    const Face& f = faces[fi];
    std::vector<std::size_t> rays;
    for (std::size_t r : ray_faces)
      if (contains_face(f, faces[r])) rays.push_back(r);
    std::vector<std::vector<std::size_t>> out;
    if (rays.size() == f.dim) {
      out.push_back(rays);
    } else {
      std::size_t apex = rays.front();
      for (std::size_t gi = 0; gi < faces.size(); ++gi) {
        const Face& g = faces[gi];
        if (g.dim + 1 != f.dim || !contains_face(f, g) || contains_face(g, faces[apex])) continue;
        for (auto simplex : self(self, gi)) {
          simplex.push_back(apex);
          out.push_back(std::move(simplex));
        }
      }
    }
    return memo[fi] = std::move(out);
  };
  std::vector<std::vector<LatticeVector>> simplices;
  for (const auto& s : rec(rec, 0)) {
    std::vector<LatticeVector> vs;
    for (std::size_t r : s) vs.push_back(gens[faces[r].generators.front()].primitive());
    std::sort(vs.begin(), vs.end());
    simplices.push_back(std::move(vs));
  }
  std::sort(simplices.begin(), simplices.end());
  return simplices;
}

namespace {

// Hilbert basis of a pointed full-dimensional cone in Z^r: fundamental
// parallelepipeds of a triangulation give a generating set, which is then
// reduced to its irreducible elements.
std::vector<LatticeVector> hilbert_basis_full(const RationalCone& c) {
  const std::size_t r = c.rank();
  if (r == 0) return {};
  std::set<LatticeVector> candidates;
  for (const auto& ray : c.extreme_rays()) candidates.insert(ray);
  for (const auto& simplex : triangulate(c)) {
    IntMatrix m = IntMatrix::from_columns(simplex, r);
    SmithForm s = smith_normal_form(m);
    IntMatrix left_inv = unimodular_inverse(s.left);
    std::vector<Int> moduli(r, Int(1));
    for (std::size_t i = 0; i < s.rank(); ++i) moduli[i] = s.diagonal[i];
    std::vector<Int> digits(r, Int(0));
    for (;;) {
      LatticeVector x = left_inv * LatticeVector(digits);
      std::vector<Rat> rhs(x.begin(), x.end());
      auto lambda = solve_rational(m, rhs);
      LatticeVector reduced = x;
      for (std::size_t i = 0; i < r; ++i) {
        const Rat& l = (*lambda)[i];
        Int fl = floor_div(numerator(l), denominator(l));
        reduced -= fl * simplex[i];
      }
      if (!reduced.is_zero()) candidates.insert(reduced);
      std::size_t k = 0;
      while (k < r) {
        if (++digits[k] < moduli[k]) break;
        digits[k] = 0;
        ++k;
      }
      if (k == r) break;
    }
  }
  LatticeVector omega = c.positive_functional();
  std::vector<std::pair<Int, LatticeVector>> sorted;
  for (const auto& v : candidates) sorted.emplace_back(dot(omega, v), v);
  std::sort(sorted.begin(), sorted.end());
  std::vector<LatticeVector> basis;
  for (const auto& [w, x] : sorted) {
    bool reducible = false;
    for (const auto& h : basis)
      if (c.contains(x - h)) {
        reducible = true;
        break;
      }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace

ConeMonoidGenerators cone_lattice_generators(const RationalCone& c, const Sublattice& sub) {
  const std::size_t n = c.rank();
  const auto& w = sub.basis();
  const std::size_t s = w.size();
  // the cone in coordinates of the sublattice
  auto pull = [&](const LatticeVector& f) {
    LatticeVector out(s);
    for (std::size_t i = 0; i < s; ++i) out[i] = dot(f, w[i]);
    return out;
  };
  auto push = [&](const LatticeVector& y) {
    LatticeVector x(n);
    for (std::size_t i = 0; i < s; ++i) x += y[i] * w[i];
    return x;
  };
  std::vector<LatticeVector> ineq, eq;
  for (const auto& f : c.facets()) ineq.push_back(pull(f));
  for (const auto& e : c.equations()) eq.push_back(pull(e));
  RationalCone cy = RationalCone::from_inequalities(s, ineq, eq);

  // full-dimensional picture in the saturated span of cy
  const SpanCoordinates& sy = cy.span();
  std::vector<LatticeVector> zgens;
  for (const auto& g : cy.generators()) zgens.push_back(sy.coords(g));
  RationalCone cz(sy.dim, zgens);
  // split off the lineality lattice
  SpanCoordinates sl = span_coordinates(cz.lineality(), sy.dim);
  const std::size_t l = sl.dim, rest = sy.dim - l;
  std::vector<LatticeVector> proj;
  for (const auto& g : cz.generators()) proj.push_back(slice(sl.to_coords * g, l, rest));
  RationalCone pointed(rest, proj);

  auto back = [&](const LatticeVector& wcoords) { return push(sy.lift(sl.from_coords * wcoords)); };
  ConeMonoidGenerators out;
  for (std::size_t i = 0; i < l; ++i) out.units.push_back(back(LatticeVector::unit(sy.dim, i)));
  for (const auto& h : hilbert_basis_full(pointed))
    out.hilbert.push_back(back(concat(LatticeVector(l), h)));
  std::sort(out.hilbert.begin(), out.hilbert.end());
  return out;
}

std::vector<LatticeVector> hilbert_basis(const RationalCone& c, const Sublattice& sub) {
  if (!c.is_pointed()) throw Error(ErrorCode::NotPointed, "cone has a nonzero lineality space");
  return cone_lattice_generators(c, sub).hilbert;
}

std::vector<LatticeVector> hilbert_basis(const RationalCone& c) {
  return hilbert_basis(c, Sublattice::full(c.rank()));
}

Rat slice_volume(const RationalCone& c, const SpanCoordinates& frame, const LatticeVector& omega) {
  if (c.dim() < frame.dim) return Rat(0);
  Rat total = 0;
  for (const auto& simplex : triangulate(c)) {
    std::vector<LatticeVector> local;
    Int weight = 1;
    for (const auto& ray : simplex) {
      local.push_back(frame.coords(ray));
      weight *= dot(omega, ray);
    }
    Int det = determinant(IntMatrix::from_columns(local, frame.dim));
    total += Rat(abs(det)) / Rat(weight);
  }
  return total;
}

bool covers(const RationalCone& whole, const std::vector<RationalCone>& pieces) {
  const SpanCoordinates& frame = whole.span();
  const std::size_t n = whole.rank();
  for (const auto& p : pieces)
    if (!whole.contains(p)) return false;
  if (whole.dim() == 0) return !pieces.empty();
  if (whole.is_pointed()) {
    LatticeVector omega = whole.positive_functional();
    Rat sum = 0;
    for (const auto& p : pieces) sum += slice_volume(p, frame, omega);
    return sum == slice_volume(whole, frame, omega);
  }
  // split into orthants, each of which meets the cone in a pointed cone
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    LatticeVector omega(n);
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      omega[i] = (mask >> i) & 1 ? -1 : 1;
      gens.push_back(omega[i] * LatticeVector::unit(n, i));
    }
    RationalCone orth(n, gens);
    RationalCone region = intersect(whole, orth);
    if (region.dim() < frame.dim) continue;
    Rat sum = 0;
    for (const auto& p : pieces) {
      if (p.dim() < frame.dim) continue;
      sum += slice_volume(intersect(p, orth), frame, omega);
    }
    if (sum != slice_volume(region, frame, omega)) return false;
  }
  return true;
}

bool is_subdivision(const std::vector<RationalCone>& fine, const RationalCone& coarse) {
  for (const auto& f : fine)
    if (!coarse.contains(f)) return false;
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (std::size_t j = i + 1; j < fine.size(); ++j) {
      RationalCone meet = intersect(fine[i], fine[j]);
      if (!is_face_of(meet, fine[i]) || !is_face_of(meet, fine[j])) return false;
    }
  return covers(coarse, fine);
}

}  // namespace msch
