#include "msch/fan.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace msch {

namespace {

std::vector<LatticeVector> pick(const std::vector<LatticeVector>& rays, const std::vector<std::size_t>& idx) {
  std::vector<LatticeVector> out;
  for (std::size_t i : idx) out.push_back(rays[i]);
  return out;
}

}  // namespace

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, const std::vector<std::vector<std::size_t>>& cones) {
  init(rank, std::move(rays), cones, true);
}

Fan Fan::unchecked(std::size_t rank, std::vector<LatticeVector> rays, const std::vector<std::vector<std::size_t>>& cones) {
  Fan f;
  f.init(rank, std::move(rays), cones, false);
  return f;
}

void Fan::init(std::size_t rank, std::vector<LatticeVector> rays, const std::vector<std::vector<std::size_t>>& cones,
               bool check_overlaps) {
  rank_ = rank;
  for (auto& r : rays) {
    if (r.rank() != rank) throw Error(ErrorCode::InvalidFan, "ray rank mismatch");
    if (r.is_zero()) throw Error(ErrorCode::InvalidFan, "zero ray");
    r = r.primitive();
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) throw Error(ErrorCode::InvalidFan, "repeated ray " + rays[i].str());
  rays_ = std::move(rays);

  std::set<std::vector<std::size_t>> all{{}};
  for (auto c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i : c)
      if (i >= rays_.size()) throw Error(ErrorCode::InvalidFan, "cone names a missing ray");
    RationalCone rc(rank_, pick(rays_, c));
    if (!rc.is_pointed()) throw Error(ErrorCode::InvalidFan, "cone contains a line");
    auto ext = rc.extreme_rays();
    if (ext.size() != c.size()) throw Error(ErrorCode::InvalidFan, "a listed ray is not extreme in its cone");
    for (const Face& face : rc.faces()) {
      std::vector<std::size_t> sub;
      for (std::size_t i : c) {
        bool on = std::all_of(face.tight_facets.begin(), face.tight_facets.end(),
                              [&](std::size_t j) { return dot(rc.facets()[j], rays_[i]) == 0; });
        if (on) sub.push_back(i);
      }
      all.insert(sub);
    }
  }
  cones_.assign(all.begin(), all.end());
  std::stable_sort(cones_.begin(), cones_.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& c : cones_) cone_objects_.emplace_back(rank_, pick(rays_, c));
  if (!check_overlaps) return;
  // intersections must be common faces
  auto maxi = maximal_cones();
  for (std::size_t a = 0; a < maxi.size(); ++a)
    for (std::size_t b = a + 1; b < maxi.size(); ++b) {
      const auto& ca = cones_[maxi[a]];
      const auto& cb = cones_[maxi[b]];
      std::vector<std::size_t> common;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
      if (!index_of(common)) throw Error(ErrorCode::InvalidFan, "shared rays do not span a common face");
      RationalCone meet = intersect(cone_objects_[maxi[a]], cone_objects_[maxi[b]]);
      if (!(meet == RationalCone(rank_, pick(rays_, common))))
        throw Error(ErrorCode::InvalidFan, "two cones overlap beyond a common face");
    }
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cones_.size() && maximal; ++j)
      if (j != i && cones_[j].size() > cones_[i].size() &&
          std::includes(cones_[j].begin(), cones_[j].end(), cones_[i].begin(), cones_[i].end()))
        maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Fan::index_of(const std::vector<std::size_t>& ray_set) const {
  std::vector<std::size_t> s(ray_set);
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i] == s) return i;
  return std::nullopt;
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

std::vector<LatticeVector> Fan::cone_rays(std::size_t i) const { return pick(rays_, cones_.at(i)); }

bool Fan::is_face(std::size_t a, std::size_t b) const {
  return std::includes(cones_[b].begin(), cones_[b].end(), cones_[a].begin(), cones_[a].end());
}

bool Fan::is_simplicial() const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].size() != dim(i)) return false;
  return true;
}

bool Fan::is_smooth_cone(std::size_t i) const {
  if (cones_[i].size() != dim(i)) return false;
  if (cones_[i].empty()) return true;
  SmithForm s = smith_normal_form(IntMatrix::from_columns(cone_rays(i), rank_));
  return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Int& d) { return d == 1; });
}

bool Fan::is_smooth() const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (!is_smooth_cone(i)) return false;
  return true;
}

std::optional<std::size_t> Fan::smallest_cone_containing(const LatticeVector& v) const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cone_objects_[i].contains(v)) return i;  // cones are sorted by size, faces come first
  return std::nullopt;
}

std::optional<std::size_t> Fan::smallest_cone_containing(const RationalCone& c) const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cone_objects_[i].contains(c)) return i;
  return std::nullopt;
}

bool operator==(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank() || a.cones().size() != b.cones().size()) return false;
  auto as_sets = [](const Fan& f) {
    std::set<std::vector<LatticeVector>> out;
    for (std::size_t i = 0; i < f.cones().size(); ++i) {
      auto rs = f.cone_rays(i);
      std::sort(rs.begin(), rs.end());
      out.insert(rs);
    }
    return out;
  };
  return as_sets(a) == as_sets(b);
}

std::optional<IntMatrix> fan_isomorphism(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank() || a.rays().size() != b.rays().size() || a.cones().size() != b.cones().size())
    return std::nullopt;
  const std::size_t d = a.rank();
  if (d == 0) return IntMatrix(0, 0);
  // a basis among the rays of a (fans of lower-dimensional support get completed by unit vectors)
  std::vector<std::size_t> basis;
  std::vector<LatticeVector> chosen;
  for (std::size_t i = 0; i < a.rays().size() && chosen.size() < d; ++i) {
    chosen.push_back(a.rays()[i]);
    if (rank(chosen, d) == chosen.size()) basis.push_back(i);
    else chosen.pop_back();
  }
  const std::size_t k = basis.size();
  std::vector<LatticeVector> extra;
  for (std::size_t i = 0; i < d && chosen.size() < d; ++i) {
    chosen.push_back(LatticeVector::unit(d, i));
    if (rank(chosen, d) == chosen.size()) extra.push_back(LatticeVector::unit(d, i));
    else chosen.pop_back();
  }
  IntMatrix src = IntMatrix::from_columns(chosen, d);
  std::vector<std::size_t> images(k);
  std::vector<bool> used(b.rays().size(), false);
  std::optional<IntMatrix> found;
  auto try_map = [&]() {
    std::vector<LatticeVector> cols;
    for (std::size_t i : images) cols.push_back(b.rays()[i]);
    for (const auto& e : extra) cols.push_back(e);
    IntMatrix dst = IntMatrix::from_columns(cols, d);
    // L = dst * src^{-1}, integral and unimodular
    // rows of L solve L_r * src = dst_r
    IntMatrix src_t = src.transpose();
    IntMatrix l(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<Rat> rhs;
      for (std::size_t c = 0; c < d; ++c) rhs.push_back(Rat(dst(r, c)));
      auto sol = solve_rational(src_t, rhs);
      if (!sol) return;
      for (std::size_t c = 0; c < d; ++c) {
        if (denominator((*sol)[c]) != 1) return;
        l(r, c) = numerator((*sol)[c]);
      }
    }
    if (abs(determinant(l)) != 1) return;
    std::vector<LatticeVector> mapped;
    for (const auto& r : a.rays()) mapped.push_back(l * r);
    try {
      std::vector<std::vector<std::size_t>> cones;
      for (std::size_t i : a.maximal_cones()) cones.push_back(a.cones()[i]);
      if (Fan(d, mapped, cones) == b) found = l;
    } catch (const Error&) {
    }
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (found) return;
    if (i == k) return try_map();
    for (std::size_t j = 0; j < b.rays().size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      images[i] = j;
      self(self, i + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return found;
}

FanMorphism make_fan_morphism(const Fan& source, const Fan& target, IntMatrix phi) {
  if (phi.rows() != target.rank() || phi.cols() != source.rank())
    throw Error(ErrorCode::InvalidMorphism, "fan map has the wrong shape");
  for (std::size_t i = 0; i < source.cones().size(); ++i) {
    std::vector<LatticeVector> img;
    for (const auto& r : source.cone_rays(i)) img.push_back(phi * r);
    if (!target.smallest_cone_containing(RationalCone(target.rank(), img)))
      throw Error(ErrorCode::InvalidMorphism, "a source cone maps into no target cone");
  }
  return {source, target, std::move(phi)};
}

Fan star_subdivision(const Fan& f, const LatticeVector& v) {
  if (v.rank() != f.rank() || v.is_zero()) throw Error(ErrorCode::NotInSupport, "vector has the wrong rank or is zero");
  LatticeVector p = v.primitive();
  if (p != v) throw Error(ErrorCode::Precondition, "star subdivision needs a primitive vector");
  if (!f.smallest_cone_containing(v)) throw Error(ErrorCode::NotInSupport, v.str() + " is outside the support");
  if (f.ray_index(v)) return f;
  std::vector<LatticeVector> rays = f.rays();
  const std::size_t vi = rays.size();
  rays.push_back(v);
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t m : f.maximal_cones()) {
    if (!f.cone(m).contains(v)) {
      cones.push_back(f.cones()[m]);
      continue;
    }
    for (std::size_t t = 0; t < f.cones().size(); ++t) {
      if (t == m || !f.is_face(t, m) || f.cone(t).contains(v)) continue;
      std::vector<std::size_t> c = f.cones()[t];
      c.push_back(vi);
      cones.push_back(c);
    }
  }
  // drop cones that are faces of others
  std::vector<std::vector<std::size_t>> maximal;
  for (auto& c : cones) std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cones.size() && !dominated; ++j)
      if (i != j && cones[j].size() > cones[i].size() &&
          std::includes(cones[j].begin(), cones[j].end(), cones[i].begin(), cones[i].end()))
        dominated = true;
    if (!dominated) maximal.push_back(cones[i]);
  }
  return Fan::unchecked(f.rank(), rays, maximal);
}

Fan barycentric_subdivision(const Fan& f) {
  if (!f.is_simplicial()) throw Error(ErrorCode::NotSimplicial, "barycentric subdivision needs a simplicial fan");
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < f.cones().size(); ++i)
    if (f.cones()[i].size() >= 2) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f.cones()[a].size() > f.cones()[b].size(); });
  Fan out = f;
  for (std::size_t i : order) {
    LatticeVector s(f.rank());
    for (const auto& r : f.cone_rays(i)) s += r;
    out = star_subdivision(out, s.primitive());
  }
  return out;
}

Fan iterated_barycentric(const Fan& f, std::size_t i) {
  Fan out = f;
  for (std::size_t k = 0; k < i; ++k) out = barycentric_subdivision(out);
  return out;
}

bool is_fan_subdivision(const Fan& fine, const Fan& coarse) {
  if (fine.rank() != coarse.rank()) return false;
  for (std::size_t i = 0; i < fine.cones().size(); ++i)
    if (!coarse.smallest_cone_containing(fine.cone(i))) return false;
  for (std::size_t m : coarse.maximal_cones()) {
    std::vector<RationalCone> inside;
    for (std::size_t i : fine.maximal_cones())
      if (coarse.cone(m).contains(fine.cone(i))) inside.push_back(fine.cone(i));
    if (!covers(coarse.cone(m), inside)) return false;
  }
  return true;
}

namespace {

bool smooth_rays(const std::vector<LatticeVector>& rays, std::size_t rank) {
  if (rays.size() <= 1) return true;  // rays are primitive
  SmithForm s = smith_normal_form(IntMatrix::from_columns(rays, rank));
  return s.diagonal.size() == rays.size() &&
         std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Int& d) { return d == 1; });
}

}  // namespace

Resolution resolve(const Fan& f, std::size_t max_steps) {
  Resolution res{f, {}};
  std::size_t step = 0;
  // make the fan simplicial by inserting ray sums of non-simplicial cones, smallest first
  for (;; ++step) {
    const Fan& cur = res.fan;
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < cur.cones().size(); ++i)
      if (cur.cones()[i].size() != cur.dim(i) && (!worst || cur.dim(i) < cur.dim(*worst))) worst = i;
    if (!worst) break;
    if (step >= max_steps) throw Error(ErrorCode::BudgetExceeded, "resolution did not finish");
    LatticeVector v(cur.rank());
    for (const auto& r : cur.cone_rays(*worst)) v += r;
    v = v.primitive();
    res.fan = star_subdivision(cur, v);
    res.inserted.push_back(v);
  }

  // simplicial phase on bare ray-index sets
  const std::size_t n = res.fan.rank();
  std::vector<LatticeVector> rays = res.fan.rays();
  std::vector<std::vector<std::size_t>> maxc;
  for (std::size_t m : res.fan.maximal_cones()) maxc.push_back(res.fan.cones()[m]);
  std::map<std::vector<std::size_t>, bool> smooth_cache;
  auto pick_rays = [&](const std::vector<std::size_t>& idx) { return pick(rays, idx); };
  bool changed = false;
  for (;; ++step) {
    std::set<std::vector<std::size_t>> faces;
    for (const auto& c : maxc)
      for (std::size_t mask = 1; mask < (std::size_t(1) << c.size()); ++mask) {
        std::vector<std::size_t> t;
        for (std::size_t k = 0; k < c.size(); ++k)
          if (mask >> k & 1) t.push_back(c[k]);
        if (t.size() >= 2) faces.insert(t);
      }
    std::optional<std::vector<std::size_t>> worst;
    for (const auto& t : faces) {
      if (worst && t.size() >= worst->size()) continue;
      auto it = smooth_cache.find(t);
      if (it == smooth_cache.end()) it = smooth_cache.emplace(t, smooth_rays(pick_rays(t), n)).first;
      if (!it->second) worst = t;
    }
    if (!worst) break;
    if (step >= max_steps) throw Error(ErrorCode::BudgetExceeded, "resolution did not finish");

    // the Hilbert basis element with the smallest largest barycentric coordinate
    const auto trays = pick_rays(*worst);
    IntMatrix m = IntMatrix::from_columns(trays, n);
    LatticeVector v;
    std::optional<std::pair<Rat, Rat>> best;
    for (const auto& h : hilbert_basis(RationalCone(n, trays))) {
      if (std::find(trays.begin(), trays.end(), h) != trays.end()) continue;
      auto lambda = solve_rational(m, std::vector<Rat>(h.begin(), h.end()));
      Rat top = 0, sum = 0;
      for (const Rat& l : *lambda) {
        if (l > top) top = l;
        sum += l;
      }
      std::pair<Rat, Rat> key{top, sum};
      if (!best || key < *best || (key == *best && h < v)) {
        best = key;
        v = h;
      }
    }
    if (!best) throw Error(ErrorCode::Precondition, "singular cone without an interior Hilbert basis element");

    const std::size_t vi = rays.size();
    rays.push_back(v);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : maxc) {
      if (!std::includes(c.begin(), c.end(), worst->begin(), worst->end())) {
        next.push_back(c);
        continue;
      }
      for (std::size_t r : *worst) {
        std::vector<std::size_t> d;
        for (std::size_t k : c)
          if (k != r) d.push_back(k);
        d.push_back(vi);
        next.push_back(d);
      }
    }
    maxc = std::move(next);
    res.inserted.push_back(v);
    changed = true;
  }
  if (changed) res.fan = Fan::unchecked(n, rays, maxc);
  return res;
}

namespace {

bool refines(const Fan& fine, const Fan& coarse) {
  for (std::size_t i : fine.maximal_cones())
    if (!coarse.smallest_cone_containing(fine.cone(i))) return false;
  return true;
}

}  // namespace

Factorization factor_through(const Fan& base, const Fan& target, std::size_t budget) {
  if (!base.is_smooth()) throw Error(ErrorCode::NotSmooth, "base fan must be smooth");
  if (!is_fan_subdivision(target, base)) throw Error(ErrorCode::NotSubdivision, "target does not subdivide the base");
  Factorization out{0, base, {}};
  for (std::size_t level = 0; level <= budget; ++level) {
    if (refines(out.fan, target)) {
      out.level = level;
      return out;
    }
    if (level == budget) break;
    // one barycentric round as explicit star steps
    const Fan start = out.fan;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < start.cones().size(); ++i)
      if (start.cones()[i].size() >= 2) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return start.cones()[a].size() > start.cones()[b].size(); });
    for (std::size_t i : order) {
      const auto rays = start.cone_rays(i);
      LatticeVector s(start.rank());
      std::vector<std::size_t> center;
      for (const auto& r : rays) {
        s += r;
        center.push_back(*out.fan.ray_index(r));
      }
      if (!out.fan.index_of(center)) throw Error(ErrorCode::Precondition, "center is not a cone of the current fan");
      TowerStep step{out.fan, center, s};
      out.fan = star_subdivision(out.fan, s);
      out.tower.push_back(std::move(step));
    }
  }
  throw Error(ErrorCode::BudgetExceeded, "no barycentric level up to the budget refines the target");
}

bool is_proper_fan_map(const FanMorphism& f) {
  const std::size_t d = f.source.rank();
  for (std::size_t s = 0; s < f.target.cones().size(); ++s) {
    const RationalCone& sigma = f.target.cone(s);
    std::vector<LatticeVector> ineq, eq;
    IntMatrix phi_t = f.phi.transpose();
    for (const auto& n : sigma.facets()) ineq.push_back(phi_t * n);
    for (const auto& e : sigma.equations()) eq.push_back(phi_t * e);
    RationalCone pre = RationalCone::from_inequalities(d, ineq, eq);
    std::vector<RationalCone> pieces;
    for (std::size_t i = 0; i < f.source.cones().size(); ++i)
      if (pre.contains(f.source.cone(i))) pieces.push_back(f.source.cone(i));
    if (!covers(pre, pieces)) return false;
  }
  return true;
}

bool is_birational_fan_map(const FanMorphism& f) {
  if (f.phi.rows() != f.phi.cols() || abs(determinant(f.phi)) != 1) return false;
  std::vector<LatticeVector> mapped;
  for (const auto& r : f.source.rays()) mapped.push_back(f.phi * r);
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t i : f.source.maximal_cones()) cones.push_back(f.source.cones()[i]);
  return is_fan_subdivision(Fan(f.target.rank(), mapped, cones), f.target);
}

}  // namespace msch
