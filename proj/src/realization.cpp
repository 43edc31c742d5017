#include "msch/realization.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace msch {

namespace {

using Exponent = std::vector<Int>;

bool dominates(const Exponent& c, const Exponent& u) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < u[i]) return false;
  return true;
}

Int total(const Exponent& c) {
  Int s(0);
  for (const auto& x : c) s += x;
  return s;
}

}  // namespace

AlgebraPresentation present_algebra(const AffineMonoid& a, std::size_t degree_bound) {
  AlgebraPresentation out;
  const auto& gens = a.generators();
  const std::size_t m = gens.size();
  out.variables = m;
  out.generators = gens;
  out.degree_bound = degree_bound;
  out.is_domain = a.is_cancellative();
  out.is_reduced = is_reduced(a);
  out.is_normal_claimed = a.is_cancellative() && is_normal(a);

  // Every exponent vector of total degree <= bound, grouped by lattice value.
  std::map<LatticeVector, std::vector<Exponent>> fibers;
  Exponent cur(m, Int(0));
  LatticeVector val(a.rank());
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t left) {
    if (i == m) {
      fibers[val].push_back(cur);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      cur[i] = Int(k);
      walk(i + 1, left - k);
      val += gens[i];
    }
    for (std::size_t k = 0; k <= left; ++k) val -= gens[i];
    cur[i] = 0;
  };
  walk(0, degree_bound);

  const LatticeVector omega = a.cone().positive_functional();
  std::vector<const std::pair<const LatticeVector, std::vector<Exponent>>*> order;
  for (const auto& f : fibers) order.push_back(&f);
  std::stable_sort(order.begin(), order.end(), [&](auto* x, auto* y) {
    Int ox = dot(omega, x->first), oy = dot(omega, y->first);
    if (ox != oy) return ox < oy;
    return total(x->second.front()) < total(y->second.front());
  });

  for (const auto* fiber : order) {
    const auto& members = fiber->second;
    if (members.size() < 2) continue;
    std::set<Exponent> in_fiber(members.begin(), members.end());
    std::vector<bool> seen(members.size(), false);
    auto index_of = [&](const Exponent& c) {
      return static_cast<std::size_t>(std::find(members.begin(), members.end(), c) - members.begin());
    };
    // Components under the moves found so far; each extra component costs a relation to members[0].
    for (std::size_t s = 0; s < members.size(); ++s) {
      if (seen[s]) continue;
      if (s > 0) out.binomials.push_back({members[0], members[s]});
      std::vector<std::size_t> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        const Exponent c = members[stack.back()];
        stack.pop_back();
        for (const auto& b : out.binomials)
          for (int dir = 0; dir < 2; ++dir) {
            const Exponent& from = dir ? b.rhs : b.lhs;
            const Exponent& to = dir ? b.lhs : b.rhs;
            if (!dominates(c, from)) continue;
            Exponent next = c;
            for (std::size_t i = 0; i < m; ++i) next[i] += to[i] - from[i];
            if (!in_fiber.count(next)) continue;
            std::size_t k = index_of(next);
            if (!seen[k]) {
              seen[k] = true;
              stack.push_back(k);
            }
          }
      }
    }
  }
  for (const auto& h : a.ideal_generators()) {
    auto c = a.decompose(h);
    if (!c) throw Error(ErrorCode::NotInMonoid, "ideal generator outside the monoid");
    out.monomials.push_back(*c);
  }
  if (out.binomials.empty() && rank(gens, a.rank()) < m)
    throw Error(ErrorCode::BoundTooSmall,
                "generators are dependent but no relation has degree <= " + std::to_string(degree_bound));
  return out;
}

Manifest realize_scheme_manifest(const MonoidScheme& x, std::size_t degree_bound, std::string note) {
  SeparatedResult sep = is_separated(x);
  if (!sep.separated) throw Error(ErrorCode::NotSeparated, sep.reason);
  Manifest out;
  out.note = std::move(note);
  const auto maxima = x.maximal_points();
  for (std::size_t p = 0; p < x.size(); ++p) {
    bool chart = std::find(maxima.begin(), maxima.end(), p) != maxima.end();
    out.points.push_back({x.label(p), x.height(p), chart, present_algebra(x.stalk(p), degree_bound)});
  }
  auto images = [&](std::size_t chart, std::size_t overlap) {
    std::vector<std::vector<Int>> rows;
    for (const auto& g : x.stalk(chart).generators()) {
      auto c = x.stalk(overlap).decompose(x.restrict(chart, overlap, g));
      if (!c) throw Error(ErrorCode::Precondition, "restriction leaves the overlap monoid");
      rows.push_back(*c);
    }
    return rows;
  };
  for (std::size_t i = 0; i < maxima.size(); ++i)
    for (std::size_t j = i + 1; j < maxima.size(); ++j) {
      std::optional<std::size_t> glb;
      for (std::size_t z = 0; z < x.size(); ++z) {
        if (!x.le(z, maxima[i]) || !x.le(z, maxima[j])) continue;
        if (!glb || x.le(*glb, z)) glb = z;
      }
      if (!glb) continue;
      out.gluings.push_back({maxima[i], maxima[j], *glb, images(maxima[i], *glb), images(maxima[j], *glb)});
    }
  return out;
}

}  // namespace msch
