#pragma once

// Brute-force reference computations used only by the tests. None of them
// call into the library's cone or monoid algorithms.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline long long det2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline long long det3(const Vec& a, const Vec& b, const Vec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline long long det(const std::vector<Vec>& rays) {
  return rays.size() == 2 ? det2(rays[0], rays[1]) : det3(rays[0], rays[1], rays[2]);
}

/// Barycentric coordinates of v in a full-dimensional simplicial cone, scaled
/// by |det| (Cramer's rule, so the scale is exact).
inline Vec scaled_coords(const std::vector<Vec>& rays, const Vec& v) {
  const long long d = det(rays);
  Vec out(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    auto r = rays;
    r[i] = v;
    out[i] = det(r) * (d < 0 ? -1 : 1);
  }
  return out;
}

/// Hilbert basis of a full-dimensional simplicial cone in Z^2 or Z^3 by
/// enumerating every lattice point of the closed parallelepiped spanned by the
/// rays (which contains all irreducibles) and discarding decomposable ones.
inline std::set<Vec> hilbert_basis_box(const std::vector<Vec>& rays) {
  const std::size_t n = rays.size();
  const long long d = std::llabs(det(rays));
  Vec lo(n, 0), hi(n, 0);
  for (const auto& r : rays)
    for (std::size_t k = 0; k < n; ++k) (r[k] < 0 ? lo[k] : hi[k]) += r[k];

  std::vector<Vec> pts, coords;
  Vec v(n);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == n) {
      Vec c = scaled_coords(rays, v);
      bool zero = true;
      for (long long x : c) {
        if (x < 0 || x > d) return;
        if (x) zero = false;
      }
      if (zero) return;
      pts.push_back(v);
      coords.push_back(c);
      return;
    }
    for (long long x = lo[k]; x <= hi[k]; ++x) {
      v[k] = x;
      walk(k + 1);
    }
  };
  walk(0);

  std::set<Vec> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool irreducible = true;
    for (std::size_t j = 0; j < pts.size() && irreducible; ++j) {
      if (i == j) continue;
      bool below = true;
      for (std::size_t k = 0; k < n && below; ++k) below = coords[j][k] <= coords[i][k];
      if (below) irreducible = false;  // pts[i] - pts[j] is a nonzero cone point
    }
    if (irreducible) out.insert(pts[i]);
  }
  return out;
}

/// All nonnegative combinations of gens with total multiplicity <= bound.
inline std::map<Vec, std::vector<Vec>> small_combinations(const std::vector<Vec>& gens, std::size_t rank, int bound) {
  std::map<Vec, std::vector<Vec>> out;  // value -> multiplicity vectors
  Vec m(gens.size(), 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
    if (i == gens.size()) {
      Vec v(rank, 0);
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t k = 0; k < rank; ++k) v[k] += m[g] * gens[g][k];
      out[v].push_back(m);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      m[i] = c;
      walk(i + 1, left - c);
    }
    m[i] = 0;
  };
  walk(0, bound);
  return out;
}

/// Faces of <gens> as generator index sets: T is a face when no small
/// relation sum(m_i g_i) = sum(n_j g_j) has its right side supported on T and
/// its left side touching a generator outside T. For the small monoids used in
/// the tests the relations of degree <= bound already decide this.
inline std::set<std::vector<std::size_t>> faces(const std::vector<Vec>& gens, std::size_t rank, int bound = 6) {
  const auto combos = small_combinations(gens, rank, bound);
  std::set<std::vector<std::size_t>> out;
  const std::size_t n = gens.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool face = true;
    for (const auto& [value, reps] : combos) {
      bool inside = false, outside = false;
      for (const auto& m : reps) {
        bool in = true, touches = false;
        for (std::size_t g = 0; g < n; ++g)
          if (m[g] > 0 && !(mask >> g & 1u)) in = false, touches = true;
        inside = inside || in;
        outside = outside || touches;
      }
      if (inside && outside) {
        face = false;
        break;
      }
    }
    if (!face) continue;
    std::vector<std::size_t> t;
    for (std::size_t g = 0; g < n; ++g)
      if (mask >> g & 1u) t.push_back(g);
    out.insert(t);
  }
  return out;
}

/// v ∈ <gens[i] : i ∈ t> with small multiplicities.
inline bool in_submonoid(const std::vector<Vec>& gens, const std::vector<std::size_t>& t, const Vec& v, int bound = 8) {
  std::vector<Vec> sub;
  for (std::size_t i : t) sub.push_back(gens[i]);
  if (v == Vec(v.size(), 0)) return true;
  return small_combinations(sub, v.size(), bound).count(v) > 0;
}

}  // namespace oracle
