#pragma once

// Fixed and seeded-random test inputs shared by the acceptance runner and the
// unit tests.

#include "msch/blowup.hpp"
#include "msch/fan.hpp"
#include "msch/toric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace corpus {

using namespace msch;

inline std::vector<long long> ll(const LatticeVector& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(static_cast<long long>(x));
  return out;
}

inline LatticeVector lv(const std::vector<long long>& v) {
  std::vector<Int> c(v.begin(), v.end());
  return LatticeVector(std::move(c));
}

inline Fan orthant(std::size_t d) {
  std::vector<LatticeVector> rays;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < d; ++i) {
    rays.push_back(LatticeVector::unit(d, i));
    all.push_back(i);
  }
  return Fan(d, rays, {all});
}

inline LatticeVector ones(std::size_t d) {
  LatticeVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = 1;
  return v;
}

inline Fan p1() { return Fan(1, {{1}, {-1}}, {{0}, {1}}); }
inline Fan p2() { return Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}); }
inline Fan hirzebruch(long long a) { return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline Fan single_cone(std::vector<LatticeVector> rays) {
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < rays.size(); ++i) all.push_back(i);
  const std::size_t rank = rays.front().rank();
  return Fan(rank, std::move(rays), {all});
}

inline long long det(const std::vector<std::vector<long long>>& r) {
  if (r.size() == 2) return r[0][0] * r[1][1] - r[0][1] * r[1][0];
  return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
         r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

inline std::vector<long long> primitive(std::vector<long long> v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, std::llabs(x));
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

/// Full-dimensional simplicial cones with primitive rays, entries in [-6, 6].
/// `singular` asks for |det| > 1.
inline std::vector<std::vector<std::vector<long long>>> random_cones(std::size_t dim, std::size_t count,
                                                                     std::uint64_t seed, bool singular) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coord(-6, 6);
  std::vector<std::vector<std::vector<long long>>> out;
  while (out.size() < count) {
    std::vector<std::vector<long long>> rays;
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<long long> v(dim);
      for (auto& x : v) x = coord(rng);
      rays.push_back(primitive(v));
    }
    long long d = std::llabs(det(rays));
    if (d == 0 || (singular && d == 1)) continue;
    out.push_back(rays);
  }
  return out;
}

inline Fan cone_fan(const std::vector<std::vector<long long>>& rays) {
  std::vector<LatticeVector> v;
  for (const auto& r : rays) v.push_back(lv(r));
  return single_cone(v);
}

/// Complete 2-d fan from rays sorted by angle, every gap below pi.
inline Fan random_complete_fan2(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> coord(-4, 4);
  for (;;) {
    std::size_t k = 3 + rng() % 4;
    std::vector<std::vector<long long>> rays;
    while (rays.size() < k) {
      auto v = primitive({coord(rng), coord(rng)});
      if (v[0] == 0 && v[1] == 0) continue;
      bool dup = false;
      for (const auto& r : rays) dup = dup || r == v;
      if (!dup) rays.push_back(v);
    }
    std::sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) {
      return std::atan2(double(a[1]), double(a[0])) < std::atan2(double(b[1]), double(b[0]));
    });
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = det({rays[i], rays[(i + 1) % k]}) > 0;
    if (!ok) continue;
    std::vector<LatticeVector> v;
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < k; ++i) {
      v.push_back(lv(rays[i]));
      cones.push_back({i, (i + 1) % k});
    }
    return Fan(2, v, cones);
  }
}

/// A simplicial 3-d cone star-subdivided at a random interior point.
inline Fan random_subdivided_cone3(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> coord(0, 4), weight(1, 3);
  for (;;) {
    std::vector<std::vector<long long>> rays;
    for (int i = 0; i < 3; ++i) rays.push_back(primitive({coord(rng), coord(rng), coord(rng)}));
    if (det(rays) == 0) continue;
    LatticeVector w(3);
    for (const auto& r : rays) w += Int(weight(rng)) * lv(r);
    return star_subdivision(cone_fan(rays), w);
  }
}

/// Fans for the scheme round trip.
inline std::vector<std::pair<std::string, Fan>> fan_corpus() {
  std::vector<std::pair<std::string, Fan>> out = {
      {"P1", p1()},
      {"P2", p2()},
      {"F1", hirzebruch(1)},
      {"F2", hirzebruch(2)},
      {"Bl0 A2", star_subdivision(orthant(2), ones(2))},
      {"Bl0 A3", star_subdivision(orthant(3), ones(3))},
      {"Bl P2", star_subdivision(p2(), {1, 1})},
      {"quadric", single_cone({{0, 1}, {2, -1}})},
  };
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3; ++i) out.push_back({"random2 #" + std::to_string(i), random_complete_fan2(rng)});
  for (int i = 0; i < 2; ++i) out.push_back({"random3 #" + std::to_string(i), random_subdivided_cone3(rng)});
  return out;
}

inline std::shared_ptr<const MonoidScheme> share(MonoidScheme x) {
  return std::make_shared<const MonoidScheme>(std::move(x));
}

inline MonoidScheme affine_space(std::size_t d) { return from_affine(AffineMonoid::free(d)); }

inline MonoidScheme doubled_plane() {
  AffineMonoid f2 = AffineMonoid::free(2);
  return glue({f2, f2}, {{0, {0}, 1, {0}, IntMatrix::identity(2)}, {0, {1}, 1, {1}, IntMatrix::identity(2)}});
}

inline AffineMonoid cusp() { return AffineMonoid(1, {{2}, {3}}); }

/// The ideal generated by the minimal non-units at the closed point of an affine scheme.
inline IdealSheaf maximal_ideal(const MonoidScheme& x) {
  std::size_t top = x.maximal_points().at(0);
  return ideal_sheaf_from_generators(x, {{top, x.stalk(top).minimal_nonunit_generators()}});
}

/// Schemes whose generated squares are checked.
inline std::vector<std::pair<std::string, std::shared_ptr<const MonoidScheme>>> square_corpus() {
  return {
      {"cusp", share(from_affine(cusp()))},
      {"quadric", share(scheme_from_fan(single_cone({{0, 1}, {2, -1}})))},
      {"A_3", share(scheme_from_fan(single_cone({{0, 1}, {4, -1}})))},
      {"cone(1,2)", share(scheme_from_fan(single_cone({{1, 0}, {1, 2}})))},
      {"3-d cone", share(scheme_from_fan(single_cone({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}})))},
      {"P1", share(scheme_from_fan(p1()))},
      {"P2", share(scheme_from_fan(p2()))},
      {"A2", share(affine_space(2))},
      {"doubled plane", share(doubled_plane())},
      {"axes", share(from_affine(AffineMonoid(2, {{1, 0}, {0, 1}}, {{1, 1}})))},
  };
}

}  // namespace corpus
