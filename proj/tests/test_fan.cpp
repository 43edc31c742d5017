#include "corpus.hpp"
#include "oracles.hpp"

#include "msch/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace msch;

namespace {

std::size_t count_dim(const Fan& f, std::size_t d) {
  std::size_t n = 0;
  for (std::size_t i : f.maximal_cones()) n += f.dim(i) == d;
  return n;
}

// |det| of every maximal cone, through the oracle determinant
bool unimodular_by_oracle(const Fan& f) {
  for (std::size_t i : f.maximal_cones()) {
    std::vector<oracle::Vec> rays;
    for (const auto& r : f.cone_rays(i)) rays.push_back(corpus::ll(r));
    if (rays.size() != f.rank()) return false;
    if (std::llabs(oracle::det(rays)) != 1) return false;
  }
  return true;
}

}  // namespace

TEST(Fan, FacesAreCompleted) {
  Fan o = corpus::orthant(3);
  EXPECT_EQ(o.cones().size(), 8u);
  EXPECT_TRUE(o.cones().front().empty());
  EXPECT_EQ(corpus::p2().cones().size(), 7u);
}

TEST(Fan, RejectsOverlaps) {
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}), Error);
  EXPECT_THROW(Fan(2, {{1, 0}, {-1, 0}}, {{0, 1}}), Error);
}

TEST(Star, Examples) {
  Fan a = star_subdivision(corpus::orthant(2), corpus::ones(2));
  EXPECT_EQ(a.maximal_cones().size(), 2u);
  EXPECT_TRUE(a.is_smooth());
  EXPECT_TRUE(star_subdivision(corpus::orthant(2), {1, 0}) == corpus::orthant(2));
  Fan b = star_subdivision(corpus::orthant(3), corpus::ones(3));
  EXPECT_EQ(b.maximal_cones().size(), 3u);
  EXPECT_TRUE(is_fan_subdivision(b, corpus::orthant(3)));
}

TEST(Barycentric, Examples) {
  Fan a = barycentric_subdivision(corpus::orthant(2));
  EXPECT_EQ(a.rays().size(), 3u);
  EXPECT_EQ(a.maximal_cones().size(), 2u);
  Fan line(1, {{1}}, {{0}});
  EXPECT_TRUE(barycentric_subdivision(line) == line);
  Fan c = barycentric_subdivision(corpus::orthant(3));
  EXPECT_EQ(count_dim(c, 3), 6u);
  EXPECT_TRUE(is_fan_subdivision(c, corpus::orthant(3)));
  EXPECT_TRUE(iterated_barycentric(corpus::orthant(2), 0) == corpus::orthant(2));
  EXPECT_EQ(iterated_barycentric(corpus::orthant(2), 2).maximal_cones().size(), 4u);
}

TEST(Resolve, Examples) {
  Resolution r = resolve(corpus::single_cone({{1, 0}, {1, 2}}));
  EXPECT_EQ(r.inserted, (std::vector<LatticeVector>{{1, 1}}));
  EXPECT_TRUE(r.fan.is_smooth());
  EXPECT_TRUE(resolve(corpus::p2()).inserted.empty());
  Resolution s = resolve(corpus::single_cone({{1, 0}, {1, 3}}));
  EXPECT_EQ(s.inserted.size(), 2u);
  EXPECT_TRUE(s.fan.is_smooth());
  EXPECT_TRUE(is_fan_subdivision(s.fan, corpus::single_cone({{1, 0}, {1, 3}})));
}

TEST(Resolve, RandomConesBecomeUnimodularSubdivisions) {
  for (std::size_t dim : {2, 3})
    for (const auto& rays : corpus::random_cones(dim, dim == 2 ? 15 : 4, 77 + dim, true)) {
      Fan base = corpus::cone_fan(rays);
      Resolution r = resolve(base);
      EXPECT_TRUE(unimodular_by_oracle(r.fan));
      EXPECT_TRUE(is_fan_subdivision(r.fan, base));
    }
}

TEST(Factor, Examples) {
  Fan o = corpus::orthant(2);
  Factorization same = factor_through(o, o);
  EXPECT_EQ(same.level, 0u);
  EXPECT_TRUE(same.tower.empty());

  Fan bl = star_subdivision(o, corpus::ones(2));
  Factorization one = factor_through(o, bl);
  EXPECT_EQ(one.level, 1u);
  EXPECT_TRUE(is_fan_subdivision(one.fan, bl));

  Fan skew = star_subdivision(o, {2, 1});
  Factorization two = factor_through(o, skew);
  EXPECT_GE(two.level, 2u);
  EXPECT_TRUE(is_fan_subdivision(two.fan, skew));
  // the tower ends at the level fan and each step is a smooth star subdivision
  for (const auto& step : two.tower) EXPECT_TRUE(step.before.is_smooth());
}

TEST(FanMaps, ProperAndBirational) {
  Fan point(0, {}, {{}});
  EXPECT_TRUE(is_proper_fan_map(make_fan_morphism(corpus::p1(), point, IntMatrix(0, 1))));
  Fan a1(1, {{1}}, {{0}});
  EXPECT_FALSE(is_proper_fan_map(make_fan_morphism(a1, point, IntMatrix(0, 1))));
  Fan bl = star_subdivision(corpus::orthant(2), corpus::ones(2));
  FanMorphism pi = make_fan_morphism(bl, corpus::orthant(2), IntMatrix::identity(2));
  EXPECT_TRUE(is_proper_fan_map(pi));
  EXPECT_TRUE(is_birational_fan_map(pi));
  EXPECT_FALSE(is_birational_fan_map(make_fan_morphism(corpus::p1(), point, IntMatrix(0, 1))));
}

TEST(FanMaps, RejectsConesLeavingTheTarget) {
  EXPECT_THROW(make_fan_morphism(corpus::p1(), Fan(1, {{1}}, {{0}}), IntMatrix::identity(1)), Error);
}
