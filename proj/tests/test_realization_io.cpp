#include "corpus.hpp"

#include "msch/error.hpp"
#include "msch/io.hpp"
#include "msch/realization.hpp"

#include <gtest/gtest.h>

using namespace msch;

namespace {

LatticeVector expand(const AlgebraPresentation& p, const std::vector<Int>& e) {
  LatticeVector v(p.generators.front().rank());
  for (std::size_t i = 0; i < e.size(); ++i) v += e[i] * p.generators[i];
  return v;
}

// a relation between distinct monomials, in either orientation
bool has_relation(const AlgebraPresentation& p, std::vector<Int> a, std::vector<Int> b) {
  for (const auto& r : p.binomials)
    if ((r.lhs == a && r.rhs == b) || (r.lhs == b && r.rhs == a)) return true;
  return false;
}

}  // namespace

TEST(Present, Examples) {
  AlgebraPresentation cusp = present_algebra(corpus::cusp(), 4);
  EXPECT_EQ(cusp.variables, 2u);
  ASSERT_EQ(cusp.binomials.size(), 1u);
  // generators (2),(3): x^3 = y^2
  EXPECT_TRUE(has_relation(cusp, {3, 0}, {0, 2}));
  EXPECT_TRUE(cusp.is_domain);

  AlgebraPresentation free3 = present_algebra(AffineMonoid::free(3), 4);
  EXPECT_TRUE(free3.binomials.empty());
  EXPECT_TRUE(free3.monomials.empty());

  AlgebraPresentation quadric = present_algebra(AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}), 4);
  ASSERT_EQ(quadric.binomials.size(), 1u);
  EXPECT_TRUE(has_relation(quadric, {1, 0, 1}, {0, 2, 0}));
  EXPECT_TRUE(quadric.is_domain);
  EXPECT_TRUE(quadric.is_normal_claimed);
}

TEST(Present, BinomialsAreLatticeEqualities) {
  for (const auto& a : {corpus::cusp(), AffineMonoid(1, {{3}, {5}, {7}}), AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}, {1, 3}}),
                        AffineMonoid(2, {{1, 0}, {-1, 0}, {0, 1}})}) {
    AlgebraPresentation p = present_algebra(a, 6);
    EXPECT_FALSE(p.binomials.empty());
    for (const auto& r : p.binomials) EXPECT_EQ(expand(p, r.lhs), expand(p, r.rhs));
  }
}

TEST(Present, IdealBecomesMonomials) {
  AlgebraPresentation p = present_algebra(AffineMonoid(2, {{1, 0}, {0, 1}}, {{1, 1}}), 4);
  ASSERT_EQ(p.monomials.size(), 1u);
  EXPECT_EQ(p.monomials[0], (std::vector<Int>{1, 1}));
  EXPECT_FALSE(p.is_domain);
  EXPECT_TRUE(p.is_reduced);
}

TEST(Present, BoundTooSmall) {
  try {
    present_algebra(AffineMonoid(1, {{5}, {7}}), 4);
    FAIL() << "expected BoundTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundTooSmall);
  }
  EXPECT_EQ(present_algebra(AffineMonoid(1, {{5}, {7}}), 7).binomials.size(), 1u);
}

TEST(Manifest, Examples) {
  Manifest p1 = realize_scheme_manifest(scheme_from_fan(corpus::p1()));
  EXPECT_EQ(p1.points.size(), 3u);
  ASSERT_EQ(p1.gluings.size(), 1u);
  std::size_t charts = 0;
  for (const auto& pt : p1.points) {
    charts += pt.chart;
    if (pt.chart) EXPECT_TRUE(pt.algebra.binomials.empty());
  }
  EXPECT_EQ(charts, 2u);

  Manifest bl = realize_scheme_manifest(scheme_from_fan(star_subdivision(corpus::orthant(2), corpus::ones(2))));
  EXPECT_EQ(bl.gluings.size(), 1u);
  for (const auto& pt : bl.points)
    if (pt.chart) EXPECT_EQ(pt.algebra.variables, 2u);

  try {
    realize_scheme_manifest(corpus::doubled_plane());
    FAIL() << "expected NotSeparated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSeparated);
  }
}

TEST(Io, MonoidRoundTrip) {
  for (const auto& a : {corpus::cusp(), AffineMonoid(2, {{1, 0}, {0, 1}}, {{1, 1}}), AffineMonoid(2, {{1, 0}, {-1, 0}, {0, 1}})}) {
    const std::string text = dump(to_json(a));
    AffineMonoid back = monoid_from_json(parse_json(text));
    EXPECT_TRUE(back == a);
    EXPECT_EQ(dump(to_json(back)), text);
  }
}

TEST(Io, FanRoundTrip) {
  for (const auto& [name, fan] : corpus::fan_corpus()) {
    const std::string text = dump(to_json(fan));
    Fan back = fan_from_json(parse_json(text));
    EXPECT_TRUE(back == fan) << name;
    EXPECT_EQ(dump(to_json(back)), text) << name;
  }
}

TEST(Io, SchemeRoundTrip) {
  for (const auto& [name, x] : corpus::square_corpus()) {
    const std::string text = dump(to_json(*x));
    MonoidScheme back = scheme_from_json(parse_json(text));
    EXPECT_EQ(dump(to_json(back)), text) << name;
    EXPECT_TRUE(find_isomorphism(back, *x)) << name;
  }
}

TEST(Io, LargeIntegersAsStrings) {
  Int big = Int(1) << 80;
  Json j = to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(int_from_json(j), big);
  EXPECT_TRUE(to_json(Int(-7)).is_number_integer());
}

TEST(Io, MalformedInputs) {
  EXPECT_THROW(parse_json("{"), std::exception);
  EXPECT_THROW(monoid_from_json(parse_json(R"({"rank": 2, "generators": [[1]]})")), Error);
  EXPECT_THROW(fan_from_json(parse_json(R"({"rank": 1, "rays": [[1], [-1]], "cones": [[0, 1]]})")), Error);
}

TEST(Io, DotOutput) {
  std::string s = scheme_dot(scheme_from_fan(corpus::p1()));
  EXPECT_NE(s.find("digraph"), std::string::npos);
  EXPECT_NE(fan_dot(corpus::p2()).find("dim=2"), std::string::npos);
}
