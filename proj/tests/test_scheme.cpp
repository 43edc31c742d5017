#include "corpus.hpp"

#include "msch/error.hpp"
#include "msch/scheme_ops.hpp"

#include <gtest/gtest.h>

using namespace msch;

namespace {

AffineMonoid f(std::size_t n) { return AffineMonoid::free(n); }

std::vector<std::size_t> at_height(const MonoidScheme& x, std::size_t h) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < x.size(); ++p)
    if (x.height(p) == h) out.push_back(p);
  return out;
}

}  // namespace

TEST(FromAffine, Examples) {
  MonoidScheme a2 = from_affine(f(2));
  EXPECT_EQ(a2.size(), 4u);
  EXPECT_EQ(a2.maximal_points().size(), 1u);
  EXPECT_EQ(a2.minimal_points().size(), 1u);
  EXPECT_EQ(at_height(a2, 1).size(), 2u);
  EXPECT_EQ(from_affine(AffineMonoid(1, {{1}}, {{1}})).size(), 1u);
  MonoidScheme cusp = from_affine(corpus::cusp());
  EXPECT_EQ(cusp.size(), 2u);
  EXPECT_EQ(cusp.dimension(), 1u);
}

TEST(Glue, ProjectiveLine) {
  MonoidScheme p1 = glue({AffineMonoid(1, {{1}}), AffineMonoid(1, {{-1}})}, {{0, {0}, 1, {0}, IntMatrix::identity(1)}});
  EXPECT_EQ(p1.size(), 3u);
  EXPECT_EQ(p1.maximal_points().size(), 2u);
  EXPECT_TRUE(is_separated(p1).separated);
  EXPECT_EQ(components(p1).size(), 1u);
  EXPECT_TRUE(find_isomorphism(p1, scheme_from_fan(corpus::p1())).has_value());
}

TEST(Glue, DoubledPlane) {
  MonoidScheme d = corpus::doubled_plane();
  EXPECT_EQ(d.size(), 5u);
  EXPECT_EQ(d.maximal_points().size(), 2u);
  SeparatedResult s = is_separated(d);
  EXPECT_FALSE(s.separated);
  EXPECT_TRUE(s.violating.has_value());
}

TEST(Glue, TrivialSelfGluingIsAffine) {
  MonoidScheme x = glue({f(2)}, {});
  EXPECT_TRUE(find_isomorphism(x, from_affine(f(2))).has_value());
}

TEST(Glue, RejectsNonUnimodularIdentification) {
  EXPECT_THROW(glue({f(1), f(1)}, {{0, {0}, 1, {0}, IntMatrix{{2}}}}), Error);
}

TEST(Separated, AffineSchemes) {
  for (const auto& a : {f(2), corpus::cusp(), AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}})})
    EXPECT_TRUE(is_separated(from_affine(a)).separated);
}

TEST(Components, Examples) {
  MonoidScheme two_lines = glue({f(1), f(1)}, {});
  EXPECT_EQ(two_lines.size(), 4u);
  EXPECT_EQ(components(two_lines).size(), 2u);
  EXPECT_EQ(components(from_affine(corpus::cusp())).size(), 1u);
}

TEST(Smooth, Examples) {
  EXPECT_TRUE(is_smooth(from_affine(f(3))));
  EXPECT_FALSE(is_smooth(from_affine(AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}))));
  EXPECT_TRUE(is_smooth(from_affine(AffineMonoid(2, {{1, 0}, {-1, 0}, {0, 1}}))));
  EXPECT_FALSE(is_smooth(from_affine(corpus::cusp())));
}

TEST(Closure, Examples) {
  MonoidScheme a2 = from_affine(f(2));
  const std::size_t top = a2.maximal_points()[0], generic = a2.minimal_points()[0];

  Closure origin = equivariant_closure(a2, {top});
  EXPECT_EQ(origin.subscheme.scheme.size(), 1u);
  EXPECT_EQ(vanishing_locus(a2, origin.ideal), std::vector<std::size_t>{top});

  Closure whole = equivariant_closure(a2, {generic});
  EXPECT_EQ(whole.subscheme.scheme.size(), 4u);

  Closure axes = equivariant_closure(a2, at_height(a2, 1));
  const ChartIdeal& j = axes.ideal.charts.at(top);
  EXPECT_FALSE(j.unit);
  EXPECT_EQ(j.ideal.generators, (std::vector<LatticeVector>{{1, 1}}));
  EXPECT_EQ(axes.subscheme.scheme.size(), 3u);
}

TEST(ClosedSubscheme, AxisInPlane) {
  auto a2 = corpus::share(from_affine(f(2)));
  const std::size_t top = a2->maximal_points()[0];
  Immersion axis = closed_subscheme(a2, ideal_sheaf_from_generators(*a2, {{top, {{1, 0}}}}));
  EXPECT_EQ(axis.scheme->size(), 2u);
  EXPECT_TRUE(is_closed_immersion(axis.morphism));
  EXPECT_TRUE(is_equivariant(axis.morphism));
}

TEST(ClosedSubscheme, IdealRoundTrip) {
  auto a2 = corpus::share(from_affine(f(2)));
  IdealSheaf m = corpus::maximal_ideal(*a2);
  Immersion origin = closed_subscheme(a2, m);
  EXPECT_EQ(origin.scheme->size(), 1u);
  IdealSheaf back = ideal_of_immersion(origin.morphism);
  const std::size_t top = a2->maximal_points()[0];
  auto sorted = [](std::vector<LatticeVector> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(sorted(back.charts.at(top).ideal.generators), sorted(m.charts.at(top).ideal.generators));
}

TEST(Image, OpenImmersionAndAxis) {
  auto a2 = corpus::share(from_affine(f(2)));
  const std::size_t top = a2->maximal_points()[0];
  std::vector<std::size_t> d;
  for (std::size_t p : a2->down_set(top))
    if (p != top) d.push_back(p);
  // D(t1) is the down-set of the prime avoiding t1
  std::size_t chart = 0;
  for (std::size_t p : at_height(*a2, 1))
    if (a2->stalk(p).is_unit({1, 0})) chart = p;
  Immersion u = open_subscheme(a2, a2->down_set(chart));
  SchemeImage im = scheme_theoretic_image(u.morphism);
  EXPECT_EQ(im.scheme->size(), 4u);

  auto line = corpus::share(from_affine(f(1)));
  SchemeMorphism incl = morphism_from_matrix(line, a2, IntMatrix{{1, 0}});
  SchemeImage axis = scheme_theoretic_image(incl);
  EXPECT_EQ(axis.scheme->size(), 2u);
  EXPECT_TRUE(is_closed_immersion(axis.immersion));
}

TEST(FiberProduct, Examples) {
  auto p1 = corpus::share(scheme_from_fan(corpus::p1()));
  auto maxes = p1->maximal_points();
  Immersion u0 = open_subscheme(p1, p1->down_set(maxes[0]));
  Immersion u1 = open_subscheme(p1, p1->down_set(maxes[1]));
  MonoidScheme torus = fiber_product(u0.morphism, u1.morphism);
  EXPECT_EQ(torus.size(), 1u);
  EXPECT_EQ(torus.stalk(0).units().size(), 1u);

  auto a2 = corpus::share(from_affine(f(2)));
  const std::size_t top = a2->maximal_points()[0];
  Immersion x = closed_subscheme(a2, ideal_sheaf_from_generators(*a2, {{top, {{1, 0}}}}));
  Immersion y = closed_subscheme(a2, ideal_sheaf_from_generators(*a2, {{top, {{0, 1}}}}));
  MonoidScheme meet = fiber_product(x.morphism, y.morphism);
  EXPECT_EQ(meet.size(), 1u);
}

TEST(Toric, SchemeFromFan) {
  EXPECT_TRUE(find_isomorphism(scheme_from_fan(corpus::orthant(2)), from_affine(f(2))).has_value());
  MonoidScheme p1 = scheme_from_fan(corpus::p1());
  EXPECT_EQ(p1.size(), 3u);
  MonoidScheme q = scheme_from_fan(corpus::single_cone({{0, 1}, {2, -1}}));
  const AffineMonoid& top = q.stalk(q.maximal_points()[0]);
  auto gens = top.minimal_generators();
  std::sort(gens.begin(), gens.end());
  EXPECT_EQ(gens, (std::vector<LatticeVector>{{1, 0}, {1, 1}, {1, 2}}));
}

TEST(Toric, FanFromScheme) {
  Fan p1 = fan_from_scheme(scheme_from_fan(corpus::p1()));
  EXPECT_TRUE(fan_isomorphism(p1, corpus::p1()).has_value());
  Fan q = fan_from_scheme(from_affine(AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}})));
  EXPECT_TRUE(fan_isomorphism(q, corpus::single_cone({{0, 1}, {2, -1}})).has_value());
  Fan a2 = fan_from_scheme(from_affine(f(2)));
  EXPECT_TRUE(fan_isomorphism(a2, corpus::orthant(2)).has_value());
  EXPECT_THROW(fan_from_scheme(corpus::doubled_plane()), Error);
  EXPECT_THROW(fan_from_scheme(from_affine(corpus::cusp())), Error);
}

TEST(Toric, RoundTripOverCorpus) {
  for (const auto& [name, fan] : corpus::fan_corpus()) {
    Fan back = fan_from_scheme(scheme_from_fan(fan));
    EXPECT_TRUE(fan_isomorphism(back, fan).has_value()) << name;
  }
}

TEST(Toric, FanMaps) {
  Fan p2 = corpus::p2();
  SchemeMorphism id = morphism_from_fan_map(make_fan_morphism(p2, p2, IntMatrix::identity(2)));
  EXPECT_TRUE(is_isomorphism(id));

  Fan bl = star_subdivision(corpus::orthant(2), corpus::ones(2));
  SchemeMorphism pi = morphism_from_fan_map(make_fan_morphism(bl, corpus::orthant(2), IntMatrix::identity(2)));
  EXPECT_TRUE(is_birational(pi));
  EXPECT_EQ(is_proper(pi).proper, Tri::Yes);
  EXPECT_FALSE(is_isomorphism(pi));

  Fan point(0, {}, {{}});
  SchemeMorphism c = morphism_from_fan_map(make_fan_morphism(corpus::p1(), point, IntMatrix(0, 1)));
  EXPECT_EQ(c.target->size(), 1u);
  FanMorphism back = fan_map_from_morphism(pi);
  EXPECT_EQ(back.phi, IntMatrix::identity(2));
}
