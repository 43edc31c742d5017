#include "corpus.hpp"

#include "msch/error.hpp"
#include "msch/scheme_ops.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace msch;

namespace {

Fan point_fan() { return Fan(0, {}, {{}}); }

SchemeMorphism to_point(const Fan& f) {
  return morphism_from_fan_map(make_fan_morphism(f, point_fan(), IntMatrix(0, f.rank())));
}

SchemeMorphism subdivision_map(const Fan& fine, const Fan& coarse) {
  return morphism_from_fan_map(make_fan_morphism(fine, coarse, IntMatrix::identity(fine.rank())));
}

Fan a1() { return Fan(1, {{1}}, {{0}}); }

}  // namespace

TEST(Immersion, ClosedExamples) {
  auto a2 = corpus::share(corpus::affine_space(2));
  auto line = corpus::share(corpus::affine_space(1));
  Immersion axis = closed_subscheme(a2, ideal_sheaf_from_generators(*a2, {{a2->maximal_points()[0], {{0, 1}}}}));
  EXPECT_TRUE(is_closed_immersion(axis.morphism));
  EXPECT_TRUE(is_equivariant(axis.morphism));

  // t2 -> 1 cuts out the line t2 = 1, closed but not equivariant
  SchemeMorphism unit_line = morphism_from_matrix(line, a2, IntMatrix{{1, 0}});
  EXPECT_TRUE(is_closed_immersion(unit_line));
  EXPECT_FALSE(is_equivariant(unit_line));

  SchemeMorphism diagonal = morphism_from_matrix(line, a2, IntMatrix{{1, 1}});
  EXPECT_TRUE(is_closed_immersion(diagonal));
  EXPECT_FALSE(is_equivariant(diagonal));
  // the image misses the height-1 points, so it is not a closed subset
  for (std::size_t q = 0; q < a2->size(); ++q)
    if (a2->height(q) == 1)
      EXPECT_EQ(std::count(diagonal.point_map.begin(), diagonal.point_map.end(), q), 0);

  std::size_t chart = 0;
  for (std::size_t q = 0; q < a2->size(); ++q)
    if (a2->height(q) == 1) chart = q;
  Immersion u = open_subscheme(a2, a2->down_set(chart));
  EXPECT_TRUE(is_open_immersion(u.morphism));
  EXPECT_FALSE(is_closed_immersion(u.morphism));
}

TEST(Finite, Examples) {
  auto cusp = corpus::share(from_affine(corpus::cusp()));
  auto line = corpus::share(corpus::affine_space(1));
  EXPECT_EQ(is_finite(morphism_from_matrix(line, cusp, IntMatrix{{1}})), Tri::Yes);
  EXPECT_EQ(is_finite(to_point(a1())), Tri::No);
  EXPECT_EQ(is_finite(identity_morphism(line)), Tri::Yes);
}

TEST(Birational, Examples) {
  auto cusp = corpus::share(from_affine(corpus::cusp()));
  auto line = corpus::share(corpus::affine_space(1));
  EXPECT_TRUE(is_birational(morphism_from_matrix(line, cusp, IntMatrix{{1}})));
  EXPECT_TRUE(is_birational(subdivision_map(star_subdivision(corpus::orthant(2), corpus::ones(2)), corpus::orthant(2))));
  EXPECT_FALSE(is_birational(to_point(a1())));
}

TEST(Proper, Examples) {
  EXPECT_EQ(is_proper(to_point(corpus::p1())).proper, Tri::Yes);
  EXPECT_EQ(is_proper(to_point(a1())).proper, Tri::No);
  EXPECT_EQ(is_proper(to_point(corpus::p2())).proper, Tri::Yes);
  EXPECT_EQ(is_proper(subdivision_map(star_subdivision(corpus::orthant(3), corpus::ones(3)), corpus::orthant(3))).proper,
            Tri::Yes);
}

TEST(Proper, CompositionOfSubdivisions) {
  Fan o = corpus::orthant(2);
  Fan a = star_subdivision(o, corpus::ones(2));
  Fan b = star_subdivision(a, {2, 1});
  SchemeMorphism g = subdivision_map(a, o), f = subdivision_map(b, a);
  SchemeMorphism gf = compose(g, f);
  EXPECT_EQ(is_proper(gf).proper, Tri::Yes);
  EXPECT_TRUE(is_birational(gf));
  EXPECT_TRUE(check_height_monotone(gf));
}

TEST(Dvm, Examples) {
  SchemeMorphism p1 = to_point(corpus::p1());
  const std::size_t torus = 0;  // the zero cone
  EXPECT_EQ(dvm_lift_check(p1, {0, torus, IntMatrix{{1}}, 0}), LiftResult::UniqueLift);
  EXPECT_EQ(dvm_lift_check(p1, {0, torus, IntMatrix{{-1}}, 0}), LiftResult::UniqueLift);

  SchemeMorphism line = to_point(a1());
  EXPECT_EQ(dvm_lift_check(line, {0, torus, IntMatrix{{-1}}, 0}), LiftResult::NoLift);
  EXPECT_EQ(dvm_lift_check(line, {0, torus, IntMatrix{{1}}, 0}), LiftResult::UniqueLift);

  auto a1s = corpus::share(scheme_from_fan(a1()));
  SchemeMorphism id = identity_morphism(a1s);
  EXPECT_EQ(dvm_lift_check(id, {0, torus, IntMatrix{{1}}, 1}), LiftResult::UniqueLift);
}

TEST(Dvm, RejectsNonCommutingSquares) {
  auto a1s = corpus::share(scheme_from_fan(a1()));
  // valuation 1 on t forces the closed point to the origin, not the torus
  EXPECT_THROW(dvm_lift_check(identity_morphism(a1s), {0, 0, IntMatrix{{1}}, 0}), Error);
}

TEST(Dvm, ProperMorphismsLiftEverySquare) {
  for (const Fan& f : {corpus::p1(), corpus::p2(), corpus::hirzebruch(1)}) {
    SchemeMorphism m = to_point(f);
    ASSERT_EQ(is_proper(m).proper, Tri::Yes);
    for (const auto& sq : random_dvm_squares(m, 60, 7, 2, 4)) EXPECT_EQ(dvm_lift_check(m, sq), LiftResult::UniqueLift);
  }
}

TEST(Heights, Monotone) {
  Fan o = corpus::orthant(2);
  SchemeMorphism pi = subdivision_map(star_subdivision(o, corpus::ones(2)), o);
  EXPECT_TRUE(check_height_monotone(pi));
  EXPECT_TRUE(check_height_monotone(identity_morphism(pi.source)));
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    Fan base = corpus::random_complete_fan2(rng);
    Fan fine = resolve(base).fan;
    EXPECT_TRUE(check_height_monotone(subdivision_map(fine, base)));
  }
}

TEST(Morphism, RestrictionToOpens) {
  Fan o = corpus::orthant(2);
  SchemeMorphism pi = subdivision_map(star_subdivision(o, corpus::ones(2)), o);
  // over the complement of the origin the blow-down is an isomorphism
  std::vector<std::size_t> xs, ys;
  for (std::size_t q = 0; q < pi.target->size(); ++q)
    if (pi.target->height(q) < 2) xs.push_back(q);
  for (std::size_t q = 0; q < pi.source->size(); ++q)
    if (std::find(xs.begin(), xs.end(), pi.point_map[q]) != xs.end()) ys.push_back(q);
  EXPECT_TRUE(is_isomorphism(restrict_morphism(pi, ys, xs)));
}
