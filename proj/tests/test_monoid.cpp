#include "corpus.hpp"
#include "oracles.hpp"

#include "msch/error.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace msch;

namespace {

std::set<std::vector<std::size_t>> faces_of(const AffineMonoid& a) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& p : a.mspec()) out.insert(p.face);
  return out;
}

std::vector<oracle::Vec> gens_of(const AffineMonoid& a) {
  std::vector<oracle::Vec> out;
  for (const auto& g : a.generators()) out.push_back(corpus::ll(g));
  return out;
}

}  // namespace

TEST(Membership, Examples) {
  AffineMonoid cusp = corpus::cusp();
  EXPECT_EQ(cusp.member({1}), Membership::Outside);
  EXPECT_EQ(cusp.member({5}), Membership::InMonoid);
  AffineMonoid axes(2, {{1, 0}, {0, 1}}, {{1, 1}});
  EXPECT_EQ(axes.member({2, 3}), Membership::InIdeal);
}

TEST(Membership, DecompositionReproducesTheVector) {
  AffineMonoid a(2, {{1, 0}, {-1, 0}, {2, 3}, {0, 1}});
  for (long long x = -4; x <= 4; ++x)
    for (long long y = 0; y <= 4; ++y) {
      auto m = a.decompose({x, y});
      ASSERT_TRUE(m.has_value());
      LatticeVector sum(2);
      for (std::size_t i = 0; i < m->size(); ++i) {
        EXPECT_GE((*m)[i], 0);
        sum += (*m)[i] * a.generators()[i];
      }
      EXPECT_EQ(sum, (LatticeVector{x, y}));
    }
}

TEST(Membership, BudgetIsEnforced) {
  AffineMonoid a(1, {{97}, {101}});
  set_search_budget(5);
  EXPECT_THROW(a.in_semigroup({97 * 101 + 1}), Error);
  set_search_budget(1000000);
  EXPECT_TRUE(a.in_semigroup({97 * 3 + 101 * 2}));
}

TEST(Units, Examples) {
  EXPECT_EQ(AffineMonoid(1, {{1}, {-1}}).units().size(), 1u);
  EXPECT_TRUE(AffineMonoid::free(2).units().empty());
  AffineMonoid a(2, {{1, 0}, {-1, 0}, {0, 1}});
  ASSERT_EQ(a.units().size(), 1u);
  EXPECT_TRUE(a.is_unit({1, 0}));
  EXPECT_TRUE(a.is_unit({-1, 0}));
  EXPECT_FALSE(a.is_unit({0, 1}));
}

TEST(Units, PositiveRelationWithoutOppositePairs) {
  // units (1,0), (-1,1), (0,-1) span a line-free plane only through all three
  AffineMonoid a(2, {{1, 0}, {-1, 1}, {0, -1}});
  EXPECT_EQ(a.units().size(), 2u);
  EXPECT_TRUE(a.in_semigroup({-5, 3}));
  auto m = a.decompose({-5, 3});
  ASSERT_TRUE(m);
  for (const auto& x : *m) EXPECT_GE(x, 0);
}

TEST(Spectrum, Examples) {
  EXPECT_EQ(AffineMonoid::free(2).mspec().size(), 4u);
  EXPECT_EQ(corpus::cusp().mspec().size(), 2u);
  EXPECT_EQ(AffineMonoid(2, {{1, 0}, {0, 1}}, {{1, 0}}).mspec().size(), 2u);
  EXPECT_EQ(AffineMonoid(2, {{1, 0}, {0, 1}}, {{1, 1}}).mspec().size(), 3u);
  EXPECT_EQ(AffineMonoid(1, {{1}}, {{1}}).mspec().size(), 1u);
}

TEST(Spectrum, MatchesFaceOracle) {
  // the smallest relation among three generators with entries <= 3 has degree <= 27
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> c(0, 3);
  for (int t = 0; t < 15; ++t) {
    std::vector<LatticeVector> g;
    while (g.size() < 3) {
      LatticeVector v{c(rng), c(rng)};
      if (!v.is_zero() && std::find(g.begin(), g.end(), v) == g.end()) g.push_back(v);
    }
    AffineMonoid a(2, g);
    EXPECT_EQ(faces_of(a), oracle::faces(gens_of(a), 2, 30)) << g[0] << g[1] << g[2];
  }
}

TEST(Spectrum, HeightsAreChainLengths) {
  AffineMonoid f3 = AffineMonoid::free(3);
  for (const auto& p : f3.mspec()) EXPECT_EQ(p.height, 3 - p.face.size());
}

TEST(Localize, Examples) {
  AffineMonoid f2 = AffineMonoid::free(2);
  AffineMonoid at_t1 = f2.invert({1});
  EXPECT_TRUE(at_t1 == AffineMonoid(2, {{1, 0}, {0, 1}, {0, -1}}));
  AffineMonoid generic = corpus::cusp().invert({0, 1});
  EXPECT_TRUE(generic == AffineMonoid(1, {{1}, {-1}}));
  EXPECT_TRUE(f2.localize(f2.maximal_prime()) == f2);
}

TEST(Smash, Examples) {
  AffineMonoid f1 = AffineMonoid::free(1);
  EXPECT_TRUE(smash(f1, f1) == AffineMonoid::free(2));
  EXPECT_EQ(smash(f1, f1).mspec().size(), 4u);
  EXPECT_EQ(smash(corpus::cusp(), f1).mspec().size(), 4u);
}

TEST(Quotient, Examples) {
  AffineMonoid f2 = AffineMonoid::free(2);
  EXPECT_EQ(quotient_by_ideal(f2, make_ideal(f2, {{1, 1}})).mspec().size(), 3u);
  EXPECT_TRUE(quotient_by_ideal(f2, MonoidIdeal{}) == f2);
  AffineMonoid f1 = AffineMonoid::free(1);
  EXPECT_EQ(quotient_by_ideal(f1, make_ideal(f1, {{1}})).mspec().size(), 1u);
}

TEST(Pushout, Examples) {
  AffineMonoid f1 = AffineMonoid::free(1), f2 = AffineMonoid::free(2);
  MonoidMap f = make_map(f1, f2, IntMatrix{{1}, {0}});
  AffineMonoid p = pushout_closed(f, make_ideal(f1, {{1}}));
  EXPECT_TRUE(p == AffineMonoid(2, {{1, 0}, {0, 1}}, {{1, 0}}));
  EXPECT_TRUE(pushout_closed(f, MonoidIdeal{}) == f2);
  // prime pairs with a common inverse image, F_1 -> F_2 against F_1 -> F_1/(t)
  std::size_t pairs = 0;
  for (const auto& q : f2.mspec()) {
    PrimeIdeal back = pullback_prime(f, q);
    if (!back.face.empty()) continue;  // must contain t, the image of J
    ++pairs;
  }
  EXPECT_EQ(p.mspec().size(), pairs);
}

TEST(Normalization, Examples) {
  EXPECT_TRUE(normalization(corpus::cusp()).monoid == AffineMonoid(1, {{1}}));
  AffineMonoid q(2, {{1, 0}, {1, 1}, {1, 2}});
  EXPECT_TRUE(normalization(q).monoid == q);
  EXPECT_TRUE(is_normal(q));
  EXPECT_FALSE(is_normal(corpus::cusp()));
  EXPECT_TRUE(normalization(AffineMonoid::free(3)).monoid == AffineMonoid::free(3));
}

TEST(Nilradical, Examples) {
  AffineMonoid a(1, {{1}}, {{2}});
  auto nil = nilradical(a);
  EXPECT_EQ(nil.generators, std::vector<LatticeVector>{{1}});
  EXPECT_FALSE(is_reduced(a));
  EXPECT_TRUE(nilradical(AffineMonoid::free(2)).generators.empty());
  AffineMonoid axes(2, {{1, 0}, {0, 1}}, {{1, 1}});
  EXPECT_EQ(nilradical(axes).generators, (std::vector<LatticeVector>{{1, 1}}));
  EXPECT_TRUE(is_reduced(axes));
}

TEST(Finite, Examples) {
  AffineMonoid line(1, {{1}});
  MonoidMap nor = make_map(corpus::cusp(), line, IntMatrix{{1}});
  EXPECT_TRUE(is_integral(nor));
  EXPECT_EQ(is_finite(nor), Tri::Yes);
  EXPECT_EQ(is_finite(identity_map(line)), Tri::Yes);
  MonoidMap axis = make_map(AffineMonoid::free(1), AffineMonoid::free(2), IntMatrix{{1}, {0}});
  EXPECT_FALSE(is_integral(axis));
  EXPECT_EQ(is_finite(axis), Tri::No);
}

TEST(Maps, RejectNonMembers) {
  EXPECT_THROW(make_map(AffineMonoid::free(1), corpus::cusp(), IntMatrix{{1}}), Error);
}
