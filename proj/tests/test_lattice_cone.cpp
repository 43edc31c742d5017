#include "corpus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace msch;

namespace {

void expect_smith(const IntMatrix& m, std::vector<Int> diag) {
  SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.diagonal, diag);
  IntMatrix d = s.left * m * s.right;
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      EXPECT_EQ(d(r, c), (r == c && r < diag.size()) ? diag[r] : Int(0));
  EXPECT_EQ(abs(determinant(s.left)), 1);
  EXPECT_EQ(abs(determinant(s.right)), 1);
}

std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Smith, Examples) {
  expect_smith(IntMatrix{{2, 0}, {0, 3}}, {1, 6});
  expect_smith(IntMatrix::identity(3), {1, 1, 1});
  expect_smith(IntMatrix{{2, 4}, {6, 8}}, {2, 4});
}

TEST(Smith, RandomDivisibilityChain) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> c(-9, 9);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t k = 0; k < 4; ++k) m(r, k) = c(rng);
    SmithForm s = smith_normal_form(m);
    for (std::size_t i = 1; i < s.diagonal.size(); ++i) EXPECT_EQ(s.diagonal[i] % s.diagonal[i - 1], 0);
    IntMatrix d = s.left * m * s.right;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t k = 0; k < 4; ++k)
        if (r != k) EXPECT_EQ(d(r, k), 0);
  }
}

TEST(Cone, DualExamples) {
  EXPECT_EQ(dual_cone(RationalCone::orthant(2)), RationalCone::orthant(2));
  EXPECT_EQ(sorted(dual_cone(RationalCone(2, {{0, 1}, {1, -2}})).extreme_rays()), sorted({{1, 0}, {2, 1}}));
  RationalCone all = dual_cone(RationalCone(2));
  EXPECT_EQ(all.dim(), 2u);
  EXPECT_EQ(all.lineality().size(), 2u);
}

TEST(Cone, DualIsInvolutionOnBoxes) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> c(-3, 3);
  for (int t = 0; t < 20; ++t) {
    std::vector<LatticeVector> gens;
    for (int k = 0; k < 3; ++k) gens.push_back({c(rng), c(rng)});
    RationalCone a(2, gens);
    RationalCone back = dual_cone(dual_cone(a));
    for (long long x = -5; x <= 5; ++x)
      for (long long y = -5; y <= 5; ++y) EXPECT_EQ(a.contains(LatticeVector{x, y}), back.contains(LatticeVector{x, y}));
  }
}

TEST(Cone, StrongConvexity) {
  EXPECT_TRUE(RationalCone(2, {{1, 0}, {0, 1}}).is_pointed());
  EXPECT_FALSE(RationalCone(2, {{1, 0}, {-1, 0}, {0, 1}}).is_pointed());
}

TEST(Cone, FaceCounts) {
  EXPECT_EQ(RationalCone::orthant(2).faces().size(), 4u);
  EXPECT_EQ(RationalCone::orthant(3).faces().size(), 8u);
  EXPECT_EQ(RationalCone(2, {{1, 1}}).faces().size(), 2u);
}

TEST(Hilbert, Examples) {
  EXPECT_EQ(sorted(hilbert_basis(RationalCone(2, {{1, 0}, {1, 2}}))), sorted({{1, 0}, {1, 1}, {1, 2}}));
  EXPECT_EQ(sorted(hilbert_basis(RationalCone::orthant(2))), sorted({{1, 0}, {0, 1}}));
  EXPECT_EQ(hilbert_basis(RationalCone(1, {{1}})), std::vector<LatticeVector>{{1}});
}

TEST(Hilbert, MatchesBoxOracle) {
  for (std::size_t dim : {2, 3})
    for (const auto& rays : corpus::random_cones(dim, 15, 40 + dim, false)) {
      std::vector<LatticeVector> v;
      for (const auto& r : rays) v.push_back(corpus::lv(r));
      std::set<oracle::Vec> got;
      for (const auto& h : hilbert_basis(RationalCone(dim, v))) got.insert(corpus::ll(h));
      EXPECT_EQ(got, oracle::hilbert_basis_box(rays));
    }
}

TEST(Hilbert, GeneratesEveryBoxPoint) {
  // every lattice point of the cone in a box is a sum of basis elements
  RationalCone c(2, {{1, 0}, {2, 5}});
  AffineMonoid a(2, hilbert_basis(c));
  for (long long x = 0; x <= 6; ++x)
    for (long long y = 0; y <= 6; ++y) {
      LatticeVector v{x, y};
      EXPECT_EQ(c.contains(v), a.in_semigroup(v)) << v;
    }
}

TEST(Subdivision, Examples) {
  RationalCone orth = RationalCone::orthant(2);
  RationalCone a(2, {{1, 0}, {1, 1}}), b(2, {{0, 1}, {1, 1}});
  EXPECT_TRUE(is_subdivision({a, b}, orth));
  EXPECT_TRUE(is_subdivision({orth}, orth));
  EXPECT_FALSE(is_subdivision({a}, orth));
}
