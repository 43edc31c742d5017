#pragma once

// k-realizations as data: presentations of monoid algebras k[A] and a gluing
// manifest for schemes.

#include "msch/scheme.hpp"

namespace msch {

struct Binomial {
  std::vector<Int> lhs, rhs;  // exponent vectors over the generators
};

struct AlgebraPresentation {
  std::size_t variables = 0;  // one per generator of A, in order
  std::vector<LatticeVector> generators;
  std::vector<Binomial> binomials;
  std::vector<std::vector<Int>> monomials;  // each = 0
  std::size_t degree_bound = 0;  // binomials generate the congruence up to this total degree
  bool is_domain = false;
  bool is_reduced = false;
  bool is_normal_claimed = false;
};

/// Throws BoundTooSmall when the generators are dependent but no relation of
/// total degree <= bound exists.
AlgebraPresentation present_algebra(const AffineMonoid& a, std::size_t degree_bound = 4);

struct ManifestPoint {
  std::string label;
  std::size_t height = 0;
  bool chart = false;
  AlgebraPresentation algebra;
};

/// Two charts glued along their overlap point: each chart variable's image in
/// the overlap algebra, as an exponent vector.
struct ManifestGluing {
  std::size_t chart_a = 0, chart_b = 0, overlap = 0;
  std::vector<std::vector<Int>> map_a, map_b;
};

struct Manifest {
  std::vector<ManifestPoint> points;
  std::vector<ManifestGluing> gluings;
  std::string note;
};

/// Throws NotSeparated.
Manifest realize_scheme_manifest(const MonoidScheme& x, std::size_t degree_bound = 4, std::string note = {});

}  // namespace msch
