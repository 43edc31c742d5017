#pragma once

// Rational polyhedral cones in Z^n with both descriptions (generators and
// facet normals), face lattices, Hilbert bases and exact covering tests.

#include "msch/lattice.hpp"

#include <memory>
#include <vector>

namespace msch {

/// A face of a cone, recorded by the facets that vanish on it and the
/// indices of the cone's generators lying on it.
struct Face {
  std::vector<std::size_t> tight_facets;
  std::vector<std::size_t> generators;
  std::size_t dim = 0;
};

class RationalCone {
 public:
  /// The cone of all non-negative combinations of `generators` in Q^rank.
  RationalCone(std::size_t rank, std::vector<LatticeVector> generators);
  /// The zero cone.
  explicit RationalCone(std::size_t rank) : RationalCone(rank, {}) {}

  /// { x : <f, x> >= 0 for f in inequalities, <e, x> = 0 for e in equations }.
  static RationalCone from_inequalities(std::size_t rank, const std::vector<LatticeVector>& inequalities,
                                        const std::vector<LatticeVector>& equations = {});
  static RationalCone whole_space(std::size_t rank);
  static RationalCone orthant(std::size_t rank);

  std::size_t rank() const;
  std::size_t dim() const;
  const std::vector<LatticeVector>& generators() const;
  /// Irredundant facet normals; for cones that are not full-dimensional each
  /// normal is determined modulo equations().
  const std::vector<LatticeVector>& facets() const;
  /// Integral equations cutting out the linear span.
  std::vector<LatticeVector> equations() const;
  /// Saturated integral basis of the lineality space.
  const std::vector<LatticeVector>& lineality() const;
  const SpanCoordinates& span() const;

  bool is_pointed() const { return lineality().empty(); }
  bool is_full_dimensional() const { return dim() == rank(); }

  bool contains(const LatticeVector& v) const;
  bool contains(const RationalCone& other) const;
  bool in_relative_interior(const LatticeVector& v) const;

  /// Sum of the facet normals: non-negative on the cone and zero exactly on the lineality space.
  LatticeVector positive_functional() const;

  /// Every face, the cone itself first. Cached.
  const std::vector<Face>& faces() const;
  /// Primitive generators of the one-dimensional faces (pointed cones), sorted.
  std::vector<LatticeVector> extreme_rays() const;
  /// The cone spanned by a face's generators.
  RationalCone face_cone(const Face& f) const;

  /// Same point set.
  friend bool operator==(const RationalCone& a, const RationalCone& b);

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

/// { m : <m, x> >= 0 for all x in c }.
RationalCone dual_cone(const RationalCone& c);
RationalCone intersect(const RationalCone& a, const RationalCone& b);

/// True iff `f` is a face of `c`.
bool is_face_of(const RationalCone& f, const RationalCone& c);

/// Pulling triangulation of a pointed cone: each simplex is a list of extreme rays.
std::vector<std::vector<LatticeVector>> triangulate(const RationalCone& c);

/// Generators of the monoid c ∩ sub: a basis of the unit group (to be used
/// with both signs) and the Hilbert basis of the pointed part.
struct ConeMonoidGenerators {
  std::vector<LatticeVector> units;
  std::vector<LatticeVector> hilbert;
};

ConeMonoidGenerators cone_lattice_generators(const RationalCone& c, const Sublattice& sub);

/// Minimal generating set of the monoid c ∩ sub, sorted. Throws NotPointed
/// when c has a nonzero lineality space.
std::vector<LatticeVector> hilbert_basis(const RationalCone& c, const Sublattice& sub);
std::vector<LatticeVector> hilbert_basis(const RationalCone& c);

/// Volume of the slice { <omega, x> = 1 } of a pointed cone, measured in the
/// lattice coordinates of `frame` (zero if the cone is lower dimensional).
Rat slice_volume(const RationalCone& c, const SpanCoordinates& frame, const LatticeVector& omega);

/// True iff the union of `pieces` equals `whole`. Pieces must lie in `whole`
/// and meet pairwise in sets of measure zero (as the cones of a fan do).
bool covers(const RationalCone& whole, const std::vector<RationalCone>& pieces);

/// Each fine cone lies in `coarse`, pairwise intersections are common faces,
/// and the union is all of `coarse`.
bool is_subdivision(const std::vector<RationalCone>& fine, const RationalCone& coarse);

}  // namespace msch
