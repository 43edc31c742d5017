#pragma once

// Pointed, cancellative-modulo-ideal, torsionfree monoids of finite type,
// presented as a semigroup <G> in Z^n with a monomial ideal collapsed to the
// basepoint.

#include "msch/cone.hpp"
#include "msch/lattice.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace msch {

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

/// Node budget for semigroup membership searches (default 10^6).
std::size_t search_budget();
void set_search_budget(std::size_t nodes);

enum class Membership { InMonoid, InIdeal, Outside };

struct MonoidElement {
  bool basepoint = false;
  LatticeVector value;  // meaningful only when !basepoint
};

/// A prime ideal, recorded by the face of cone(G) it avoids.
struct PrimeIdeal {
  std::vector<std::size_t> face;  // generator indices on the face
  LatticeVector functional;       // >= 0 on the cone, zero exactly on the face
  std::size_t face_dim = 0;
  std::size_t height = 0;
};

/// p ⊆ q.
bool prime_le(const PrimeIdeal& p, const PrimeIdeal& q);

class AffineMonoid;

/// Ideal of a monoid, stored by minimal non-basepoint generators.
struct MonoidIdeal {
  std::vector<LatticeVector> generators;
};

class AffineMonoid {
 public:
  AffineMonoid(std::size_t rank, std::vector<LatticeVector> generators, std::vector<LatticeVector> ideal = {});

  /// The free monoid F_n on the standard basis.
  static AffineMonoid free(std::size_t n);

  std::size_t rank() const;
  const std::vector<LatticeVector>& generators() const;
  const std::vector<LatticeVector>& ideal_generators() const;
  const RationalCone& cone() const;
  const Sublattice& group() const;
  /// Basis of the unit group U(A).
  const std::vector<LatticeVector>& units() const;
  const Sublattice& unit_lattice() const;
  /// Indices of generators that are units.
  const std::vector<std::size_t>& unit_generators() const;

  bool is_cancellative() const { return ideal_generators().empty(); }

  /// Non-negative multiplicities m with sum m_i g_i = v, if v ∈ <G>.
  std::optional<std::vector<Int>> decompose(const LatticeVector& v) const;
  bool in_semigroup(const LatticeVector& v) const;
  bool in_ideal(const LatticeVector& v) const;
  Membership member(const LatticeVector& v) const;
  MonoidElement element(const LatticeVector& v) const;
  bool is_unit(const LatticeVector& v) const;

  /// Primes, sorted by height then face; the cancellative minimal prime is the empty ideal.
  const std::vector<PrimeIdeal>& mspec() const;
  /// The maximal ideal (the prime of the smallest face).
  const PrimeIdeal& maximal_prime() const;
  bool in_prime(const PrimeIdeal& p, const LatticeVector& v) const;

  /// Localization inverting the listed generators.
  AffineMonoid invert(const std::vector<std::size_t>& generator_indices) const;
  AffineMonoid localize(const PrimeIdeal& p) const { return invert(p.face); }

  /// Unit basis followed by irreducible non-units, one per class modulo units.
  std::vector<LatticeVector> minimal_generators() const;
  std::vector<LatticeVector> minimal_nonunit_generators() const;

  std::size_t dimension() const;

  /// Same subset of Z^n and same ideal.
  friend bool operator==(const AffineMonoid& a, const AffineMonoid& b);

 private:
  struct Data;
  std::shared_ptr<const Data> d_;

  /// Branch and bound over non-unit generators; fills mult and returns the unit remainder.
  std::optional<LatticeVector> search(const LatticeVector& v, std::vector<Int>& mult) const;
};

/// Removes generators divisible by others and those already in the ideal of A.
MonoidIdeal make_ideal(const AffineMonoid& a, const std::vector<LatticeVector>& generators);
bool in_ideal(const AffineMonoid& a, const MonoidIdeal& j, const LatticeVector& v);
/// Intersection of prime ideals, as minimal generators in <G> (these may include
/// elements of the ideal of A). The empty list and the empty prime give no generators.
MonoidIdeal intersect_primes(const AffineMonoid& a, const std::vector<PrimeIdeal>& primes);

/// A lattice map carrying generators to members (or into the ideal).
struct MonoidMap {
  AffineMonoid source;
  AffineMonoid target;
  IntMatrix matrix;  // target.rank() x source.rank()

  MonoidElement apply(const LatticeVector& v) const;
};

/// Validates that generators and ideal generators land correctly. Throws InvalidMorphism.
MonoidMap make_map(const AffineMonoid& source, const AffineMonoid& target, IntMatrix matrix);
MonoidMap identity_map(const AffineMonoid& a);
bool is_isomorphism(const MonoidMap& f);
/// Prime of the source obtained by pulling back p.
PrimeIdeal pullback_prime(const MonoidMap& f, const PrimeIdeal& p);
/// Index in mspec() of the prime matching the given functional's face.
std::size_t prime_index(const AffineMonoid& a, const PrimeIdeal& p);

AffineMonoid smash(const AffineMonoid& a, const AffineMonoid& b);
AffineMonoid quotient_by_ideal(const AffineMonoid& a, const MonoidIdeal& j);
/// A1 ∧_A A/J = A1 / (f(J)).
AffineMonoid pushout_closed(const MonoidMap& f, const MonoidIdeal& j);
/// A1 ∧_A A[1/S] = A1[1/f(S)], S given by source generator indices.
AffineMonoid pushout_localization(const MonoidMap& f, const std::vector<std::size_t>& inverted);

struct Normalization {
  AffineMonoid monoid;
  MonoidMap embedding;
};
Normalization normalization(const AffineMonoid& a);
/// Saturated in its group (the cone's lattice points over group(A) all lie in A).
bool is_normal(const AffineMonoid& a);

/// Minimal generators in <G> of the radical of the ideal of A.
MonoidIdeal nilradical(const AffineMonoid& a);
AffineMonoid reduce(const AffineMonoid& a);
bool is_reduced(const AffineMonoid& a);

bool is_integral(const MonoidMap& f);
Tri is_finite(const MonoidMap& f);

}  // namespace msch
