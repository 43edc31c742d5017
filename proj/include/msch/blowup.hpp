#pragma once

// Graded monoids, MProj, projective space, Rees monoids and blow-ups.

#include "msch/scheme_ops.hpp"

namespace msch {

/// `degree` is a functional, non-negative on the generators.
struct GradedAffineMonoid {
  AffineMonoid base;
  LatticeVector degree;
};
/// Throws Precondition if some generator has negative degree.
GradedAffineMonoid make_graded(AffineMonoid base, LatticeVector degree);

/// A[It] in rank n+1, graded by the last coordinate.
GradedAffineMonoid rees_monoid(const AffineMonoid& a, const MonoidIdeal& center);

/// Degree-0 part of the localization of A at a face containing a generator of
/// positive degree (face given as generator indices).
AffineMonoid degree_zero_localization(const GradedAffineMonoid& a, const std::vector<std::size_t>& face);

struct ProjResult {
  std::shared_ptr<const MonoidScheme> scheme;
  SchemeMorphism structure;  // to MSpec(A_0)
};
/// Points are the relevant primes of A (cancellative only). Throws EmptyProj,
/// NotCancellative.
ProjResult mproj(const GradedAffineMonoid& a);

/// P^n_X with its projection; the lattice of X comes first in every stalk.
ProjResult projective_space(std::shared_ptr<const MonoidScheme> x, std::size_t n);

struct BlowupResult {
  std::shared_ptr<const MonoidScheme> scheme;
  SchemeMorphism pi;
  IdealSheaf exceptional_ideal;
  Immersion exceptional;
};
/// Requires an embedded, cancellative X. Throws NotCancellative, Precondition.
BlowupResult blow_up(std::shared_ptr<const MonoidScheme> x, const IdealSheaf& center);

/// The extended ideal is principal on the chart at each maximal point of Y.
std::vector<bool> inverted_charts(const SchemeMorphism& pi, const IdealSheaf& center);
bool verify_inverts(const SchemeMorphism& pi, const IdealSheaf& center);

struct PullbackBlowup {
  BlowupResult source;  // X' blown up along f^{-1}(Z)
  BlowupResult target;  // X blown up along Z
  SchemeMorphism map;
};
PullbackBlowup finite_pullback_blowup(const SchemeMorphism& f, const IdealSheaf& center);

}  // namespace msch
