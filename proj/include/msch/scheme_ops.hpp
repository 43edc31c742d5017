#pragma once

// Constructions that produce morphisms: closed and open subschemes,
// scheme-theoretic images and the supported fiber products.

#include "msch/morphism.hpp"

namespace msch {

struct Immersion {
  std::shared_ptr<const MonoidScheme> scheme;
  SchemeMorphism morphism;
};

Immersion closed_subscheme(std::shared_ptr<const MonoidScheme> x, const IdealSheaf& j);
/// `points` must be down-closed. Throws Precondition.
Immersion open_subscheme(std::shared_ptr<const MonoidScheme> x, const std::vector<std::size_t>& points);

/// The ideal sheaf of an equivariant closed immersion. Throws Precondition otherwise.
IdealSheaf ideal_of_immersion(const SchemeMorphism& f);

/// f^{-1}(J) on the maximal points of the source.
IdealSheaf pullback_ideal(const SchemeMorphism& f, const IdealSheaf& j);

struct SchemeImage {
  std::shared_ptr<const MonoidScheme> scheme;
  SchemeMorphism immersion;  // Z -> X
  SchemeMorphism factor;     // Y -> Z, with immersion ∘ factor = f
};
/// Chartwise image of A_X(x) in the sections of Y over the preimage. Requires
/// embedded, cancellative source and target, and irreducible preimages.
SchemeImage scheme_theoretic_image(const SchemeMorphism& f);

/// Y ×_X Z when one leg is an open immersion or an equivariant closed
/// immersion; the result lives over Z (or Y when only f qualifies).
/// Throws UnsupportedPullback otherwise.
MonoidScheme fiber_product(const SchemeMorphism& f, const SchemeMorphism& g);

}  // namespace msch
