#pragma once

// Cartesian squares D -> Y, D -> C, p: Y -> X, e: C -> X; their
// classification, reduced refinements, density witnesses and generation.

#include "msch/blowup.hpp"

namespace msch {

struct CartesianSquare {
  std::shared_ptr<const MonoidScheme> d, y, c, x;
  SchemeMorphism d_to_y;
  SchemeMorphism d_to_c;
  SchemeMorphism p;  // Y -> X
  SchemeMorphism e;  // C -> X
};

/// The square with D = C ×_X Y computed from e and p. e must be an open or an
/// equivariant closed immersion; otherwise throws UnsupportedPullback.
CartesianSquare make_square(const SchemeMorphism& e, const SchemeMorphism& p);

enum class SquareClass { SmoothBlowup, FiniteAbstractBlowup, AbstractBlowup, Zariski, Unclassified };
const char* to_string(SquareClass c);

struct Classification {
  SquareClass cls = SquareClass::Unclassified;
  std::string certificate;
};
/// Throws NotCartesian if D is not the fiber product.
Classification classify(const CartesianSquare& sq);

/// Closed subscheme that is reduced, cut out by a prime on each chart and
/// smooth there.
bool is_smooth_closed(const MonoidScheme& c);

/// Replaces Y by the scheme-theoretic image of Y \ D.
CartesianSquare reduced_refinement(const CartesianSquare& sq);

struct DensityWitness {
  std::shared_ptr<const MonoidScheme> x;
  std::size_t index = 0;
  std::vector<std::size_t> open;  // down-closed
};
/// Open and every point outside has height >= index.
bool is_valid(const DensityWitness& w);

struct ReducingData {
  DensityWitness x_prime;
  std::optional<CartesianSquare> square;  // over X', absent when X' is empty
  Classification cls;
  bool verified = false;  // X' is dense of index i and the square over it is an abstract blow-up
};
/// Throws WitnessInvalid.
ReducingData reducing_data(const CartesianSquare& sq, const DensityWitness& c0, const DensityWitness& y0,
                           const DensityWitness& d0);

struct GeneratedSquare {
  std::string origin;
  CartesianSquare square;
  Classification cls;
};
std::vector<GeneratedSquare> generate_squares(std::shared_ptr<const MonoidScheme> x);

}  // namespace msch
