#pragma once

// The correspondence between fans and toric monoid schemes.

#include "msch/fan.hpp"
#include "msch/morphism.hpp"
#include "msch/scheme.hpp"

namespace msch {

/// Points are the cones of f (same indices), stalk at σ is σ∨ ∩ M.
MonoidScheme scheme_from_fan(const Fan& f);

/// Throws NotToric naming the failed property.
Fan fan_from_scheme(const MonoidScheme& x);

/// Between scheme_from_fan(source) and scheme_from_fan(target).
SchemeMorphism morphism_from_fan_map(const FanMorphism& phi);
/// Throws NotGenericPreserving, or NotToric if either side is not toric.
FanMorphism fan_map_from_morphism(const SchemeMorphism& f);

}  // namespace msch
