#pragma once

// Morphisms of monoid schemes and the predicate suite (immersions, finiteness,
// birationality, properness, valuative checks).

#include "msch/fan.hpp"
#include "msch/scheme.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace msch {

enum class MorphismKind { General, Identity, OpenImmersion, ClosedImmersion, Finite, Projective, Toric, Composite };
const char* to_string(MorphismKind k);

struct SchemeMorphism {
  std::shared_ptr<const MonoidScheme> source;
  std::shared_ptr<const MonoidScheme> target;
  std::vector<std::size_t> point_map;
  /// For each source point y: lattice of A_target(f(y)) -> lattice of A_source(y).
  std::vector<IntMatrix> stalk_maps;
  MorphismKind kind = MorphismKind::General;
  std::optional<FanMorphism> fan_map;
  std::vector<SchemeMorphism> parts;  // first applied first, for composites
};

/// Checks monotonicity, local stalk maps, compatibility with restrictions and
/// that the point map is the one induced by the stalk maps. Throws InvalidMorphism.
void validate(const SchemeMorphism& f);

SchemeMorphism make_morphism(std::shared_ptr<const MonoidScheme> source, std::shared_ptr<const MonoidScheme> target,
                             std::vector<std::size_t> point_map, std::vector<IntMatrix> stalk_maps,
                             MorphismKind kind = MorphismKind::General);

/// Morphism given by a single lattice map target lattice -> source lattice on
/// every stalk; points are sent where the map is local. Throws InvalidMorphism.
SchemeMorphism morphism_from_matrix(std::shared_ptr<const MonoidScheme> source,
                                    std::shared_ptr<const MonoidScheme> target, const IntMatrix& m,
                                    MorphismKind kind = MorphismKind::General);

SchemeMorphism identity_morphism(std::shared_ptr<const MonoidScheme> x);
/// g ∘ f
SchemeMorphism compose(const SchemeMorphism& g, const SchemeMorphism& f);
/// Restriction to a set of source points mapping into a set of target points,
/// each closed under going down.
SchemeMorphism restrict_morphism(const SchemeMorphism& f, const std::vector<std::size_t>& source_points,
                                 const std::vector<std::size_t>& target_points);

bool is_isomorphism(const SchemeMorphism& f);
bool is_open_immersion(const SchemeMorphism& f);
bool is_closed_immersion(const SchemeMorphism& f);
bool is_equivariant(const SchemeMorphism& f);
Tri is_finite(const SchemeMorphism& f);
bool is_birational(const SchemeMorphism& f);

struct ProperResult {
  Tri proper = Tri::Unknown;
  std::string certificate;
};
ProperResult is_proper(const SchemeMorphism& f);

/// A square MSpec(V) <- MSpec(Frac V) -> Y over X for V = Z^u ⊕ N t: the
/// generic point of Frac V goes to `generic` with stalk map `alpha`
/// (lattice of A_Y(generic) -> Z^{u+1}, last coordinate is the valuation) and
/// the closed point of MSpec(V) goes to `closed` in X.
struct DvmSquare {
  std::size_t unit_rank = 0;
  std::size_t generic = 0;
  IntMatrix alpha;
  std::size_t closed = 0;
};
enum class LiftResult { UniqueLift, NoLift, MultipleLifts };
const char* to_string(LiftResult r);

/// Throws WitnessInvalid when the square does not commute or is not local.
LiftResult dvm_lift_check(const SchemeMorphism& f, const DvmSquare& square);
/// Seeded random squares with unit rank <= max_unit_rank and coefficients in [-bound, bound].
std::vector<DvmSquare> random_dvm_squares(const SchemeMorphism& f, std::size_t count, std::uint64_t seed,
                                          std::size_t max_unit_rank = 2, int bound = 4);

bool check_height_monotone(const SchemeMorphism& f);

}  // namespace msch
