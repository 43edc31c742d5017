#pragma once

// Monoid schemes of finite type, stored as a finite poset of points with a
// stalk at every point and lattice maps realizing each A(y), y <= x, as a
// localization of A(x). Maximal points are the affine charts.

#include "msch/monoid.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace msch {

class MonoidScheme {
 public:
  MonoidScheme() = default;
  /// le[y][x] means y <= x. restrictions[{x, y}] maps the lattice of A(x) to
  /// that of A(y); absent entries are identities.
  MonoidScheme(std::vector<AffineMonoid> stalks, std::vector<std::vector<bool>> le,
               std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions = {},
               std::vector<std::string> labels = {});

  std::size_t size() const { return stalks_.size(); }
  const AffineMonoid& stalk(std::size_t x) const { return stalks_.at(x); }
  const std::string& label(std::size_t x) const { return labels_.at(x); }
  bool le(std::size_t y, std::size_t x) const { return le_[y][x]; }
  bool lt(std::size_t y, std::size_t x) const { return y != x && le_[y][x]; }

  /// Lattice map A(x) -> A(y) for y <= x, or nullptr for the identity.
  const IntMatrix* restriction(std::size_t x, std::size_t y) const;
  IntMatrix restriction_matrix(std::size_t x, std::size_t y) const;
  LatticeVector restrict(std::size_t x, std::size_t y, const LatticeVector& v) const;
  const std::map<std::pair<std::size_t, std::size_t>, IntMatrix>& restrictions() const { return restrictions_; }

  std::vector<std::size_t> maximal_points() const;
  std::vector<std::size_t> minimal_points() const;
  std::vector<std::size_t> down_set(std::size_t x) const;
  std::vector<std::size_t> up_set(std::size_t x) const;
  /// Longest chain strictly below x.
  std::size_t height(std::size_t x) const { return heights_.at(x); }
  std::size_t dimension() const;

  /// Index in stalk(x).mspec() of the prime corresponding to y <= x.
  std::size_t chart_prime(std::size_t x, std::size_t y) const;

  /// Every stalk lives in one lattice Z^n and all restrictions are identities.
  bool is_embedded() const;
  /// Ambient rank of the stalks (they all share one when embedded).
  std::size_t ambient_rank() const;
  bool is_cancellative() const;
  bool is_reduced() const;

  /// Checks that each down-set W(x) with its stalks is mspec(A(x)). Throws BadGluing.
  void validate() const;

 private:
  std::vector<AffineMonoid> stalks_;
  std::vector<std::vector<bool>> le_;
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> heights_;
};

MonoidScheme from_affine(const AffineMonoid& a);

/// Identifies D(invert_a) in chart_a with D(invert_b) in chart_b through a
/// unimodular lattice isomorphism Z^n_a -> Z^n_b.
struct Identification {
  std::size_t chart_a = 0;
  std::vector<std::size_t> invert_a;
  std::size_t chart_b = 0;
  std::vector<std::size_t> invert_b;
  IntMatrix iso;
};

MonoidScheme glue(const std::vector<AffineMonoid>& charts, const std::vector<Identification>& identifications);

/// Charts in a common lattice, glued wherever two localizations are equal as
/// monoids and carry equal keys (keys[i][p] for prime p of chart i, optional).
/// point_of, when given, receives the glued point of each chart prime.
MonoidScheme glue_embedded(const std::vector<AffineMonoid>& charts,
                           const std::vector<std::vector<std::string>>& keys = {},
                           std::vector<std::vector<std::size_t>>* point_of = nullptr);

/// The subscheme on a down-closed (open) or clopen set of points.
MonoidScheme restrict_to(const MonoidScheme& x, const std::vector<std::size_t>& points);

struct SeparatedResult {
  bool separated = true;
  std::optional<std::pair<std::size_t, std::size_t>> violating;
  std::string reason;
};
SeparatedResult is_separated(const MonoidScheme& x);

std::vector<MonoidScheme> components(const MonoidScheme& x);

/// Stalk test: unit basis plus minimal non-units form a basis of the group.
bool is_smooth_monoid(const AffineMonoid& a);
std::vector<bool> smooth_points(const MonoidScheme& x);
bool is_smooth(const MonoidScheme& x);

/// Ideal of a chart; `unit` marks the whole monoid (the chart misses the subscheme).
struct ChartIdeal {
  bool unit = false;
  MonoidIdeal ideal;
};

/// Quasi-coherent ideal sheaf, given on every maximal point.
struct IdealSheaf {
  std::map<std::size_t, ChartIdeal> charts;
};

/// The ideal J_x localized at y <= x, as an ideal of A(y).
ChartIdeal localize_ideal(const MonoidScheme& x, const ChartIdeal& j, std::size_t chart, std::size_t y);
/// Throws BadIdealSheaf if two charts disagree on an overlap.
void validate_ideal_sheaf(const MonoidScheme& x, const IdealSheaf& j);
/// Points y with J ⊆ p_y.
std::vector<std::size_t> vanishing_locus(const MonoidScheme& x, const IdealSheaf& j);

/// The closed subscheme cut out by j together with the embedding of its points.
struct Subscheme {
  MonoidScheme scheme;
  std::vector<std::size_t> points;  // point i of scheme is points[i] of the ambient scheme
};
Subscheme closed_subscheme_points(const MonoidScheme& x, const IdealSheaf& j);

struct Closure {
  Subscheme subscheme;
  IdealSheaf ideal;
};
Closure equivariant_closure(const MonoidScheme& x, const std::vector<std::size_t>& z);

/// Ideal sheaf from generators keyed by maximal point; a generator that is a
/// unit makes the chart ideal the unit ideal. Validated.
IdealSheaf ideal_sheaf_from_generators(const MonoidScheme& x, const std::map<std::size_t, std::vector<LatticeVector>>& gens);

/// Bijection of points under which stalks correspond via the lattice map `lattice`
/// (identity when omitted); only for schemes whose restrictions are identities.
std::optional<std::vector<std::size_t>> find_isomorphism(const MonoidScheme& x, const MonoidScheme& y,
                                                         const std::optional<IntMatrix>& lattice = std::nullopt);

MonoidScheme product(const MonoidScheme& x, const MonoidScheme& y);

}  // namespace msch
