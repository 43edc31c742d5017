#pragma once

// Fans of strongly convex rational cones, fan maps, subdivisions and toric
// resolution.

#include "msch/cone.hpp"

#include <optional>
#include <vector>

namespace msch {

class Fan {
 public:
  Fan() = default;
  /// Rays are made primitive; cones are ray-index sets and get completed by
  /// all their faces and the zero cone. Throws InvalidFan.
  Fan(std::size_t rank, std::vector<LatticeVector> rays, const std::vector<std::vector<std::size_t>>& cones);
  /// Skips the pairwise overlap check; for results of operations that keep a fan a fan.
  static Fan unchecked(std::size_t rank, std::vector<LatticeVector> rays,
                       const std::vector<std::vector<std::size_t>>& cones);

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  /// Every cone as a sorted ray-index set, the zero cone first, then by dimension.
  const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
  const RationalCone& cone(std::size_t i) const { return cone_objects_.at(i); }
  std::size_t dim(std::size_t i) const { return cone_objects_.at(i).dim(); }
  std::vector<std::size_t> maximal_cones() const;
  std::optional<std::size_t> index_of(const std::vector<std::size_t>& ray_set) const;
  std::optional<std::size_t> ray_index(const LatticeVector& v) const;
  /// rays of cone i as vectors
  std::vector<LatticeVector> cone_rays(std::size_t i) const;
  /// cone a is a face of cone b
  bool is_face(std::size_t a, std::size_t b) const;

  bool is_simplicial() const;
  bool is_smooth_cone(std::size_t i) const;
  bool is_smooth() const;
  /// Smallest cone containing v, if v is in the support.
  std::optional<std::size_t> smallest_cone_containing(const LatticeVector& v) const;
  /// Smallest cone containing a whole cone, if any cone does.
  std::optional<std::size_t> smallest_cone_containing(const RationalCone& c) const;

 private:
  void init(std::size_t rank, std::vector<LatticeVector> rays, const std::vector<std::vector<std::size_t>>& cones,
            bool check_overlaps);

  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::vector<RationalCone> cone_objects_;
};

/// Same cones as sets of ray vectors.
bool operator==(const Fan& a, const Fan& b);
/// A unimodular L with L(a) = b, if one exists.
std::optional<IntMatrix> fan_isomorphism(const Fan& a, const Fan& b);

/// Lattice map phi: Z^{source.rank} -> Z^{target.rank} with every source cone
/// mapped into a target cone.
struct FanMorphism {
  Fan source;
  Fan target;
  IntMatrix phi;
};
FanMorphism make_fan_morphism(const Fan& source, const Fan& target, IntMatrix phi);

Fan star_subdivision(const Fan& f, const LatticeVector& v);
Fan barycentric_subdivision(const Fan& f);
Fan iterated_barycentric(const Fan& f, std::size_t i);

/// Every fine cone lies in a coarse cone and every coarse cone is the union of
/// the fine cones inside it.
bool is_fan_subdivision(const Fan& fine, const Fan& coarse);

struct Resolution {
  Fan fan;
  std::vector<LatticeVector> inserted;  // rays, in order of insertion
};
Resolution resolve(const Fan& f, std::size_t max_steps = 1000);

/// One star subdivision of `before` at the ray sum of the smooth cone `center`.
struct TowerStep {
  Fan before;
  std::vector<std::size_t> center;  // ray indices in `before`
  LatticeVector ray;
};
struct Factorization {
  std::size_t level = 0;
  Fan fan;  // the iterated barycentric subdivision at `level`
  std::vector<TowerStep> tower;
};
Factorization factor_through(const Fan& base, const Fan& target, std::size_t budget = 6);

bool is_proper_fan_map(const FanMorphism& f);
bool is_birational_fan_map(const FanMorphism& f);

}  // namespace msch
