#include "msch/toric.hpp"

#include "msch/error.hpp"

#include <algorithm>

namespace msch {

namespace {

std::string cone_label(const std::vector<std::size_t>& rays) {
  std::string s = "cone{";
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? "," : "") + std::to_string(rays[i]);
  return s + "}";
}

struct ToricData {
  Fan fan;
  Sublattice group;  // M inside the generic stalk's lattice
  std::size_t generic = 0;
};

ToricData toric_data(const MonoidScheme& x) {
  if (x.size() == 0) throw Error(ErrorCode::NotToric, "empty scheme");
  if (!x.is_cancellative()) throw Error(ErrorCode::NotToric, "not cancellative");
  auto gens = x.minimal_points();
  if (gens.size() != 1) throw Error(ErrorCode::NotToric, "not connected");
  const AffineMonoid& eta = x.stalk(gens[0]);
  if (eta.unit_generators().size() != eta.generators().size())
    throw Error(ErrorCode::NotToric, "generic stalk is not a group");
  SeparatedResult sep = is_separated(x);
  if (!sep.separated) throw Error(ErrorCode::NotToric, "not separated: " + sep.reason);
  for (std::size_t p = 0; p < x.size(); ++p)
    if (!is_normal(x.stalk(p))) throw Error(ErrorCode::NotToric, "not normal at " + x.label(p));

  ToricData out;
  out.generic = gens[0];
  out.group = eta.group();
  const std::size_t d = out.group.rank();
  std::vector<LatticeVector> rays;
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t m : x.maximal_points()) {
    std::vector<LatticeVector> coords;
    for (const auto& g : x.stalk(m).generators()) {
      auto c = out.group.coordinates(x.restrict(m, out.generic, g));
      if (!c) throw Error(ErrorCode::NotToric, "stalk at " + x.label(m) + " leaves the generic group");
      coords.emplace_back(*c);
    }
    RationalCone c(d, coords);
    if (c.dim() != d) throw Error(ErrorCode::NotToric, "stalk at " + x.label(m) + " has smaller group");
    std::vector<std::size_t> idx;
    for (const auto& r : dual_cone(c).extreme_rays()) {
      auto it = std::find(rays.begin(), rays.end(), r);
      if (it == rays.end()) {
        idx.push_back(rays.size());
        rays.push_back(r);
      } else {
        idx.push_back(static_cast<std::size_t>(it - rays.begin()));
      }
    }
    std::sort(idx.begin(), idx.end());
    cones.push_back(idx);
  }
  try {
    out.fan = Fan(d, rays, cones);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotToric, std::string("cones do not form a fan: ") + e.what());
  }
  return out;
}

}  // namespace

MonoidScheme scheme_from_fan(const Fan& f) {
  const std::size_t d = f.rank();
  const auto& cones = f.cones();
  std::vector<AffineMonoid> stalks;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    ConeMonoidGenerators g = cone_lattice_generators(dual_cone(f.cone(i)), Sublattice::full(d));
    std::vector<LatticeVector> gens;
    for (const auto& u : g.units) {
      gens.push_back(u);
      gens.push_back(-u);
    }
    gens.insert(gens.end(), g.hilbert.begin(), g.hilbert.end());
    stalks.emplace_back(d, gens);
    labels.push_back(cone_label(cones[i]));
  }
  std::vector<std::vector<bool>> le(cones.size(), std::vector<bool>(cones.size()));
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = 0; b < cones.size(); ++b) le[a][b] = f.is_face(a, b);
  MonoidScheme x(std::move(stalks), std::move(le), {}, std::move(labels));
  x.validate();
  return x;
}

Fan fan_from_scheme(const MonoidScheme& x) { return toric_data(x).fan; }

SchemeMorphism morphism_from_fan_map(const FanMorphism& phi) {
  auto y = std::make_shared<const MonoidScheme>(scheme_from_fan(phi.source));
  auto x = std::make_shared<const MonoidScheme>(scheme_from_fan(phi.target));
  std::vector<std::size_t> pm;
  for (std::size_t i = 0; i < phi.source.cones().size(); ++i) {
    std::vector<LatticeVector> img;
    for (const auto& r : phi.source.cone_rays(i)) img.push_back(phi.phi * r);
    auto c = phi.target.smallest_cone_containing(RationalCone(phi.target.rank(), img));
    if (!c) throw Error(ErrorCode::InvalidMorphism, "cone image lies in no target cone");
    pm.push_back(*c);
  }
  std::vector<IntMatrix> maps(y->size(), phi.phi.transpose());
  SchemeMorphism f = make_morphism(y, x, std::move(pm), std::move(maps), MorphismKind::Toric);
  f.fan_map = phi;
  return f;
}

FanMorphism fan_map_from_morphism(const SchemeMorphism& f) {
  ToricData ty = toric_data(*f.source);
  ToricData tx = toric_data(*f.target);
  if (f.point_map[ty.generic] != tx.generic)
    throw Error(ErrorCode::NotGenericPreserving, "generic point is not sent to the generic point");
  const std::size_t dy = ty.group.rank(), dx = tx.group.rank();
  IntMatrix p(dy, dx);
  for (std::size_t j = 0; j < dx; ++j) {
    auto c = ty.group.coordinates(f.stalk_maps[ty.generic] * tx.group.basis()[j]);
    if (!c) throw Error(ErrorCode::InvalidMorphism, "generic stalk map leaves the group");
    for (std::size_t i = 0; i < dy; ++i) p(i, j) = (*c)[i];
  }
  return make_fan_morphism(ty.fan, tx.fan, p.transpose());
}

}  // namespace msch
