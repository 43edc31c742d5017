#include "msch/monoid.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <functional>
#include <atomic>
#include <map>
#include <mutex>
#include <set>

namespace msch {

namespace {
std::atomic<std::size_t> g_search_budget{1'000'000};
}

std::size_t search_budget() { return g_search_budget.load(); }
void set_search_budget(std::size_t nodes) { g_search_budget.store(nodes); }

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

bool prime_le(const PrimeIdeal& p, const PrimeIdeal& q) {
  return std::includes(p.face.begin(), p.face.end(), q.face.begin(), q.face.end());
}

struct AffineMonoid::Data {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
  std::vector<LatticeVector> ideal;
  RationalCone cone{0};
  Sublattice group;
  Sublattice unit_lattice;
  std::vector<LatticeVector> units;
  std::vector<std::size_t> unit_gens;
  std::vector<std::size_t> nonunit_gens;  // sorted by weight, heaviest first
  LatticeVector omega;
  IntMatrix unit_matrix;              // columns are the unit generators
  std::vector<Int> positive_relation;  // strictly positive relation among unit generators

  mutable std::once_flag primes_once;
  mutable std::vector<PrimeIdeal> primes;
};

namespace {

// Some lambda >= 0 with sum lambda_j cols_j = t: phase one of the simplex
// method on an exact tableau, Bland's rule.
std::optional<std::vector<Rat>> nonnegative_solution(const std::vector<LatticeVector>& cols, const LatticeVector& t) {
  const std::size_t m = t.rank(), k = cols.size(), w = k + m + 1;
  std::vector<std::vector<Rat>> tab(m + 1, std::vector<Rat>(w, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int sign = t[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < k; ++j) tab[i][j] = Rat(sign * cols[j][i]);
    tab[i][k + i] = 1;
    tab[i][w - 1] = Rat(sign * t[i]);
    basis[i] = k + i;
  }
  for (std::size_t j = 0; j < w; ++j) {
    if (j >= k && j < k + m) continue;
    for (std::size_t i = 0; i < m; ++i) tab[m][j] -= tab[i][j];
  }
  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j + 1 < w && !enter; ++j)
      if (tab[m][j] < 0) enter = j;
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][*enter] <= 0) continue;
      Rat ratio = tab[i][w - 1] / tab[i][*enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) return std::nullopt;  // unbounded cannot happen in phase one
    const Rat piv = tab[*leave][*enter];
    for (auto& x : tab[*leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == *leave || tab[i][*enter] == 0) continue;
      const Rat f = tab[i][*enter];
      for (std::size_t j = 0; j < w; ++j) tab[i][j] -= f * tab[*leave][j];
    }
    basis[*leave] = *enter;
  }
  if (tab[m][w - 1] != 0) return std::nullopt;
  std::vector<Rat> out(k, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) out[basis[i]] = tab[i][w - 1];
  return out;
}

// A relation sum c_i u_i = 0 with every c_i > 0: the u_i span a linear space,
// so -(u_1 + ... + u_k) is a non-negative combination lambda and c = 1 + lambda.
std::vector<Int> find_positive_relation(const IntMatrix& u) {
  const std::size_t k = u.cols();
  if (k == 0) return {};
  std::vector<LatticeVector> cols;
  LatticeVector sum(u.rows());
  for (std::size_t i = 0; i < k; ++i) {
    cols.push_back(u.column(i));
    sum += cols.back();
  }
  auto lambda = nonnegative_solution(cols, -sum);
  if (!lambda) throw Error(ErrorCode::Precondition, "unit generators admit no positive relation");
  Int den(1);
  for (const auto& l : *lambda) den = lcm(den, denominator(l));
  std::vector<Int> total(k);
  for (std::size_t i = 0; i < k; ++i) total[i] = den + Int(numerator(Rat((*lambda)[i] * den)));
  return total;
}

}  // namespace

AffineMonoid::AffineMonoid(std::size_t rank, std::vector<LatticeVector> generators, std::vector<LatticeVector> ideal) {
  auto d = std::make_shared<Data>();
  d->rank = rank;
  for (const auto& g : generators)
    if (g.rank() != rank) throw Error(ErrorCode::Precondition, "generator rank mismatch");
  for (const auto& a : ideal)
    if (a.rank() != rank) throw Error(ErrorCode::Precondition, "ideal generator rank mismatch");
  d->generators = std::move(generators);
  d->cone = RationalCone(rank, d->generators);
  d->group = Sublattice(rank, d->generators);
  d->omega = d->cone.positive_functional();
  std::vector<LatticeVector> ugens;
  for (std::size_t i = 0; i < d->generators.size(); ++i) {
    if (dot(d->omega, d->generators[i]) == 0) {
      d->unit_gens.push_back(i);
      ugens.push_back(d->generators[i]);
    } else {
      d->nonunit_gens.push_back(i);
    }
  }
  std::stable_sort(d->nonunit_gens.begin(), d->nonunit_gens.end(), [&](std::size_t a, std::size_t b) {
    return dot(d->omega, d->generators[a]) > dot(d->omega, d->generators[b]);
  });
  d->unit_lattice = Sublattice(rank, ugens);
  d->units = d->unit_lattice.basis();
  d->unit_matrix = IntMatrix::from_columns(ugens, rank);
  d->positive_relation = find_positive_relation(d->unit_matrix);
  d_ = d;
  // the ideal is checked and minimalized against the finished semigroup
  std::vector<LatticeVector> kept;
  for (const auto& a : ideal) {
    if (!in_semigroup(a)) throw Error(ErrorCode::NotInMonoid, "ideal generator " + a.str() + " is not in <G>");
    if (d->unit_lattice.contains(a)) throw Error(ErrorCode::ZeroMonoid, "ideal contains a unit");
    bool divisible = false;
    for (const auto& b : kept)
      if (in_semigroup(a - b)) {
        divisible = true;
        break;
      }
    if (divisible) continue;
    std::erase_if(kept, [&](const LatticeVector& b) { return in_semigroup(b - a); });
    kept.push_back(a);
  }
  std::sort(kept.begin(), kept.end());
  d->ideal = std::move(kept);
}

AffineMonoid AffineMonoid::free(std::size_t n) {
  std::vector<LatticeVector> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(LatticeVector::unit(n, i));
  return AffineMonoid(n, std::move(gens));
}

std::size_t AffineMonoid::rank() const { return d_->rank; }
const std::vector<LatticeVector>& AffineMonoid::generators() const { return d_->generators; }
const std::vector<LatticeVector>& AffineMonoid::ideal_generators() const { return d_->ideal; }
const RationalCone& AffineMonoid::cone() const { return d_->cone; }
const Sublattice& AffineMonoid::group() const { return d_->group; }
const std::vector<LatticeVector>& AffineMonoid::units() const { return d_->units; }
const Sublattice& AffineMonoid::unit_lattice() const { return d_->unit_lattice; }
const std::vector<std::size_t>& AffineMonoid::unit_generators() const { return d_->unit_gens; }

std::optional<LatticeVector> AffineMonoid::search(const LatticeVector& v, std::vector<Int>& mult) const {
  const Data& d = *d_;
  if (v.rank() != d.rank) throw Error(ErrorCode::Precondition, "vector rank mismatch");
  mult.assign(d.generators.size(), Int(0));
  if (!d.group.contains(v) || !d.cone.contains(v)) return std::nullopt;

  const auto& facets = d.cone.facets();
  std::vector<Int> weight(d.nonunit_gens.size());
  for (std::size_t j = 0; j < weight.size(); ++j) weight[j] = dot(d.omega, d.generators[d.nonunit_gens[j]]);

  std::set<std::pair<LatticeVector, std::size_t>> dead;
  std::size_t nodes = 0;
  const std::size_t budget = search_budget();
  std::optional<LatticeVector> unit_part;

  auto dfs = [&](auto&& self, const LatticeVector& r, const Int& w, std::size_t start) -> bool {
    if (++nodes > budget) throw Error(ErrorCode::SearchBoundExceeded, "membership search for " + v.str());
    if (w == 0) {
      if (!d.unit_lattice.contains(r)) return false;
      unit_part = r;
      return true;
    }
    if (dead.count({r, start})) return false;
    for (std::size_t j = start; j < d.nonunit_gens.size(); ++j) {
      if (weight[j] > w) continue;
      LatticeVector next = r - d.generators[d.nonunit_gens[j]];
      bool inside = std::all_of(facets.begin(), facets.end(), [&](const LatticeVector& f) { return dot(f, next) >= 0; });
      if (!inside) continue;
      ++mult[d.nonunit_gens[j]];
      if (self(self, next, w - weight[j], j)) return true;
      --mult[d.nonunit_gens[j]];
    }
    dead.insert({r, start});
    return false;
  };
  if (!dfs(dfs, v, dot(d.omega, v), 0)) return std::nullopt;
  return unit_part;
}

bool AffineMonoid::in_semigroup(const LatticeVector& v) const {
  std::vector<Int> mult;
  return search(v, mult).has_value();
}

std::optional<std::vector<Int>> AffineMonoid::decompose(const LatticeVector& v) const {
  const Data& d = *d_;
  std::vector<Int> mult;
  auto unit_part = search(v, mult);
  if (!unit_part) return std::nullopt;
  if (!d.unit_gens.empty()) {
    auto c = solve_integer(d.unit_matrix, *unit_part);
    Int shift = 0;
    for (std::size_t i = 0; i < d.unit_gens.size(); ++i)
      if ((*c)[i] < 0) shift = std::max(shift, Int((-(*c)[i] + d.positive_relation[i] - 1) / d.positive_relation[i]));
    for (std::size_t i = 0; i < d.unit_gens.size(); ++i) mult[d.unit_gens[i]] = (*c)[i] + shift * d.positive_relation[i];
  }
  return mult;
}

bool AffineMonoid::in_ideal(const LatticeVector& v) const {
  return std::any_of(d_->ideal.begin(), d_->ideal.end(), [&](const LatticeVector& a) { return in_semigroup(v - a); });
}

Membership AffineMonoid::member(const LatticeVector& v) const {
  if (in_ideal(v)) return Membership::InIdeal;
  return in_semigroup(v) ? Membership::InMonoid : Membership::Outside;
}

MonoidElement AffineMonoid::element(const LatticeVector& v) const {
  switch (member(v)) {
    case Membership::InIdeal: return {true, {}};
    case Membership::InMonoid: return {false, v};
    case Membership::Outside: break;
  }
  throw Error(ErrorCode::NotInMonoid, v.str() + " is not an element");
}

bool AffineMonoid::is_unit(const LatticeVector& v) const { return d_->unit_lattice.contains(v); }

const std::vector<PrimeIdeal>& AffineMonoid::mspec() const {
  std::call_once(d_->primes_once, [this] {
    const Data& d = *d_;
    const auto& facets = d.cone.facets();
    std::vector<PrimeIdeal> primes;
    for (const Face& f : d.cone.faces()) {
      PrimeIdeal p;
      p.functional = LatticeVector(d.rank);
      for (std::size_t j : f.tight_facets) p.functional += facets[j];
      bool meets_ideal = std::any_of(d.ideal.begin(), d.ideal.end(),
                                     [&](const LatticeVector& a) { return dot(p.functional, a) == 0; });
      if (meets_ideal) continue;
      for (std::size_t i = 0; i < d.generators.size(); ++i)
        if (dot(p.functional, d.generators[i]) == 0) p.face.push_back(i);
      p.face_dim = f.dim;
      primes.push_back(std::move(p));
    }
    // heights: longest chain of primes below
    std::sort(primes.begin(), primes.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
      return a.face.size() != b.face.size() ? a.face.size() > b.face.size() : a.face < b.face;
    });
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (primes[j].face != primes[i].face && prime_le(primes[j], primes[i]))
          primes[i].height = std::max(primes[i].height, primes[j].height + 1);
    std::stable_sort(primes.begin(), primes.end(),
                     [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.height < b.height; });
    d_->primes = std::move(primes);
  });
  return d_->primes;
}

const PrimeIdeal& AffineMonoid::maximal_prime() const {
  const auto& ps = mspec();
  const PrimeIdeal* best = &ps.front();
  for (const auto& p : ps)
    if (p.face.size() < best->face.size() || (p.face.size() == best->face.size() && p.face_dim < best->face_dim))
      best = &p;
  return *best;
}

bool AffineMonoid::in_prime(const PrimeIdeal& p, const LatticeVector& v) const {
  switch (member(v)) {
    case Membership::InIdeal: return true;
    case Membership::InMonoid: return dot(p.functional, v) > 0;
    case Membership::Outside: break;
  }
  throw Error(ErrorCode::NotInMonoid, v.str() + " is not an element");
}

AffineMonoid AffineMonoid::invert(const std::vector<std::size_t>& generator_indices) const {
  std::vector<LatticeVector> gens = d_->generators;
  for (std::size_t i : generator_indices) {
    if (i >= gens.size()) throw Error(ErrorCode::Precondition, "generator index out of range");
    if (!is_unit(d_->generators[i])) gens.push_back(-d_->generators[i]);
  }
  AffineMonoid probe(d_->rank, gens);
  for (const auto& a : d_->ideal)
    if (probe.is_unit(a)) throw Error(ErrorCode::ZeroMonoid, "localization inverts an ideal element");
  return AffineMonoid(d_->rank, std::move(gens), d_->ideal);
}

std::vector<LatticeVector> AffineMonoid::minimal_nonunit_generators() const {
  const Data& d = *d_;
  std::vector<LatticeVector> reps;
  // lightest first, so that any divisor of a generator is seen before it
  std::vector<std::size_t> order(d.nonunit_gens.rbegin(), d.nonunit_gens.rend());
  for (std::size_t i : order) {
    const LatticeVector& g = d.generators[i];
    bool redundant = false;
    for (const auto& h : reps) {
      if (d.unit_lattice.contains(g - h) || in_semigroup(g - h)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) reps.push_back(g);
  }
  // a lighter generator may still be a sum of others of equal weight classes
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::vector<LatticeVector> others(d.units);
    for (const auto& u : d.units) others.push_back(-u);
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (j != i) others.push_back(reps[j]);
    if (!AffineMonoid(d.rank, others).in_semigroup(reps[i])) out.push_back(reps[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticeVector> AffineMonoid::minimal_generators() const {
  std::vector<LatticeVector> out = d_->units;
  for (const auto& g : minimal_nonunit_generators()) out.push_back(g);
  return out;
}

std::size_t AffineMonoid::dimension() const {
  std::size_t h = 0;
  for (const auto& p : mspec()) h = std::max(h, p.height);
  return h;
}

bool operator==(const AffineMonoid& a, const AffineMonoid& b) {
  if (a.rank() != b.rank()) return false;
  auto gens_in = [](const AffineMonoid& x, const AffineMonoid& y) {
    return std::all_of(x.generators().begin(), x.generators().end(),
                       [&](const LatticeVector& g) { return y.in_semigroup(g); });
  };
  auto ideal_in = [](const AffineMonoid& x, const AffineMonoid& y) {
    return std::all_of(x.ideal_generators().begin(), x.ideal_generators().end(),
                       [&](const LatticeVector& g) { return y.in_ideal(g); });
  };
  return gens_in(a, b) && gens_in(b, a) && ideal_in(a, b) && ideal_in(b, a);
}

namespace {

// Minimal elements under divisibility in <G>.
std::vector<LatticeVector> minimalize(const AffineMonoid& a, const std::vector<LatticeVector>& generators) {
  std::vector<LatticeVector> kept;
  for (const auto& g : generators) {
    bool divisible = std::any_of(kept.begin(), kept.end(), [&](const LatticeVector& b) { return a.in_semigroup(g - b); });
    if (divisible) continue;
    std::erase_if(kept, [&](const LatticeVector& b) { return a.in_semigroup(b - g); });
    kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

MonoidIdeal make_ideal(const AffineMonoid& a, const std::vector<LatticeVector>& generators) {
  std::vector<LatticeVector> live;
  for (const auto& g : generators) {
    Membership m = a.member(g);
    if (m == Membership::Outside) throw Error(ErrorCode::NotInMonoid, g.str() + " is not an element");
    if (m == Membership::InIdeal) continue;
    if (a.is_unit(g)) throw Error(ErrorCode::Precondition, "ideal contains a unit");
    live.push_back(g);
  }
  return {minimalize(a, live)};
}

bool in_ideal(const AffineMonoid& a, const MonoidIdeal& j, const LatticeVector& v) {
  if (a.in_ideal(v)) return true;
  return std::any_of(j.generators.begin(), j.generators.end(),
                     [&](const LatticeVector& g) { return a.in_semigroup(v - g); });
}

MonoidIdeal intersect_primes(const AffineMonoid& a, const std::vector<PrimeIdeal>& primes) {
  // An element lies in every prime iff its support meets each complement of a
  // face, so the sums over minimal hitting sets generate the intersection.
  const auto& gens = a.generators();
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& p : primes) {
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!std::binary_search(p.face.begin(), p.face.end(), i)) outside.push_back(i);
    if (outside.empty()) return {};  // the empty prime
    sets.push_back(std::move(outside));
  }
  if (sets.empty()) return {};
  std::set<std::vector<std::size_t>> hitting;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == sets.size()) {
      std::vector<std::size_t> h(chosen);
      std::sort(h.begin(), h.end());
      h.erase(std::unique(h.begin(), h.end()), h.end());
      hitting.insert(std::move(h));
      return;
    }
    for (std::size_t i : chosen)
      if (std::binary_search(sets[k].begin(), sets[k].end(), i)) return self(self, k + 1);
    for (std::size_t i : sets[k]) {
      chosen.push_back(i);
      self(self, k + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<LatticeVector> sums;
  for (const auto& h : hitting) {
    LatticeVector s(a.rank());
    for (std::size_t i : h) s += gens[i];
    sums.push_back(s);
  }
  return {minimalize(a, sums)};
}

MonoidElement MonoidMap::apply(const LatticeVector& v) const {
  LatticeVector w = matrix * v;
  if (target.in_ideal(w)) return {true, {}};
  return {false, w};
}

MonoidMap make_map(const AffineMonoid& source, const AffineMonoid& target, IntMatrix matrix) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw Error(ErrorCode::InvalidMorphism, "matrix shape does not match the ranks");
  for (const auto& g : source.generators())
    if (target.member(matrix * g) == Membership::Outside)
      throw Error(ErrorCode::InvalidMorphism, "generator " + g.str() + " maps outside the target");
  for (const auto& a : source.ideal_generators())
    if (!target.in_ideal(matrix * a))
      throw Error(ErrorCode::InvalidMorphism, "ideal generator " + a.str() + " does not map to the basepoint");
  return {source, target, std::move(matrix)};
}

MonoidMap identity_map(const AffineMonoid& a) { return {a, a, IntMatrix::identity(a.rank())}; }

bool is_isomorphism(const MonoidMap& f) {
  const auto& src = f.source;
  const auto& tgt = f.target;
  if (src.group().rank() != tgt.group().rank()) return false;
  std::vector<LatticeVector> images;
  for (const auto& b : src.group().basis()) images.push_back(f.matrix * b);
  if (rank(images, tgt.rank()) != src.group().rank()) return false;
  for (const auto& g : src.generators())
    if (!tgt.in_semigroup(f.matrix * g)) return false;
  // every target generator must come from a source element
  IntMatrix on_group = IntMatrix::from_columns(images, tgt.rank());
  auto preimage = [&](const LatticeVector& h) -> std::optional<LatticeVector> {
    auto c = solve_integer(on_group, h);
    if (!c) return std::nullopt;
    LatticeVector x(src.rank());
    for (std::size_t i = 0; i < c->rank(); ++i) x += (*c)[i] * src.group().basis()[i];
    return x;
  };
  for (const auto& h : tgt.generators()) {
    auto x = preimage(h);
    if (!x || !src.in_semigroup(*x)) return false;
  }
  if (src.ideal_generators().size() != tgt.ideal_generators().size()) return false;
  for (const auto& a : src.ideal_generators())
    if (!tgt.in_ideal(f.matrix * a)) return false;
  for (const auto& b : tgt.ideal_generators()) {
    auto x = preimage(b);
    if (!x || !src.in_ideal(*x)) return false;
  }
  return true;
}

PrimeIdeal pullback_prime(const MonoidMap& f, const PrimeIdeal& p) {
  // the preimage of the face is the set of source generators landing on it
  std::vector<std::size_t> face;
  const auto& gens = f.source.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    MonoidElement e = f.apply(gens[i]);
    if (!e.basepoint && dot(p.functional, e.value) == 0) face.push_back(i);
  }
  for (const auto& q : f.source.mspec())
    if (q.face == face) return q;
  throw Error(ErrorCode::InvalidMorphism, "preimage of a prime is not prime");
}

std::size_t prime_index(const AffineMonoid& a, const PrimeIdeal& p) {
  const auto& ps = a.mspec();
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].face == p.face) return i;
  throw Error(ErrorCode::Precondition, "not a prime of this monoid");
}

AffineMonoid smash(const AffineMonoid& a, const AffineMonoid& b) {
  const std::size_t n = a.rank(), m = b.rank();
  std::vector<LatticeVector> gens, ideal;
  for (const auto& g : a.generators()) gens.push_back(concat(g, LatticeVector(m)));
  for (const auto& g : b.generators()) gens.push_back(concat(LatticeVector(n), g));
  for (const auto& g : a.ideal_generators()) ideal.push_back(concat(g, LatticeVector(m)));
  for (const auto& g : b.ideal_generators()) ideal.push_back(concat(LatticeVector(n), g));
  return AffineMonoid(n + m, std::move(gens), std::move(ideal));
}

AffineMonoid quotient_by_ideal(const AffineMonoid& a, const MonoidIdeal& j) {
  std::vector<LatticeVector> ideal = a.ideal_generators();
  ideal.insert(ideal.end(), j.generators.begin(), j.generators.end());
  return AffineMonoid(a.rank(), a.generators(), std::move(ideal));
}

AffineMonoid pushout_closed(const MonoidMap& f, const MonoidIdeal& j) {
  std::vector<LatticeVector> images;
  for (const auto& g : j.generators) {
    MonoidElement e = f.apply(g);
    if (!e.basepoint) images.push_back(e.value);
  }
  return quotient_by_ideal(f.target, make_ideal(f.target, images));
}

AffineMonoid pushout_localization(const MonoidMap& f, const std::vector<std::size_t>& inverted) {
  std::vector<LatticeVector> gens = f.target.generators();
  for (std::size_t i : inverted) {
    MonoidElement e = f.apply(f.source.generators().at(i));
    if (e.basepoint) throw Error(ErrorCode::ZeroMonoid, "inverting an element mapped to the basepoint");
    gens.push_back(-e.value);
  }
  AffineMonoid probe(f.target.rank(), gens);
  for (const auto& a : f.target.ideal_generators())
    if (probe.is_unit(a)) throw Error(ErrorCode::ZeroMonoid, "localization inverts an ideal element");
  return AffineMonoid(f.target.rank(), std::move(gens), f.target.ideal_generators());
}

Normalization normalization(const AffineMonoid& a) {
  if (!a.is_cancellative()) throw Error(ErrorCode::NotCancellative, "normalization needs an empty ideal");
  ConeMonoidGenerators cg = cone_lattice_generators(a.cone(), a.group());
  std::vector<LatticeVector> gens;
  for (const auto& u : cg.units) {
    gens.push_back(u);
    gens.push_back(-u);
  }
  gens.insert(gens.end(), cg.hilbert.begin(), cg.hilbert.end());
  AffineMonoid nor(a.rank(), std::move(gens));
  return {nor, MonoidMap{a, nor, IntMatrix::identity(a.rank())}};
}

MonoidIdeal nilradical(const AffineMonoid& a) {
  if (a.is_cancellative()) return {};
  std::vector<PrimeIdeal> minimal;
  for (const auto& p : a.mspec())
    if (p.height == 0) minimal.push_back(p);
  return intersect_primes(a, minimal);
}

AffineMonoid reduce(const AffineMonoid& a) { return quotient_by_ideal(a, nilradical(a)); }

bool is_reduced(const AffineMonoid& a) {
  const auto nil = nilradical(a).generators;
  return std::all_of(nil.begin(), nil.end(), [&](const LatticeVector& g) { return a.in_ideal(g); });
}

bool is_integral(const MonoidMap& f) {
  std::vector<LatticeVector> images;
  for (const auto& g : f.source.generators()) {
    MonoidElement e = f.apply(g);
    if (!e.basepoint) images.push_back(e.value);
  }
  RationalCone image_cone(f.target.rank(), images);
  MonoidIdeal nil = nilradical(f.target);
  for (const auto& h : f.target.generators()) {
    if (image_cone.contains(h)) continue;
    if (f.target.in_ideal(h) || in_ideal(f.target, nil, h)) continue;
    return false;
  }
  return true;
}

Tri is_finite(const MonoidMap& f) {
  if (is_integral(f)) return Tri::Yes;
  if (f.target.is_cancellative()) return Tri::No;
  return Tri::Unknown;
}

bool is_normal(const AffineMonoid& a) {
  ConeMonoidGenerators g = cone_lattice_generators(a.cone(), a.group());
  for (const auto& u : g.units)
    if (!a.in_semigroup(u) || !a.in_semigroup(-u)) return false;
  for (const auto& v : g.hilbert)
    if (!a.in_semigroup(v)) return false;
  return true;
}

}  // namespace msch
