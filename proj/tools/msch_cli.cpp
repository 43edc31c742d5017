// msch: command-line driver. Documents go to stdout, diagnostics to stderr.

#include "msch/error.hpp"
#include "msch/io.hpp"
#include "msch/toric.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace msch;

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<std::size_t> parse_points(const std::string& s) {
  std::vector<std::size_t> out;
  try {
    for (const auto& t : split(s)) out.push_back(std::stoul(t));
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "bad point list '" + s + "'");
  }
  return out;
}

LatticeVector parse_vector(const std::string& s) {
  std::vector<Int> c;
  try {
    for (const auto& t : split(s)) c.emplace_back(t);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "bad vector '" + s + "'");
  }
  return LatticeVector(std::move(c));
}

std::vector<std::size_t> all_points(const MonoidScheme& x) {
  std::vector<std::size_t> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

Json labels(const MonoidScheme& x, const std::vector<std::size_t>& pts) {
  Json out = Json::array();
  for (std::size_t p : pts) out.push_back(x.label(p));
  return out;
}

Json prime_json(const PrimeIdeal& p) {
  return {{"face", p.face}, {"functional", to_json(p.functional)}, {"height", p.height}, {"face_dim", p.face_dim}};
}

std::shared_ptr<const MonoidScheme> load_scheme(const std::string& path) {
  return std::make_shared<const MonoidScheme>(scheme_from_json(read_json_file(path)));
}

Json square_json(const CartesianSquare& sq, const Classification& cls, bool full) {
  Json out = {{"class", to_string(cls.cls)}, {"certificate", cls.certificate}};
  if (full) out["square"] = to_json(sq);
  return out;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return 1;
    case ErrorCode::SearchBoundExceeded:
    case ErrorCode::BudgetExceeded: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (const char* s = std::getenv("SEED")) seed = std::strtoull(s, nullptr, 10);
  if (const char* b = std::getenv("BUDGET")) set_search_budget(std::strtoull(b, nullptr, 10));

  CLI::App app{"Monoid schemes of finite type"};
  app.require_subcommand(1);
  app.add_option("--seed", seed, "seed for randomized checks (default $SEED or 0)");

  std::function<void()> action;
  std::string in, in2, points, ray;
  std::size_t times = 1, budget = 6, depth = 1, dvm = 100, bound = 4, index = 0;
  bool summary = false;
  std::string c0, y0, d0;

  auto verb = [&](CLI::App* group, const std::string& name, const std::string& help, std::function<void()> f) {
    auto* sub = group->add_subcommand(name, help);
    sub->callback([&action, f] { action = f; });
    return sub;
  };
  auto file = [&](CLI::App* sub, std::string& target, const std::string& name = "file") {
    sub->add_option(name, target, "input document")->required()->check(CLI::ExistingFile);
  };
  auto emit = [](const Json& j) { std::cout << dump(j); };

  // monoid
  auto* monoid = app.add_subcommand("monoid", "affine monoids")->require_subcommand(1);
  file(verb(monoid, "mspec", "prime spectrum", [&] {
         AffineMonoid a = monoid_from_json(read_json_file(in));
         const auto& ps = a.mspec();
         Json primes = Json::array(), order = Json::array();
         for (const auto& p : ps) primes.push_back(prime_json(p));
         for (std::size_t i = 0; i < ps.size(); ++i)
           for (std::size_t j = 0; j < ps.size(); ++j)
             if (i != j && prime_le(ps[i], ps[j])) order.push_back({i, j});
         emit({{"count", ps.size()}, {"primes", primes}, {"order", order}});
       }), in);
  file(verb(monoid, "normalize", "normalization", [&] {
         Normalization n = normalization(monoid_from_json(read_json_file(in)));
         emit({{"monoid", to_json(n.monoid)}, {"embedding", to_json(n.embedding.matrix)},
               {"finite", to_string(is_finite(n.embedding))}});
       }), in);
  file(verb(monoid, "reduce", "reduction", [&] {
         AffineMonoid a = monoid_from_json(read_json_file(in));
         Json nil = Json::array();
         for (const auto& g : nilradical(a).generators) nil.push_back(to_json(g));
         emit({{"monoid", to_json(reduce(a))}, {"nilradical", nil}, {"reduced", is_reduced(a)}});
       }), in);

  // scheme
  auto* scheme = app.add_subcommand("scheme", "monoid schemes")->require_subcommand(1);
  file(verb(scheme, "build", "glue charts into the point poset", [&] { emit(to_json(*load_scheme(in))); }), in);
  file(verb(scheme, "separated", "separatedness", [&] {
         auto x = load_scheme(in);
         SeparatedResult r = is_separated(*x);
         Json v = nullptr;
         if (r.violating) v = labels(*x, {r.violating->first, r.violating->second});
         emit({{"separated", r.separated}, {"violating", v}, {"reason", r.reason}});
       }), in);
  file(verb(scheme, "smooth", "smooth points", [&] {
         auto x = load_scheme(in);
         auto sm = smooth_points(*x);
         std::vector<std::size_t> sing;
         for (std::size_t p = 0; p < sm.size(); ++p)
           if (!sm[p]) sing.push_back(p);
         emit({{"smooth", sing.empty()}, {"singular", labels(*x, sing)}});
       }), in);
  {
    auto* sub = verb(scheme, "closure", "equivariant closure of a set of points", [&] {
      auto x = load_scheme(in);
      Closure c = equivariant_closure(*x, parse_points(points));
      emit({{"points", labels(*x, c.subscheme.points)}, {"subscheme", to_json(c.subscheme.scheme)},
            {"ideal", to_json(*x, c.ideal)["ideal"]}});
    });
    file(sub, in);
    sub->add_option("--points", points, "comma-separated point indices")->required();
  }
  file(verb(scheme, "image", "scheme-theoretic image of a morphism", [&] {
         SchemeImage im = scheme_theoretic_image(morphism_from_json(read_json_file(in)));
         emit({{"image", to_json(*im.scheme)}, {"immersion_points", im.immersion.point_map},
               {"closed_immersion", is_closed_immersion(im.immersion)}});
       }), in);

  // fan
  auto* fan = app.add_subcommand("fan", "fans")->require_subcommand(1);
  file(verb(fan, "check", "validate a fan", [&] {
         Fan f = fan_from_json(read_json_file(in));
         emit({{"valid", true}, {"cones", f.cones().size()}, {"maximal", f.maximal_cones().size()},
               {"simplicial", f.is_simplicial()}, {"smooth", f.is_smooth()}});
       }), in);
  file(verb(fan, "dual", "dual cone and its Hilbert basis; input {rank, generators}", [&] {
         Json j = read_json_file(in);
         AffineMonoid a = monoid_from_json(j);  // reuse the vector parsing
         RationalCone c(a.rank(), a.generators());
         RationalCone d = dual_cone(c);
         Json gens = Json::array(), lin = Json::array(), hb = Json::array();
         for (const auto& g : d.extreme_rays()) gens.push_back(to_json(g));
         for (const auto& g : d.lineality()) lin.push_back(to_json(g));
         for (const auto& g : hilbert_basis(d)) hb.push_back(to_json(g));
         emit({{"rank", d.rank()}, {"rays", gens}, {"lineality", lin}, {"hilbert_basis", hb}});
       }), in);
  {
    auto* sub = verb(fan, "star", "star subdivision at a vector", [&] {
      emit(to_json(star_subdivision(fan_from_json(read_json_file(in)), parse_vector(ray))));
    });
    file(sub, in);
    sub->add_option("--ray", ray, "comma-separated coordinates")->required();
  }
  {
    auto* sub = verb(fan, "barycentric", "iterated barycentric subdivision", [&] {
      emit(to_json(iterated_barycentric(fan_from_json(read_json_file(in)), times)));
    });
    file(sub, in);
    sub->add_option("--times", times, "iterations (default 1)");
  }
  file(verb(fan, "resolve", "toric resolution", [&] {
         Resolution r = resolve(fan_from_json(read_json_file(in)));
         Json ins = Json::array();
         for (const auto& v : r.inserted) ins.push_back(to_json(v));
         emit({{"fan", to_json(r.fan)}, {"inserted", ins}});
       }), in);
  {
    auto* sub = verb(fan, "factor", "factor a subdivision through iterated barycentric subdivisions", [&] {
      Factorization fz = factor_through(fan_from_json(read_json_file(in)), fan_from_json(read_json_file(in2)), budget);
      Json tower = Json::array();
      for (const auto& s : fz.tower) tower.push_back({{"center", s.center}, {"ray", to_json(s.ray)}});
      emit({{"level", fz.level}, {"fan", to_json(fz.fan)}, {"tower", tower}});
    });
    file(sub, in, "base");
    file(sub, in2, "target");
    sub->add_option("--budget", budget, "largest level tried (default 6)");
  }

  // blowup
  auto* blowup = app.add_subcommand("blowup", "blow-ups")->require_subcommand(1);
  {
    auto* sub = verb(blowup, "run", "blow up a scheme along an ideal", [&] {
      auto x = load_scheme(in);
      BlowupResult b = blow_up(x, ideal_from_json(*x, read_json_file(in2)));
      emit({{"scheme", to_json(*b.scheme)}, {"exceptional_ideal", to_json(*b.scheme, b.exceptional_ideal)["ideal"]},
            {"point_map", b.pi.point_map}, {"dot", scheme_dot(*b.scheme)}});
    });
    file(sub, in, "scheme");
    file(sub, in2, "ideal");
  }
  {
    auto* sub = verb(blowup, "verify", "check that the center becomes invertible", [&] {
      auto x = load_scheme(in);
      IdealSheaf j = ideal_from_json(*x, read_json_file(in2));
      BlowupResult b = blow_up(x, j);
      std::vector<bool> ch = inverted_charts(b.pi, j);
      bool all = std::all_of(ch.begin(), ch.end(), [](bool v) { return v; });
      emit({{"inverts", all}, {"charts", ch}});
    });
    file(sub, in, "scheme");
    file(sub, in2, "ideal");
  }

  // morphism
  auto* morphism = app.add_subcommand("morphism", "morphisms")->require_subcommand(1);
  {
    auto* sub = verb(morphism, "proper", "properness with a DVM battery", [&] {
      SchemeMorphism f = morphism_from_json(read_json_file(in));
      ProperResult r = is_proper(f);
      std::size_t unique = 0, none = 0, multi = 0;
      for (const auto& sq : random_dvm_squares(f, dvm, seed)) switch (dvm_lift_check(f, sq)) {
          case LiftResult::UniqueLift: ++unique; break;
          case LiftResult::NoLift: ++none; break;
          case LiftResult::MultipleLifts: ++multi; break;
        }
      emit({{"proper", to_string(r.proper)}, {"certificate", r.certificate},
            {"dvm", {{"seed", seed}, {"squares", dvm}, {"unique", unique}, {"no_lift", none}, {"multiple", multi}}}});
    });
    file(sub, in);
    sub->add_option("--dvm", dvm, "random DVM squares (default 100)");
  }
  file(verb(morphism, "finite", "finiteness", [&] {
         emit({{"finite", to_string(is_finite(morphism_from_json(read_json_file(in))))}});
       }), in);
  file(verb(morphism, "birational", "birationality", [&] {
         emit({{"birational", is_birational(morphism_from_json(read_json_file(in)))}});
       }), in);
  file(verb(morphism, "heights", "height monotonicity", [&] {
         SchemeMorphism f = morphism_from_json(read_json_file(in));
         Json pts = Json::array();
         for (std::size_t y = 0; y < f.source->size(); ++y) {
           std::size_t x = f.point_map[y];
           pts.push_back({{"point", f.source->label(y)}, {"height", f.source->height(y)},
                          {"image", f.target->label(x)}, {"image_height", f.target->height(x)}});
         }
         emit({{"monotone", check_height_monotone(f)}, {"points", pts}});
       }), in);

  // square
  auto* square = app.add_subcommand("square", "cdh squares")->require_subcommand(1);
  {
    auto* sub = verb(square, "classify", "classify a square", [&] {
      CartesianSquare sq = square_from_json(read_json_file(in));
      emit(square_json(sq, classify(sq), !summary));
    });
    file(sub, in);
    sub->add_flag("--summary", summary, "omit the square data");
  }
  {
    auto* sub = verb(square, "generate", "squares over a scheme", [&] {
      Json out = Json::array();
      std::function<void(std::shared_ptr<const MonoidScheme>, std::size_t, const std::string&)> walk;
      walk = [&](std::shared_ptr<const MonoidScheme> x, std::size_t depth, const std::string& path) {
        for (const auto& g : generate_squares(x)) {
          Json e = square_json(g.square, g.cls, !summary);
          e["origin"] = path + g.origin;
          out.push_back(e);
          if (depth > 1 && g.cls.cls != SquareClass::Zariski) walk(g.square.y, depth - 1, path + g.origin + "/");
        }
      };
      walk(load_scheme(in), depth, "");
      emit({{"squares", out}});
    });
    file(sub, in);
    sub->add_option("--depth", depth, "recurse into the source of each blow-up square (default 1)");
    sub->add_flag("--summary", summary, "omit the square data");
  }
  {
    auto* sub = verb(square, "reduce", "reducing data from density witnesses", [&] {
      CartesianSquare sq = square_from_json(read_json_file(in));
      auto witness = [&](std::shared_ptr<const MonoidScheme> s, std::size_t i, const std::string& pts) {
        return DensityWitness{s, i, pts.empty() ? all_points(*s) : parse_points(pts)};
      };
      ReducingData r = reducing_data(sq, witness(sq.c, index, c0), witness(sq.y, index, y0),
                                     witness(sq.d, index > 0 ? index - 1 : 0, d0));
      emit({{"index", index}, {"x_prime", labels(*sq.x, r.x_prime.open)}, {"class", to_string(r.cls.cls)},
            {"certificate", r.cls.certificate}, {"verified", r.verified}});
    });
    file(sub, in);
    sub->add_option("--index", index, "density index i");
    sub->add_option("--c0", c0, "open points of C (default all)");
    sub->add_option("--y0", y0, "open points of Y (default all)");
    sub->add_option("--d0", d0, "open points of D (default all)");
  }

  // realize
  auto* realize = app.add_subcommand("realize", "k-realizations")->require_subcommand(1);
  {
    auto* sub = verb(realize, "present", "binomial presentation of k[A]", [&] {
      emit(to_json(present_algebra(monoid_from_json(read_json_file(in)), bound)));
    });
    file(sub, in);
    sub->add_option("--bound", bound, "total degree bound (default 4)");
  }
  {
    auto* sub = verb(realize, "manifest", "gluing manifest of a scheme", [&] {
      emit(to_json(realize_scheme_manifest(*load_scheme(in), bound)));
    });
    file(sub, in);
    sub->add_option("--bound", bound, "total degree bound (default 4)");
  }

  // export
  auto* exp = app.add_subcommand("export", "canonical documents")->require_subcommand(1);
  file(verb(exp, "dot", "DOT of a scheme poset or a fan's cone poset", [&] {
         Json j = read_json_file(in);
         std::cout << (j.contains("rays") ? fan_dot(fan_from_json(j)) : scheme_dot(scheme_from_json(j)));
       }), in);
  file(verb(exp, "json", "canonical form of a monoid, fan or scheme document", [&] {
         Json j = read_json_file(in);
         if (j.contains("rays"))
           emit(to_json(fan_from_json(j)));
         else if (j.contains("generators"))
           emit(to_json(monoid_from_json(j)));
         else
           emit(to_json(scheme_from_json(j)));
       }), in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc == 0) return 0;
    std::cerr << app.help();
    return 1;
  }

  try {
    action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    int rc = exit_code(e.code());
    std::cout << dump({{"error", {{"code", to_string(e.code())}, {"message", e.what()}, {"exit", rc}}}});
    return rc;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << dump({{"error", {{"code", "Parse"}, {"message", e.what()}, {"exit", 1}}}});
    return 1;
  }
  return 0;
}
