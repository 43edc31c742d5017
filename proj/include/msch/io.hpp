#pragma once

// JSON file formats and DOT export. Documents use sorted keys so that
// parse -> emit -> parse is bit-exact.

#include "msch/cdh.hpp"
#include "msch/realization.hpp"

#include <json.hpp>

#include <string>

namespace msch {

using Json = nlohmann::json;

/// Parses text; throws Error(Parse).
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
std::string dump(const Json& j);

Json to_json(const Int& v);
Int int_from_json(const Json& j);
Json to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j, std::size_t rank);
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

/// {"rank", "generators", "ideal"}
Json to_json(const AffineMonoid& a);
AffineMonoid monoid_from_json(const Json& j);

/// {"rank", "rays", "cones"}
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);

/// Two scheme forms: {"charts", "identifications"} glued by glue(), or the
/// poset form {"points": [{"label", "stalk"}], "order": [[y, x], ...],
/// "restrictions": [{"from", "to", "matrix"}]} that every computed scheme is
/// written in. A {"fan": ...} document builds the toric scheme.
MonoidScheme scheme_from_json(const Json& j);
Json to_json(const MonoidScheme& x);

/// {"ideal": [{"chart": k, "generators": [...]}]}, chart k = k-th maximal point.
IdealSheaf ideal_from_json(const MonoidScheme& x, const Json& j);
Json to_json(const MonoidScheme& x, const IdealSheaf& j);

/// {"source", "target", "matrix", "kind"} or {"fan_map": {"source", "target", "phi"}}.
SchemeMorphism morphism_from_json(const Json& j);
Json to_json(const SchemeMorphism& f);

/// {"x": scheme, "closed": ideal | "open": [points], "p": {"blowup": ideal} |
/// {"normalization": true} | {"scheme": Y, "matrix": M, "kind"}}
CartesianSquare square_from_json(const Json& j);
Json to_json(const CartesianSquare& sq);

Json to_json(const AlgebraPresentation& p);
Json to_json(const Manifest& m);

std::string scheme_dot(const MonoidScheme& x);
std::string fan_dot(const Fan& f);

}  // namespace msch
