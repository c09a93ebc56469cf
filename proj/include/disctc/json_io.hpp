#pragma once

#include <string>

#include "disctc/config_space.hpp"
#include "disctc/integer_matrix.hpp"
#include "disctc/lattice.hpp"
#include "disctc/morse.hpp"
#include "disctc/planner.hpp"
#include "disctc/poly.hpp"
#include "disctc/torus.hpp"
#include "json.hpp"

namespace disctc::io {

using nlohmann::json;

/// {"dim": m, "terms": [{"exp": [...], "re": a, "im": b}, ...]}; duplicate
/// exponent vectors are rejected.
SparsePoly poly_from_json(const json& j);
json to_json(const SparsePoly& p);

/// {"xi": [[...], ...]} or a bare array of rows.
IntMatrix xi_from_json(const json& j);

json to_json(const HomogLattice& lattice);
/// Pattern indices are reported 1-based.
json to_json(const BoundReport& report);
json to_json(const SignatureReport& report);

/// {"n": n, "ordered": bool, "points": [[re, im], ...]}
PlanarConfig config_from_json(const json& j);
json to_json(const PlanarConfig& c);

/// {"n": n, "a": [[re, im], ...]} with a = (a_2, ..., a_n).
CoeffVector coeffs_from_json(const json& j);
json to_json(const CoeffVector& a);

/// {"n": ..., "samples": [[[re, im], ...], ...], "min_margin": ..., "legs": [...]}
json to_json(const PathPolyline& path);

json to_json(const CriticalCatalog& catalog);
CriticalCatalog catalog_from_json(const json& j);

/// Parses text, converting library exceptions into ParseError.
json parse_text(const std::string& text, const std::string& source);
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace disctc::io
