#include "disctc/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "disctc/error.hpp"

namespace disctc::io {

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json points_to_json(const std::vector<Complex>& pts) {
  json arr = json::array();
  for (const auto& w : pts) arr.push_back(complex_to_json(w));
  return arr;
}

std::vector<Complex> points_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of points");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_from_json(j[i], where + " point " + std::to_string(i + 1)));
  }
  return out;
}

json inertia_to_json(const Inertia& in) {
  return json{{"positive", in.positive}, {"negative", in.negative}, {"null", in.null}};
}

json pattern_to_json(const std::vector<bool>& zeroed) {
  json arr = json::array();
  for (auto j : pattern_indices(zeroed)) arr.push_back(j + 1);
  return arr;
}

}  // namespace

SparsePoly poly_from_json(const json& j) {
  const auto dim = field<long long>(j, "dim", "polynomial");
  if (dim <= 0) throw ParseError("polynomial: 'dim' must be positive");
  const auto terms = j.contains("terms") ? j.at("terms") : json();
  if (!terms.is_array()) throw ParseError("polynomial: 'terms' must be an array");
  SparsePoly::TermMap map;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "polynomial term " + std::to_string(t + 1);
    const auto& term = terms[t];
    if (!term.is_object() || !term.contains("exp") || !term.at("exp").is_array()) {
      throw ParseError(where + ": missing exponent array 'exp'");
    }
    MultiIndex exp;
    for (const auto& e : term.at("exp")) {
      if (!e.is_number_integer()) throw ParseError(where + ": exponents must be integers");
      const auto v = e.get<long long>();
      if (v < 0) throw ParseError(where + ": exponents must be nonnegative");
      exp.push_back(static_cast<int>(v));
    }
    if (exp.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(where + ": exponent has length " + std::to_string(exp.size()) +
                       ", expected " + std::to_string(dim));
    }
    const double re = term.contains("re") ? field<double>(term, "re", where) : 0.0;
    const double im = term.contains("im") ? field<double>(term, "im", where) : 0.0;
    if (!map.emplace(exp, Complex{re, im}).second) {
      throw ParseError(where + ": duplicate exponent vector");
    }
  }
  return SparsePoly(static_cast<std::size_t>(dim), std::move(map));
}

json to_json(const SparsePoly& p) {
  json terms = json::array();
  for (const auto& [exp, c] : p.terms()) {
    terms.push_back({{"exp", exp}, {"re", c.real()}, {"im", c.imag()}});
  }
  return json{{"dim", p.dim()}, {"terms", terms}};
}

IntMatrix xi_from_json(const json& j) {
  const json& rows = j.is_object() ? (j.contains("xi") ? j.at("xi") : json()) : j;
  if (!rows.is_array()) throw ParseError("action matrix: expected an array of rows or {\"xi\": ...}");
  IntMatrix xi;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array()) throw ParseError("action matrix row " + std::to_string(r + 1) + " is not an array");
    IntVector row;
    for (const auto& e : rows[r]) {
      if (!e.is_number_integer()) {
        throw ParseError("action matrix row " + std::to_string(r + 1) + " has a non-integer entry");
      }
      row.push_back(e.get<std::int64_t>());
    }
    xi.push_back(std::move(row));
  }
  return xi;
}

json to_json(const HomogLattice& lattice) {
  return json{{"rank", lattice.rank()}, {"basis", lattice.basis}, {"degrees", lattice.degrees}};
}

json to_json(const BoundReport& report) {
  json j{{"m", report.m},
         {"s", report.s},
         {"t", report.t},
         {"bound", report.bound},
         {"witness_pattern", pattern_to_json(report.witness)}};
  if (report.lattice_rank) j["lattice_rank"] = *report.lattice_rank;
  return j;
}

json to_json(const SignatureReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    json point = json::array();
    for (const auto& z : r.point.to_complex()) point.push_back(complex_to_json(z));
    records.push_back({{"point", point},
                       {"abs_delta", r.abs_delta},
                       {"inertia_inverse_abs2", inertia_to_json(r.inverse_abs2)},
                       {"inertia_g", inertia_to_json(r.g)},
                       {"inertia_pair", inertia_to_json(r.pair)}});
  }
  return json{{"m", report.m},
              {"records", records},
              {"summary",
               {{"samples", report.records.size()},
                {"rejected", report.rejected},
                {"max_negative_inverse_abs2", report.max_negative_inverse_abs2},
                {"min_positive_g", report.min_positive_g},
                {"min_positive_pair", report.min_positive_pair},
                {"violations", report.violations}}}};
}

PlanarConfig config_from_json(const json& j) {
  auto pts = points_from_json(j.contains("points") ? j.at("points") : json(), "configuration");
  if (j.contains("n") && field<std::size_t>(j, "n", "configuration") != pts.size()) {
    throw ParseError("configuration: 'n' does not match the number of points");
  }
  const bool ordered = j.contains("ordered") ? field<bool>(j, "ordered", "configuration") : false;
  return PlanarConfig(std::move(pts), ordered);
}

json to_json(const PlanarConfig& c) {
  const std::vector<Complex> pts = c.ordered() ? c.points() : c.canonical().points();
  return json{{"n", c.n()}, {"ordered", c.ordered()}, {"points", points_to_json(pts)}};
}

CoeffVector coeffs_from_json(const json& j) {
  CoeffVector a;
  a.a = points_from_json(j.contains("a") ? j.at("a") : json(), "coefficients");
  if (j.contains("n") && field<std::size_t>(j, "n", "coefficients") != a.n()) {
    throw ParseError("coefficients: 'n' does not match the number of coefficients");
  }
  return a;
}

json to_json(const CoeffVector& a) { return json{{"n", a.n()}, {"a", points_to_json(a.a)}}; }

json to_json(const PathPolyline& path) {
  json samples = json::array();
  for (const auto& c : path.samples) samples.push_back(points_to_json(c.points()));
  json legs = json::array();
  for (const auto& l : path.legs) legs.push_back({{"name", l.name}, {"begin", l.begin}, {"end", l.end}});
  json j{{"n", path.samples.empty() ? 0 : path.samples.front().n()},
         {"samples", samples},
         {"min_margin", path.min_margin},
         {"legs", legs},
         {"flow_steps", path.flow_steps},
         {"tied_matches", path.tied_matches}};
  if (path.entry_p) j["entry_p"] = *path.entry_p;
  if (path.entry_p_prime) j["entry_p_prime"] = *path.entry_p_prime;
  return j;
}

json to_json(const CriticalCatalog& catalog) {
  json entries = json::array();
  for (const auto& e : catalog.entries) {
    entries.push_back({{"shape_hash", e.shape_hash},
                       {"index", e.index},
                       {"inertia", inertia_to_json(e.inertia)},
                       {"value", e.value},
                       {"grad_norm", e.grad_norm},
                       {"points", points_to_json(e.config.points())}});
  }
  json recipes = json::array();
  for (const auto& r : catalog.recipes) {
    json wps = json::array();
    for (const auto& w : r.waypoints) wps.push_back(points_to_json(w.points()));
    recipes.push_back({{"from", r.from}, {"to", r.to}, {"waypoints", wps}});
  }
  return json{{"n", catalog.n},
              {"potential", to_string(catalog.potential)},
              {"grad_tol", catalog.grad_tol},
              {"entries", entries},
              {"recipes", recipes}};
}

CriticalCatalog catalog_from_json(const json& j) {
  CriticalCatalog cat;
  cat.n = field<std::size_t>(j, "n", "catalog");
  cat.potential = potential_from_string(field<std::string>(j, "potential", "catalog"));
  cat.grad_tol = field<double>(j, "grad_tol", "catalog");
  for (const auto& e : j.at("entries")) {
    CatalogEntry entry{PlanarConfig(points_from_json(e.at("points"), "catalog entry")), 0, {}, 0.0,
                       0.0, {}};
    entry.index = e.at("index").get<int>();
    entry.inertia = {e.at("inertia").at("positive").get<std::size_t>(),
                     e.at("inertia").at("negative").get<std::size_t>(),
                     e.at("inertia").at("null").get<std::size_t>()};
    entry.value = e.at("value").get<double>();
    entry.grad_norm = e.at("grad_norm").get<double>();
    entry.shape_hash = e.at("shape_hash").get<std::string>();
    cat.entries.push_back(std::move(entry));
  }
  for (const auto& r : j.at("recipes")) {
    ConnectingRecipe recipe{r.at("from").get<std::size_t>(), r.at("to").get<std::size_t>(), {}};
    for (const auto& w : r.at("waypoints")) {
      recipe.waypoints.emplace_back(points_from_json(w, "recipe waypoint"));
    }
    cat.recipes.push_back(std::move(recipe));
  }
  return cat;
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed JSON (" + e.what() + ")");
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace disctc::io
