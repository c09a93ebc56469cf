#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "disctc/config_space.hpp"
#include "disctc/error.hpp"
#include "disctc/json_io.hpp"
#include "disctc/lattice.hpp"
#include "disctc/morse.hpp"
#include "disctc/planner.hpp"
#include "disctc/torus.hpp"

namespace py = pybind11;
using namespace disctc;
using io::json;

namespace {

py::object to_python(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_python(e));
      return std::move(out);
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return std::move(out);
    }
    default:
      throw ParseError("unsupported JSON value");
  }
}

json from_python(const py::handle& h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) return h.cast<std::int64_t>();
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::dict>(h)) {
    json out = json::object();
    for (const auto& [k, v] : h.cast<py::dict>()) out[py::str(k).cast<std::string>()] = from_python(v);
    return out;
  }
  if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
    json out = json::array();
    for (const auto& e : h) out.push_back(from_python(e));
    return out;
  }
  throw ParseError("cannot convert Python object of type " + py::str(py::type::of(h)).cast<std::string>());
}

SparsePoly poly_arg(const py::dict& poly) { return io::poly_from_json(from_python(poly)); }

CoeffVector coeffs_arg(std::vector<Complex> a) { return CoeffVector{std::move(a)}; }

}  // namespace

PYBIND11_MODULE(_disctc, m) {
  m.doc() = "Topological-complexity bounds and Morse-theoretic checks for discriminantal varieties";

  static py::exception<Error> error(m, "Error");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<ValidationError> validation_error(m, "ValidationError", error.ptr());
  static py::exception<NumericError> numeric_error(m, "NumericError", error.ptr());
  static py::exception<CatalogMiss> catalog_miss(m, "CatalogMiss", numeric_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CatalogMiss& e) {
      py::set_error(catalog_miss, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const NumericError& e) {
      py::set_error(numeric_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("homog_lattice", [](const py::dict& poly) { return to_python(io::to_json(homog_lattice(poly_arg(poly)))); },
        py::arg("poly"),
        "Lattice of homogeneisations of {'dim': m, 'terms': [{'exp': [...], 're': a, 'im': b}, ...]}.");

  m.def("is_homogeneisation",
        [](const py::dict& poly, const IntVector& d) { return is_homogeneisation(poly_arg(poly), d); },
        py::arg("poly"), py::arg("degrees"));

  m.def("tc_upper_bound",
        [](const py::dict& poly, const IntMatrix& xi) {
          const SparsePoly p = poly_arg(poly);
          return to_python(io::to_json(tc_upper_bound(p, validate_action(p, xi))));
        },
        py::arg("poly"), py::arg("xi"));

  m.def("verify_signatures",
        [](const py::dict& poly, std::size_t samples, std::uint64_t seed, double null_tol) {
          SamplingOptions opts;
          opts.samples = samples;
          opts.seed = seed;
          opts.null_tol = null_tol;
          const GPotential g(poly_arg(poly));
          SignatureReport report;
          {
            py::gil_scoped_release release;
            report = verify_signatures(g, opts);
          }
          return to_python(io::to_json(report));
        },
        py::arg("poly"), py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("null_tol") = kDefaultNullTol);

  m.def("bound_for_config_spaces",
        [](std::size_t n, bool ordered) {
          const ConfigBound b = bound_for_config_spaces(n, ordered);
          json j = io::to_json(b.report);
          j["n"] = b.n;
          j["ordered"] = b.ordered;
          j["config_route_t"] = b.config_route_t;
          return to_python(j);
        },
        py::arg("n"), py::arg("ordered") = false);

  m.def("roots_to_coeffs", [](std::vector<Complex> w) { return roots_to_coeffs(PlanarConfig(std::move(w))).a; },
        py::arg("roots"), "Coefficients (a_2, ..., a_n) of a centred root set.");
  m.def("coeffs_to_roots", [](std::vector<Complex> a) { return coeffs_to_roots(coeffs_arg(std::move(a))).points(); },
        py::arg("a"));
  m.def("disc_c", [](std::vector<Complex> a) { return disc_c(coeffs_arg(std::move(a))); }, py::arg("a"));
  m.def("disc_c_resultant", [](std::vector<Complex> a) { return disc_c_resultant(coeffs_arg(std::move(a))); },
        py::arg("a"));
  m.def("disc_f", [](const std::vector<Complex>& w) { return disc_f(w); }, py::arg("w"),
        "Ordered discriminant in the coordinates w_1, ..., w_{n-1}.");

  m.def("potential_gprime", [](std::vector<Complex> w) { return potential_gprime(PlanarConfig(std::move(w))); },
        py::arg("points"));

  m.def("plan",
        [](std::vector<Complex> p, std::vector<Complex> q, const std::string& potential, std::uint64_t seed) {
          PlanOptions opts;
          opts.potential = potential_from_string(potential);
          opts.catalog_seed = seed;
          const PlanarConfig a(std::move(p)), b(std::move(q));
          PathPolyline path;
          {
            py::gil_scoped_release release;
            path = plan(a, b, opts);
          }
          return to_python(io::to_json(path));
        },
        py::arg("p"), py::arg("p_prime"), py::arg("potential") = "g", py::arg("seed") = 0);

  m.def("build_catalog",
        [](std::size_t n, std::size_t seeds, const std::string& potential, std::uint64_t seed) {
          CatalogOptions opts;
          opts.potential = potential_from_string(potential);
          opts.seed = seed;
          CriticalCatalog cat;
          {
            py::gil_scoped_release release;
            cat = build_catalog(n, seeds, opts);
          }
          return to_python(io::to_json(cat));
        },
        py::arg("n"), py::arg("seeds") = 48, py::arg("potential") = "g", py::arg("seed") = 0);
}
