#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "disctc/config_space.hpp"
#include "disctc/error.hpp"
#include "disctc/json_io.hpp"
#include "disctc/lattice.hpp"
#include "disctc/morse.hpp"
#include "disctc/planner.hpp"
#include "disctc/torus.hpp"

using namespace disctc;
using io::json;

namespace {

struct RunConfig {
  std::string input;
  std::string xi;
  std::string out;
  std::string svg;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::optional<double> grad_tol;
  double null_tol = kDefaultNullTol;
  std::string potential = "g";
  std::size_t n = 0;
  std::string space = "C";
};

void emit(const RunConfig& rc, const json& report) {
  std::cout << report.dump(2) << "\n";
  if (!rc.out.empty()) io::write_file(rc.out, report);
}

SparsePoly read_poly(const RunConfig& rc) {
  if (rc.input.empty()) throw ValidationError("--input is required");
  return io::poly_from_json(io::read_file(rc.input));
}

void cmd_homog(const RunConfig& rc) {
  emit(rc, io::to_json(homog_lattice(read_poly(rc))));
}

void cmd_bound(const RunConfig& rc) {
  if (rc.n > 0) {
    if (rc.space != "F" && rc.space != "C") throw ValidationError("--space must be F or C");
    const ConfigBound cb = bound_for_config_spaces(rc.n, rc.space == "F");
    json report = io::to_json(cb.report);
    report["n"] = cb.n;
    report["space"] = rc.space;
    report["config_route_t"] = cb.config_route_t;
    emit(rc, report);
    return;
  }
  const SparsePoly delta = read_poly(rc);
  if (rc.xi.empty()) throw ValidationError("--xi is required with --input");
  const IntMatrix xi = io::xi_from_json(io::read_file(rc.xi));
  const TorusAction action = validate_action(delta, xi);
  emit(rc, io::to_json(tc_upper_bound(delta, action)));
}

void cmd_verify_hessian(const RunConfig& rc) {
  const GPotential g(read_poly(rc));
  SamplingOptions opts;
  opts.samples = rc.samples;
  opts.seed = rc.seed;
  opts.null_tol = rc.null_tol;
  emit(rc, io::to_json(verify_signatures(g, opts)));
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

void cmd_discriminants(const RunConfig& rc) {
  if (rc.input.empty()) throw ValidationError("--input is required");
  const json j = io::read_file(rc.input);
  json report;
  if (j.contains("points")) {
    const PlanarConfig c = io::config_from_json(j);
    report["n"] = c.n();
    report["disc_c_roots"] = complex_json(disc_c_from_roots(c));
    if (c.is_centred()) {
      const CoeffVector a = roots_to_coeffs(c);
      report["coefficients"] = io::to_json(a);
      report["disc_c_resultant"] = complex_json(disc_c_resultant(a));
      report["disc_f"] = complex_json(disc_f(std::span(c.points()).first(c.n() - 1)));
    }
  } else {
    const CoeffVector a = io::coeffs_from_json(j);
    report["n"] = a.n();
    report["coefficients"] = io::to_json(a);
    report["disc_c_resultant"] = complex_json(disc_c_resultant(a));
    const PlanarConfig roots = coeffs_to_roots(a);
    report["roots"] = io::to_json(roots);
    report["disc_c_roots"] = complex_json(disc_c_from_roots(roots));
  }
  emit(rc, report);
}

PlanOptions plan_options(const RunConfig& rc) {
  PlanOptions opts;
  opts.potential = potential_from_string(rc.potential);
  opts.catalog_seed = rc.seed;
  if (rc.grad_tol) opts.flow.grad_tol = *rc.grad_tol;
  return opts;
}

void cmd_plan(const RunConfig& rc) {
  if (rc.input.empty()) throw ValidationError("--input is required");
  const json j = io::read_file(rc.input);
  if (!j.is_object() || !j.contains("p") || !j.contains("p_prime"))
    throw ParseError(rc.input + ": expected an object with \"p\" and \"p_prime\"");
  const PlanarConfig p = io::config_from_json(j.at("p"));
  const PlanarConfig q = io::config_from_json(j.at("p_prime"));
  const PathPolyline path = plan(p, q, plan_options(rc));
  if (!rc.svg.empty()) {
    std::ofstream svg(rc.svg);
    if (!svg) throw ValidationError("cannot write " + rc.svg);
    svg << render_svg(path);
  }
  emit(rc, io::to_json(path));
}

void cmd_catalog(const RunConfig& rc) {
  if (rc.n < 2) throw ValidationError("--n must be at least 2");
  CatalogOptions opts;
  opts.potential = potential_from_string(rc.potential);
  opts.seed = rc.seed;
  if (rc.grad_tol) opts.grad_tol = *rc.grad_tol;
  emit(rc, io::to_json(build_catalog(rc.n, rc.samples, opts)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological-complexity bounds and Morse checks for discriminantal varieties"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", rc.input, "Input JSON file");
    sub->add_option("--out", rc.out, "Write the JSON report here as well");
    sub->add_option("--seed", rc.seed, "Seed for all sampling");
  };

  auto* homog = app.add_subcommand("homog", "Lattice of homogeneisations of a polynomial");
  add_io(homog);

  auto* bound = app.add_subcommand("bound", "Upper bound 2m - s + t for a torus action");
  add_io(bound);
  bound->add_option("--xi", rc.xi, "JSON file with the weight matrix");
  bound->add_option("--n", rc.n, "Configuration space of n points instead of --input");
  bound->add_option("--space", rc.space, "F (ordered) or C (unordered)");

  auto* verify = app.add_subcommand("verify-hessian", "Sample Hessian signatures on V");
  add_io(verify);
  verify->add_option("--samples", rc.samples, "Number of sample points");
  verify->add_option("--null-tol", rc.null_tol, "Relative eigenvalue null tolerance");

  auto* disc = app.add_subcommand("discriminants", "Discriminants of a configuration or coefficient vector");
  add_io(disc);

  auto* plan_cmd = app.add_subcommand("plan", "Motion plan between two unordered configurations");
  add_io(plan_cmd);
  plan_cmd->add_option("--svg", rc.svg, "Write an SVG of the trails");
  plan_cmd->add_option("--grad-tol", rc.grad_tol, "Flow gradient tolerance");
  plan_cmd->add_option("--potential", rc.potential, "g or gprime");

  auto* catalog = app.add_subcommand("catalog", "Critical configurations of a potential");
  add_io(catalog);
  catalog->add_option("--n", rc.n, "Number of points")->required();
  catalog->add_option("--samples", rc.samples, "Number of descent seeds");
  catalog->add_option("--grad-tol", rc.grad_tol, "Certification gradient tolerance");
  catalog->add_option("--potential", rc.potential, "g or gprime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::parse);
  }

  try {
    if (*homog) cmd_homog(rc);
    else if (*bound) cmd_bound(rc);
    else if (*verify) cmd_verify_hessian(rc);
    else if (*disc) cmd_discriminants(rc);
    else if (*plan_cmd) cmd_plan(rc);
    else if (*catalog) cmd_catalog(rc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
