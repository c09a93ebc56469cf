#include "doctest.h"

#include <cmath>
#include <string>

#include "disctc/config_space.hpp"
#include "disctc/error.hpp"
#include "disctc/planner.hpp"
#include "disctc/random.hpp"
#include "oracles.hpp"

using namespace disctc;

namespace {

std::vector<Complex> random_points(Rng& rng, std::size_t n) {
  std::vector<Complex> w(n);
  for (auto& x : w) x = gaussian_complex(rng);
  return w;
}

Eigen::VectorXd to_real(const std::vector<Complex>& w) {
  Eigen::VectorXd x(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    x[2 * i] = w[i].real();
    x[2 * i + 1] = w[i].imag();
  }
  return x;
}

std::vector<Complex> to_points(const Eigen::VectorXd& x) {
  std::vector<Complex> w(x.size() / 2);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = {x[2 * i], x[2 * i + 1]};
  return w;
}

bool equilateral(const std::vector<Complex>& w, double tol) {
  const double d = std::abs(w[0] - w[1]);
  return std::abs(std::abs(w[1] - w[2]) - d) < tol && std::abs(std::abs(w[0] - w[2]) - d) < tol;
}

bool collinear(const std::vector<Complex>& w, double tol) {
  for (std::size_t i = 2; i < w.size(); ++i) {
    const Complex u = (w[i] - w[0]) / (w[1] - w[0]);
    if (std::abs(u.imag()) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("g' on an antipodal pair") {
  const PlanarConfig c({{1.0, 0.0}, {-1.0, 0.0}});
  CHECK(potential_gprime(c) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(potential_gprime(c.rotated(std::polar(1.0, 0.7))) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(potential_gprime(PlanarConfig({{1.0, 0.0}, {2.0, 0.0}})), ValidationError);
  // d/dr (2 r^2 + 1/(2r)) = 0 at r = (1/8)^(1/3)
  const double r = std::cbrt(1.0 / 8.0);
  const PlanarConfig crit({{r, 0.0}, {-r, 0.0}});
  for (const auto& gk : grad_gprime(crit)) CHECK(std::abs(gk) < 1e-12);
}

TEST_CASE("exact gradients of both potentials agree with central differences") {
  Rng rng(51);
  for (auto kind : {PotentialKind::g, PotentialKind::gprime}) {
    for (std::size_t n = 2; n <= 5; ++n) {
      for (int k = 0; k < 10; ++k) {
        std::mt19937_64 r2(rng());
        const auto w = oracle::random_centred(r2, n);
        auto value = [&](const Eigen::VectorXd& x) { return config_potential(kind, to_points(x)); };
        Eigen::VectorXd fd = oracle::fd_gradient(value, to_real(w), 1e-6);
        // project onto the centred subspace
        for (int c = 0; c < 2; ++c) {
          double mean = 0.0;
          for (std::size_t i = 0; i < n; ++i) mean += fd[2 * i + c];
          mean /= static_cast<double>(n);
          for (std::size_t i = 0; i < n; ++i) fd[2 * i + c] -= mean;
        }
        CHECK(oracle::rel_error(to_real(config_gradient(kind, w)), fd) < 1e-5);
      }
    }
  }
}

TEST_CASE("potentials are rotation invariant") {
  Rng rng(52);
  for (auto kind : {PotentialKind::g, PotentialKind::gprime}) {
    for (int k = 0; k < 20; ++k) {
      std::mt19937_64 r2(rng());
      const auto w = oracle::random_centred(r2, 4);
      const Complex theta = unit_complex(rng);
      std::vector<Complex> rw;
      for (auto x : w) rw.push_back(theta * x);
      CHECK(config_potential(kind, rw) == doctest::Approx(config_potential(kind, w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("catalog for two points under g") {
  const CriticalCatalog cat = build_catalog(2, 16);
  REQUIRE(cat.entries.size() == 1);
  const auto& w = cat.entries[0].config.points();
  // along {r, -r}: g = r^4 + 1/(16 r^4)
  const double r = oracle::golden_min([](double r) { return std::pow(r, 4) + 1.0 / (16.0 * std::pow(r, 4)); }, 0.1, 3.0);
  CHECK(std::abs(w[0]) == doctest::Approx(r).epsilon(1e-6));
  CHECK(std::abs(w[0] + w[1]) < 1e-9);
  CHECK(cat.entries[0].index == 0);
  CHECK(cat.entries[0].grad_norm < cat.grad_tol);
}

TEST_CASE("catalog for three points under g' contains the central configurations") {
  CatalogOptions opts;
  opts.potential = PotentialKind::gprime;
  const CriticalCatalog cat = build_catalog(3, 32, opts);
  bool has_equilateral = false, has_collinear = false;
  for (const auto& e : cat.entries) {
    CHECK(config_gradient_norm(PotentialKind::gprime, e.config.points()) < cat.grad_tol);
    has_equilateral = has_equilateral || equilateral(e.config.points(), 1e-6);
    has_collinear = has_collinear || collinear(e.config.points(), 1e-6);
  }
  CHECK(has_equilateral);
  CHECK(has_collinear);
}

TEST_CASE("catalog entries are distinct shapes and recipes are collision free") {
  const CriticalCatalog cat = build_catalog(4, 64);
  REQUIRE(cat.entries.size() >= 2);
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < cat.entries.size(); ++j) {
      CHECK(shape_distance(cat.entries[i].config.points(), cat.entries[j].config.points()).distance > 1e-6);
    }
    for (std::size_t j = 0; j < cat.entries.size(); ++j) {
      if (i == j) continue;
      const auto* r = cat.recipe(i, j);
      REQUIRE(r != nullptr);
      for (const auto& wp : r->waypoints) CHECK(wp.margin() > 0.0);
    }
  }
  // duplicated seeds give the same catalog
  const CriticalCatalog again = build_catalog(4, 64);
  CHECK(again.entries.size() == cat.entries.size());
}

TEST_CASE("antipodal pair rotated by a quarter turn") {
  const PlanarConfig p({{1.0, 0.0}, {-1.0, 0.0}});
  const PlanarConfig q({{0.0, 1.0}, {0.0, -1.0}});
  const PathPolyline path = plan(p, q);
  CHECK(path.min_margin >= 1.0);
  CHECK(audit_path(path).min_margin >= 1.0);
  CHECK(matching_distance(path.samples.front().points(), p.points()).distance < 1e-6);
  CHECK(matching_distance(path.samples.back().points(), q.points()).distance < 1e-6);
  REQUIRE(path.leg("connect") != nullptr);
  CHECK(path.entry_p == path.entry_p_prime);
}

TEST_CASE("identical endpoints give a constant path") {
  const PlanarConfig p({{1.0, 0.0}, {-0.5, 0.5}, {-0.5, -0.5}});
  const PathPolyline path = plan(p, p);
  CHECK(path.min_margin == doctest::Approx(p.margin()));
  for (const auto& s : path.samples) CHECK(matching_distance(s.points(), p.points()).distance < 1e-12);
}

TEST_CASE("planner scope and input checks") {
  Rng rng(53);
  const PlanarConfig five(random_points(rng, 5));
  const PlanarConfig five_b(random_points(rng, 5));
  try {
    plan(five, five_b);
    FAIL("expected the catalog to be unavailable");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("catalog unavailable") != std::string::npos);
  }
  CHECK_THROWS_AS(plan(PlanarConfig(random_points(rng, 3)), PlanarConfig(random_points(rng, 4))), ValidationError);
  CHECK_THROWS_AS(build_catalog(5, 4), ValidationError);
}

TEST_CASE("an empty catalog is reported as a miss") {
  Rng rng(54);
  CriticalCatalog empty;
  empty.n = 3;
  CHECK_THROWS_AS(plan(PlanarConfig(random_points(rng, 3)), PlanarConfig(random_points(rng, 3)), PlanOptions{}, empty),
                  CatalogMiss);
}

TEST_CASE("flow non-convergence is reported") {
  Rng rng(55);
  PlanOptions opts;
  opts.flow.max_steps = 2;
  CHECK_THROWS_AS(plan(PlanarConfig(random_points(rng, 3)), PlanarConfig(random_points(rng, 3)), opts), NumericError);
}

TEST_CASE("random plans are collision free with matching endpoints") {
  Rng rng(56);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int k = 0; k < 10; ++k) {
      const PlanarConfig p(random_points(rng, n));
      const PlanarConfig q(random_points(rng, n));
      const PathPolyline path = plan(p, q);
      const PathAudit audit = audit_path(path);
      CHECK(audit.min_margin > 0.0);
      CHECK(audit.max_displacement <= 0.05 + 1e-12);
      CHECK(matching_distance(path.samples.front().points(), p.points()).distance < 1e-6);
      CHECK(matching_distance(path.samples.back().points(), q.points()).distance < 1e-6);
      CHECK(path.legs.size() == 5);
    }
  }
}

TEST_CASE("retraction and flow legs commute with rotations") {
  Rng rng(57);
  for (int k = 0; k < 5; ++k) {
    const PlanarConfig p(random_points(rng, 3));
    const PlanarConfig q(random_points(rng, 3));
    const Complex theta = unit_complex(rng);
    const PathPolyline a = plan(p, q);
    const PathPolyline b = plan(p.rotated(theta), q.rotated(theta));
    const PathLeg* fa = a.leg("flow_p");
    const PathLeg* fb = b.leg("flow_p");
    REQUIRE(fa != nullptr);
    REQUIRE(fb != nullptr);
    REQUIRE(fa->end == fb->end);
    for (std::size_t s = 0; s <= fa->end; ++s) {
      const auto& wa = a.samples[s].points();
      const auto& wb = b.samples[s].points();
      for (std::size_t i = 0; i < wa.size(); ++i) CHECK(std::abs(theta * wa[i] - wb[i]) < 1e-6);
    }
  }
}

TEST_CASE("shape hash is invariant under rotation and relabelling") {
  const PlanarConfig c({{1.0, 0.2}, {-0.3, 0.9}, {-0.7, -1.1}});
  const PlanarConfig r({std::polar(1.0, 1.3) * Complex{-0.7, -1.1}, std::polar(1.0, 1.3) * Complex{1.0, 0.2},
                        std::polar(1.0, 1.3) * Complex{-0.3, 0.9}});
  CHECK(shape_hash(c) == shape_hash(r));
  CHECK(render_svg(plan(c, r)).find("<svg") == 0);
}
