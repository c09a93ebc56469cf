#include "doctest.h"

#include <cmath>

#include "disctc/config_space.hpp"
#include "disctc/error.hpp"
#include "disctc/random.hpp"
#include "oracles.hpp"

using namespace disctc;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("configurations must be pairwise distinct") {
  CHECK_THROWS_AS(PlanarConfig({{1.0, 0.0}, {1.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(PlanarConfig({}), ValidationError);
  const PlanarConfig c({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 3.0}});
  CHECK(c.margin() == doctest::Approx(2.0));
  CHECK_FALSE(c.is_centred());
  CHECK(retract_barycentre(c, 1.0).is_centred());
  CHECK(std::abs(retract_barycentre(c, 0.0).barycentre() - c.barycentre()) < 1e-15);
}

TEST_CASE("coefficients follow the signed elementary convention") {
  std::mt19937_64 rng(41);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto w = oracle::random_centred(rng, n);
    const CoeffVector a = roots_to_coeffs(PlanarConfig(w));
    const auto e = oracle::elementary(w);
    for (std::size_t i = 2; i <= n; ++i) CHECK(std::abs(a.at(i) - e[i]) < 1e-12 * (1.0 + std::abs(e[i])));
    const auto mono = monic_coefficients(a);
    for (const auto& r : w) {
      Complex v{0.0, 0.0};
      for (const auto& c : mono) v = v * r + c;
      CHECK(std::abs(v) < 1e-10);
    }
  }
  CHECK_THROWS_AS(roots_to_coeffs(PlanarConfig({{1.0, 0.0}, {2.0, 0.0}})), ValidationError);
}

TEST_CASE("discriminant of w^2 + c is -4c") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 100; ++k) {
    const auto w = oracle::random_centred(rng, 2);
    const CoeffVector a = roots_to_coeffs(PlanarConfig(w));
    const Complex c = a.at(2);  // P(w) = w^2 + a_2
    CHECK(rel(disc_c(a), -4.0 * c) < 1e-9);
    CHECK(rel(disc_c_resultant(a), -4.0 * c) < 1e-9);
    CHECK(rel(disc_c_from_roots(PlanarConfig(w)), oracle::product_discriminant(w)) < 1e-12);
  }
}

TEST_CASE("discriminant of w^3 + p w + q is -4p^3 - 27q^2") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 100; ++k) {
    const auto w = oracle::random_centred(rng, 3);
    const CoeffVector a = roots_to_coeffs(PlanarConfig(w));
    const Complex p = a.at(2), q = -a.at(3);
    const Complex expect = -4.0 * p * p * p - 27.0 * q * q;
    CHECK(rel(oracle::product_discriminant(w), expect) < 1e-9);
    CHECK(rel(disc_c(a), expect) < 1e-9);
    CHECK(rel(disc_c_resultant(a), expect) < 1e-9);
  }
}

TEST_CASE("resultant route agrees with the root route") {
  std::mt19937_64 rng(44);
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int k = 0; k < 10; ++k) {
      const auto w = oracle::random_centred(rng, n);
      const CoeffVector a = roots_to_coeffs(PlanarConfig(w));
      CHECK(rel(disc_c_resultant(a), oracle::product_discriminant(w)) < 1e-8);
    }
  }
}

TEST_CASE("roots and coefficients round trip") {
  std::mt19937_64 rng(45);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int k = 0; k < 10; ++k) {
      const auto w = oracle::random_centred(rng, n);
      const PlanarConfig back = coeffs_to_roots(roots_to_coeffs(PlanarConfig(w)));
      CHECK(oracle::brute_matching(back.points(), w) < 1e-8);
    }
  }
}

TEST_CASE("multiple roots are reported") {
  // (w - 1)^2 (w + 2) = w^3 - 3w + 2: a_2 = -3, a_3 = -2
  CoeffVector a{{Complex{-3.0, 0.0}, Complex{-2.0, 0.0}}};
  CHECK_THROWS_AS(coeffs_to_roots(a), NumericError);
  CHECK(std::abs(disc_c_resultant(a)) < 1e-9);
}

TEST_CASE("scaling identity of the discriminant") {
  Rng rng(46);
  for (std::size_t n = 2; n <= 6; ++n) {
    const TorusAction action = disc_c_action(n, 7);
    CHECK(action.s() == 1);
    for (std::size_t j = 0; j < n - 1; ++j) CHECK(action.xi()[0][j] == static_cast<std::int64_t>(j + 2));
    CHECK(action.row_degrees()[0] == static_cast<std::int64_t>(n * (n - 1)));
    for (int k = 0; k < 5; ++k) {
      std::mt19937_64 r2(rng());
      const CoeffVector a = roots_to_coeffs(PlanarConfig(oracle::random_centred(r2, n)));
      const Complex theta = gaussian_complex(rng);
      CoeffVector scaled = a;
      for (std::size_t i = 2; i <= n; ++i) scaled.a[i - 2] *= std::pow(theta, static_cast<int>(i));
      const Complex expect = std::pow(theta, static_cast<int>(n * (n - 1))) * disc_c_resultant(a);
      CHECK(rel(disc_c_resultant(scaled), expect) < 1e-8);
    }
  }
}

TEST_CASE("ordered discriminant") {
  std::mt19937_64 rng(47);
  for (std::size_t n = 2; n <= kMaxDiscFExpansion; ++n) {
    const SparsePoly p = disc_f_poly(n);
    CHECK(p.dim() == n - 1);
    CHECK(p.total_degree() == static_cast<int>(n * (n - 1) / 2));
    for (int k = 0; k < 10; ++k) {
      const auto w = oracle::random_centred(rng, n);
      const std::vector<Complex> head(w.begin(), w.end() - 1);
      // with w_n = -(w_1 + ... + w_{n-1}) the product is the Vandermonde of w
      Complex vdm{1.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) vdm *= (w[i] - w[j]);
      CHECK(rel(disc_f(head), p.eval(head)) < 1e-10);
      CHECK(std::abs(std::abs(disc_f(head)) - std::abs(vdm)) < 1e-9 * std::abs(vdm));
    }
  }
  CHECK_THROWS_AS(disc_f_poly(kMaxDiscFExpansion + 1), ValidationError);
}

TEST_CASE("matching distances") {
  std::mt19937_64 rng(48);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int k = 0; k < 10; ++k) {
      const auto a = oracle::random_centred(rng, n);
      const auto b = oracle::random_centred(rng, n);
      const Matching m = matching_distance(a, b);
      CHECK(m.distance == doctest::Approx(oracle::brute_matching(a, b)).epsilon(1e-12));
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[m.perm[i]]));
      CHECK(worst == doctest::Approx(m.distance).epsilon(1e-12));
    }
  }
}

TEST_CASE("shape distance ignores rotation and labels") {
  std::mt19937_64 rng(49);
  const auto a = oracle::random_centred(rng, 4);
  const Complex rot = std::polar(1.0, 2.1);
  std::vector<Complex> b;
  for (auto it = a.rbegin(); it != a.rend(); ++it) b.push_back(rot * *it);
  const ShapeMatch s = shape_distance(a, b);
  CHECK(s.distance < 1e-12);
  CHECK(std::abs(s.rotation - rot) < 1e-12);
}

TEST_CASE("bounds for configuration spaces") {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (bool ordered : {true, false}) {
      const ConfigBound b = bound_for_config_spaces(n, ordered);
      CHECK(b.report.t == 0);
      CHECK(b.config_route_t == 0);
      CHECK(b.report.bound == static_cast<std::int64_t>(2 * n - 3));
      CHECK(b.report.m == n - 1);
      CHECK(b.report.s == 1);
    }
  }
  CHECK(config_rotation_stabiliser_dim(3, 10, 1) == 0);
}

TEST_CASE("achievable zero patterns of the unordered discriminant") {
  // n = 3: a_2 = 0 leaves -27 a_3^2, a_3 = 0 leaves -4 a_2^3, both zero is the triple root
  CHECK(disc_c_pattern_achievable(3, {true, false}));
  CHECK(disc_c_pattern_achievable(3, {false, true}));
  CHECK_FALSE(disc_c_pattern_achievable(3, {true, true}));
}
