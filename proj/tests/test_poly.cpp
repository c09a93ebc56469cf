#include "doctest.h"

#include <random>

#include "disctc/error.hpp"
#include "disctc/poly.hpp"
#include "disctc/random.hpp"

using namespace disctc;

namespace {

SparsePoly cone() {
  // z1^2 - z2 z3
  return SparsePoly(3, {{{2, 0, 0}, 1.0}, {{0, 1, 1}, -1.0}});
}

SparsePoly random_poly(Rng& rng, std::size_t dim, int max_exp, std::size_t terms) {
  std::uniform_int_distribution<int> e(0, max_exp);
  SparsePoly::TermMap map;
  for (std::size_t t = 0; t < terms; ++t) {
    MultiIndex idx(dim);
    for (auto& x : idx) x = e(rng);
    map[idx] += gaussian_complex(rng);
  }
  return SparsePoly(dim, map);
}

}  // namespace

TEST_CASE("evaluation matches the written formula") {
  Rng rng(1);
  const SparsePoly p = cone();
  for (int k = 0; k < 50; ++k) {
    std::vector<Complex> z{gaussian_complex(rng), gaussian_complex(rng), gaussian_complex(rng)};
    const Complex expect = z[0] * z[0] - z[1] * z[2];
    CHECK(std::abs(p.eval(z) - expect) <= 1e-14 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("zero coefficients are not stored") {
  SparsePoly p(2, {{{1, 0}, 0.0}, {{0, 1}, 2.0}});
  CHECK(p.size() == 1);
  CHECK((p - p).is_zero());
  CHECK((p * Complex{0.0, 0.0}).is_zero());
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(SparsePoly(0), ValidationError);
  CHECK_THROWS_AS(SparsePoly(2, {{{1, 0, 0}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(SparsePoly(2, {{{-1, 0}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(SparsePoly::variable(2, 2), ValidationError);
  const SparsePoly p = cone();
  std::vector<Complex> short_point{1.0, 2.0};
  CHECK_THROWS_AS(p.eval(short_point), ValidationError);
}

TEST_CASE("degrees and support") {
  const SparsePoly p = cone();
  CHECK(p.total_degree() == 2);
  CHECK(p.max_exponent(0) == 2);
  CHECK(p.max_exponent(1) == 1);
  const auto s = p.support();
  REQUIRE(s.size() == 2);
  CHECK(s[0] == MultiIndex{0, 1, 1});
  CHECK(s[1] == MultiIndex{2, 0, 0});
  CHECK(SparsePoly(2).total_degree() == 0);
}

TEST_CASE("partial derivatives agree with complex central differences") {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const SparsePoly p = random_poly(rng, 3, 4, 6);
    std::vector<Complex> z{gaussian_complex(rng, 0.7), gaussian_complex(rng, 0.7), gaussian_complex(rng, 0.7)};
    for (std::size_t j = 0; j < 3; ++j) {
      const double h = 1e-5;
      auto zp = z, zm = z;
      zp[j] += h;
      zm[j] -= h;
      const Complex fd = (p.eval(zp) - p.eval(zm)) / (2.0 * h);
      const Complex exact = p.partial(j).eval(z);
      CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("products evaluate to products of values") {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const SparsePoly a = random_poly(rng, 2, 3, 4);
    const SparsePoly b = random_poly(rng, 2, 3, 4);
    std::vector<Complex> z{gaussian_complex(rng), gaussian_complex(rng)};
    const Complex expect = a.eval(z) * b.eval(z);
    CHECK(std::abs((a * b).eval(z) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    CHECK(std::abs((a + b).eval(z) - (a.eval(z) + b.eval(z))) <= 1e-12 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("restriction to a coordinate subspace") {
  const SparsePoly p = cone();
  const SparsePoly r = p.restrict_to_zero({true, false, false});
  CHECK(r == SparsePoly(3, {{{0, 1, 1}, -1.0}}));
  CHECK(p.restrict_to_zero({false, true, false}) == SparsePoly(3, {{{2, 0, 0}, 1.0}}));
  CHECK(p.restrict_to_zero({true, true, false}).is_zero());
}

TEST_CASE("integer coefficients are exact") {
  // (z1 + z2)^5 has binomial coefficients
  SparsePoly s = SparsePoly::variable(2, 0) + SparsePoly::variable(2, 1);
  SparsePoly p = SparsePoly::constant(2, 1.0);
  for (int k = 0; k < 5; ++k) p = p * s;
  const int binom[] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k <= 5; ++k) {
    const auto it = p.terms().find(MultiIndex{5 - k, k});
    REQUIRE(it != p.terms().end());
    CHECK(it->second == Complex(binom[k], 0.0));
  }
}
