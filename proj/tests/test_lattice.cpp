#include "doctest.h"

#include <random>

#include "disctc/error.hpp"
#include "disctc/lattice.hpp"
#include "oracles.hpp"

using namespace disctc;

namespace {

SparsePoly poly(std::size_t dim, const std::vector<MultiIndex>& support) {
  SparsePoly::TermMap terms;
  double c = 1.0;
  for (const auto& e : support) terms[e] = c++;
  return SparsePoly(dim, terms);
}

// Degree N if every monomial has the same weighted degree under d.
std::optional<std::int64_t> weighted_degree(const std::vector<MultiIndex>& support, const IntVector& d) {
  std::optional<std::int64_t> n;
  for (const auto& e : support) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += e[j] * d[j];
    if (n && *n != s) return std::nullopt;
    n = s;
  }
  return n;
}

}  // namespace

TEST_CASE("cone z1^2 - z2 z3") {
  const SparsePoly p = poly(3, {{2, 0, 0}, {0, 1, 1}});
  const HomogLattice l = homog_lattice(p);
  CHECK(l.rank() == 2);
  CHECK(l.contains({1, 1, 1}));
  CHECK(l.contains({2, 4, 0}));
  CHECK(is_homogeneisation(p, {1, 1, 1}) == 2);
  CHECK(is_homogeneisation(p, {2, 4, 0}) == 4);
  CHECK_FALSE(is_homogeneisation(p, {1, 0, 0}).has_value());
  CHECK_FALSE(l.contains({1, 0, 0}));
  for (std::size_t k = 0; k < l.rank(); ++k) CHECK(is_homogeneisation(p, l.basis[k]) == l.degrees[k]);
}

TEST_CASE("polynomial with only the zero homogeneisation") {
  const SparsePoly p = poly(2, {{1, 0}, {2, 0}, {0, 2}, {0, 3}});
  const HomogLattice l = homog_lattice(p);
  CHECK(l.rank() == 0);
  CHECK(l.contains({0, 0}));
  CHECK_FALSE(l.contains({1, 1}));
}

TEST_CASE("monomials admit every degree vector") {
  const HomogLattice l = homog_lattice(poly(3, {{1, 2, 0}}));
  CHECK(l.rank() == 3);
  CHECK(l.contains({5, -3, 7}));
}

TEST_CASE("zero polynomial is rejected") {
  CHECK_THROWS_AS(homog_lattice(SparsePoly(2)), ValidationError);
}

TEST_CASE("lattice equals the brute-force solution set in a box") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> e(0, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 3;
    std::vector<MultiIndex> support;
    const std::size_t terms = 2 + rng() % 3;
    for (std::size_t t = 0; t < terms; ++t) support.push_back({e(rng), e(rng), e(rng)});
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const SparsePoly p = poly(dim, support);
    const HomogLattice l = homog_lattice(p);
    for (std::size_t k = 0; k < l.rank(); ++k) CHECK(weighted_degree(support, l.basis[k]) == l.degrees[k]);
    const int box = 10;
    std::size_t solutions = 0;
    for (int x = -box; x <= box; ++x)
      for (int y = -box; y <= box; ++y)
        for (int z = -box; z <= box; ++z) {
          const IntVector d{x, y, z};
          const bool solves = weighted_degree(support, d).has_value();
          if (solves) {
            ++solutions;
            const auto c = oracle::rational_coordinates(l.basis, d);
            REQUIRE(c.has_value());
            for (const auto& ck : *c) CHECK(ck.is_integer());
          }
          CHECK(l.contains(d) == solves);
        }
    CHECK(solutions >= 1);
  }
}
