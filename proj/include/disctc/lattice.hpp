#pragma once

#include <cstdint>
#include <optional>

#include "disctc/integer_matrix.hpp"
#include "disctc/poly.hpp"

namespace disctc {

/// The sub-Z-module of Z^m of degree assignments that make a polynomial
/// homogeneous, together with the induced degree of each basis vector.
struct HomogLattice {
  std::size_t dim = 0;
  /// Hermite-normal-form Z-basis; empty when the lattice is {0}.
  IntMatrix basis;
  /// degrees[k] is the homogeneous degree of the polynomial under basis[k].
  IntVector degrees;

  std::size_t rank() const noexcept { return basis.size(); }

  /// Coordinates of v in `basis`, if v is an integer combination of it.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
};

/// Degree N if sum_j i_j d_j is the same N for every multi-index i in the
/// support of `delta`.
std::optional<std::int64_t> is_homogeneisation(const SparsePoly& delta, const IntVector& d);

HomogLattice homog_lattice(const SparsePoly& delta);

}  // namespace disctc
