#include "disctc/lattice.hpp"

#include "disctc/error.hpp"

namespace disctc {

namespace {

IntVector widen(const MultiIndex& exp) { return IntVector(exp.begin(), exp.end()); }

}  // namespace

std::optional<IntVector> HomogLattice::coordinates(const IntVector& v) const {
  if (v.size() != dim) throw ValidationError("lattice vector length mismatch");
  return hermite_coordinates(basis, v);
}

std::optional<std::int64_t> is_homogeneisation(const SparsePoly& delta, const IntVector& d) {
  if (d.size() != delta.dim()) {
    throw ValidationError("degree vector has length " + std::to_string(d.size()) +
                          ", polynomial has dimension " + std::to_string(delta.dim()));
  }
  std::optional<std::int64_t> degree;
  for (const auto& [exp, c] : delta.terms()) {
    const std::int64_t n = dot(widen(exp), d);
    if (degree && *degree != n) return std::nullopt;
    degree = n;
  }
  // The zero polynomial is homogeneous of every degree; report 0.
  return degree.value_or(0);
}

HomogLattice homog_lattice(const SparsePoly& delta) {
  if (delta.is_zero()) throw ValidationError("homogeneisations of the zero polynomial are undefined");
  const auto support = delta.support();
  // support is sorted, so support.front() is the lexicographically smallest exponent
  const IntVector ref = widen(support.front());
  IntMatrix diffs;
  for (std::size_t k = 1; k < support.size(); ++k) {
    IntVector row = widen(support[k]);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= ref[j];
    diffs.push_back(std::move(row));
  }
  HomogLattice out;
  out.dim = delta.dim();
  out.basis = integer_kernel(diffs, delta.dim());
  for (const auto& b : out.basis) out.degrees.push_back(dot(ref, b));
  return out;
}

}  // namespace disctc
