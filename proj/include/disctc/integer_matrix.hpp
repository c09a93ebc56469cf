#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace disctc {

using IntVector = std::vector<std::int64_t>;
/// Dense row-major integer matrix; every row has the same length.
using IntMatrix = std::vector<IntVector>;

/// Rank over Q by fraction-free (Bareiss) elimination. Throws NumericError on
/// int64 overflow.
std::size_t rank_q(const IntMatrix& a, std::size_t cols);

/// Z-basis of {x in Z^cols : a x = 0}, returned as rows in Hermite normal form
/// (echelon, positive pivots, entries above each pivot reduced into [0, pivot)).
IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols);

/// Hermite normal form of the row lattice of `rows`; zero rows are dropped.
IntMatrix hermite_rows(IntMatrix rows, std::size_t cols);

/// Integer coefficients c with sum_k c_k * hnf[k] == v, if they exist.
/// `hnf` must be in the form produced by hermite_rows.
std::optional<IntVector> hermite_coordinates(const IntMatrix& hnf, const IntVector& v);

std::int64_t dot(const IntVector& a, const IntVector& b);

}  // namespace disctc
