#include "disctc/integer_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <utility>

#include "disctc/error.hpp"

namespace disctc {

namespace {

std::int64_t narrow(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw NumericError("integer overflow in exact elimination");
  }
  return static_cast<std::int64_t>(x);
}

std::int64_t mul_sub(std::int64_t a, std::int64_t q, std::int64_t b) {
  return narrow(static_cast<__int128>(a) - static_cast<__int128>(q) * b);
}

// Floor division for the Hermite reduction step.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_shape(const IntMatrix& a, std::size_t cols) {
  for (const auto& row : a) {
    if (row.size() != cols) throw ValidationError("ragged integer matrix");
  }
}

}  // namespace

std::int64_t dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw ValidationError("dot product length mismatch");
  __int128 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<__int128>(a[i]) * b[i];
  return narrow(acc);
}

std::size_t rank_q(const IntMatrix& a, std::size_t cols) {
  check_shape(a, cols);
  IntMatrix m = a;
  const std::size_t rows = m.size();
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        const __int128 num = static_cast<__int128>(m[rank][c]) * m[r][k] -
                             static_cast<__int128>(m[r][c]) * m[rank][k];
        // Bareiss: the division by the previous pivot is exact.
        m[r][k] = narrow(num / prev);
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

IntMatrix hermite_rows(IntMatrix rows, std::size_t cols) {
  check_shape(rows, cols);
  std::size_t top = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    // Euclid on column c among rows top.. until a single nonzero remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][c] != 0 &&
            (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c]))) {
          best = r;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const std::int64_t q = rows[r][c] / rows[top][c];
        for (std::size_t k = c; k < cols; ++k) rows[r][k] = mul_sub(rows[r][k], q, rows[top][k]);
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t r = 0; r < top; ++r) {
      const std::int64_t q = floor_div(rows[r][c], rows[top][c]);
      if (q == 0) continue;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = mul_sub(rows[r][k], q, rows[top][k]);
    }
    pivot_cols.push_back(c);
    ++top;
  }
  rows.resize(top);
  return rows;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  check_shape(a, cols);
  // Column reduction A*U = [H | 0] with U unimodular; the trailing columns of U
  // span the integer kernel.
  IntMatrix m = a;
  IntMatrix u(cols, IntVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (auto& row : m) row[dst] = mul_sub(row[dst], q, row[src]);
    for (auto& row : u) row[dst] = mul_sub(row[dst], q, row[src]);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : m) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };

  std::size_t k = 0;
  for (std::size_t i = 0; i < m.size() && k < cols; ++i) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t c = k; c < cols; ++c) {
        if (m[i][c] != 0 && (best == cols || std::llabs(m[i][c]) < std::llabs(m[i][best]))) {
          best = c;
        }
      }
      if (best == cols) break;
      col_swap(k, best);
      bool done = true;
      for (std::size_t c = k + 1; c < cols; ++c) {
        if (m[i][c] == 0) continue;
        col_axpy(c, k, m[i][c] / m[i][k]);
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[i][k] != 0) ++k;
  }

  IntMatrix kernel;
  for (std::size_t c = k; c < cols; ++c) {
    IntVector v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][c];
    kernel.push_back(std::move(v));
  }
  return hermite_rows(std::move(kernel), cols);
}

std::optional<IntVector> hermite_coordinates(const IntMatrix& hnf, const IntVector& v) {
  IntVector rest = v;
  IntVector coeffs(hnf.size(), 0);
  for (std::size_t r = 0; r < hnf.size(); ++r) {
    if (hnf[r].size() != v.size()) throw ValidationError("coordinate vector length mismatch");
    std::size_t p = 0;
    while (p < hnf[r].size() && hnf[r][p] == 0) ++p;
    if (p == hnf[r].size()) continue;
    // Entries left of this pivot must already be cleared.
    for (std::size_t c = 0; c < p; ++c) {
      if (rest[c] != 0) return std::nullopt;
    }
    if (rest[p] % hnf[r][p] != 0) return std::nullopt;
    const std::int64_t q = rest[p] / hnf[r][p];
    for (std::size_t c = p; c < rest.size(); ++c) rest[c] = mul_sub(rest[c], q, hnf[r][c]);
    coeffs[r] = q;
  }
  if (std::any_of(rest.begin(), rest.end(), [](std::int64_t x) { return x != 0; })) {
    return std::nullopt;
  }
  return coeffs;
}

}  // namespace disctc
