#pragma once

// Reference computations used by the tests. They are deliberately naive and
// share no code with the library beyond its public value types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

// Exact rational with __int128 numerator and denominator, always reduced.
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  Rational() = default;
  Rational(__int128 n, __int128 d = 1) : num(n), den(d) { normalise(); }

  static __int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void normalise() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(const Rational& a, const Rational& b) { return {a.num * b.den, a.den * b.num}; }
};

// Solves sum_k c_k basis[k] = v over Q by Gauss-Jordan elimination on the
// transposed system. Returns nullopt when v is outside the rational span.
inline std::optional<std::vector<Rational>> rational_coordinates(
    const std::vector<std::vector<std::int64_t>>& basis, const std::vector<std::int64_t>& v) {
  const std::size_t rows = v.size();
  const std::size_t cols = basis.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) a[i][k] = Rational(basis[k][i]);
    a[i][cols] = Rational(v[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational lead = a[r][c];
    for (auto& x : a[r]) x = x / lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k <= cols; ++k) a[i][k] = a[i][k] - f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!a[i][cols].is_zero()) return std::nullopt;
  }
  std::vector<Rational> c(cols);
  for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = a[i][cols];
  return c;
}

// Rank of an integer matrix through a floating-point SVD; adequate for the
// small entries used in tests.
inline std::size_t numeric_rank(const std::vector<std::vector<std::int64_t>>& a, std::size_t cols) {
  if (a.empty() || cols == 0) return 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(a[i][j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-9 * std::max(1.0, s[0])) ++rank;
  return rank;
}

// prod_{i<j} (w_i - w_j)^2
inline Complex product_discriminant(const std::vector<Complex>& w) {
  Complex d{1.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) d *= (w[i] - w[j]) * (w[i] - w[j]);
  return d;
}

// Elementary symmetric functions e_0..e_n by expanding prod (1 + w_i t).
inline std::vector<Complex> elementary(const std::vector<Complex>& w) {
  std::vector<Complex> e(w.size() + 1, Complex{0.0, 0.0});
  e[0] = 1.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += w[i] * e[k - 1];
  return e;
}

// Bottleneck matching distance by trying every permutation.
inline double brute_matching(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Central-difference gradient of a scalar function on R^d.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

// Central-difference Jacobian of a vector function on R^d.
inline Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd j(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x, b = x;
    a[i] += h;
    b[i] -= h;
    j.col(i) = (f(a) - f(b)) / (2.0 * h);
  }
  return j;
}

// max |a - b| / max(1, max |b|), the relative error used for derivative checks.
inline double rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// Golden-section minimisation of a unimodal function on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (f(c) < f(d)) b = d;
    else a = c;
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

inline std::vector<Complex> random_centred(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<Complex> w(n);
  Complex mean{0.0, 0.0};
  for (auto& x : w) {
    const double re = nd(rng);
    const double im = nd(rng);
    x = {re, im};
    mean += x;
  }
  mean /= static_cast<double>(n);
  for (auto& x : w) x -= mean;
  return w;
}

}  // namespace oracle
