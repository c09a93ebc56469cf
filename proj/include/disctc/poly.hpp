#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace disctc {

using Complex = std::complex<double>;

/// Exponent vector (i_1,...,i_m) of a monomial; all entries nonnegative.
using MultiIndex = std::vector<int>;

/// Sparse multivariate polynomial with complex coefficients.
///
/// Terms are kept in lexicographic order of their multi-indices and zero
/// coefficients are never stored, so two polynomials are equal iff their
/// term maps are equal. Coordinates are 0-based in this API.
class SparsePoly {
public:
  using TermMap = std::map<MultiIndex, Complex>;

  /// The zero polynomial in `dim` variables.
  explicit SparsePoly(std::size_t dim);
  SparsePoly(std::size_t dim, TermMap terms);

  static SparsePoly constant(std::size_t dim, Complex c);
  /// The coordinate function z_j.
  static SparsePoly variable(std::size_t dim, std::size_t j);

  std::size_t dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;
  int max_exponent(std::size_t j) const;

  /// Support I as a sorted list of multi-indices.
  std::vector<MultiIndex> support() const;

  /// Evaluates the polynomial in sorted term order with Neumaier summation.
  Complex eval(std::span<const Complex> z) const;

  /// Holomorphic partial derivative with respect to z_j.
  SparsePoly partial(std::size_t j) const;

  /// Substitutes z_j = 0 for every j with `zeroed[j]` set.
  SparsePoly restrict_to_zero(const std::vector<bool>& zeroed) const;

  SparsePoly& operator+=(const SparsePoly& other);
  SparsePoly& operator-=(const SparsePoly& other);
  SparsePoly& operator*=(Complex c);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, Complex c) { return a *= c; }
  friend SparsePoly operator*(Complex c, SparsePoly a) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

private:
  void check_index(const MultiIndex& exp) const;
  void add_term(const MultiIndex& exp, Complex c);

  std::size_t dim_;
  TermMap terms_;
};

}  // namespace disctc
