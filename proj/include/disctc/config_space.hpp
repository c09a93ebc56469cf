#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disctc/poly.hpp"
#include "disctc/torus.hpp"

namespace disctc {

/// n pairwise distinct points of the plane. Unordered configurations are
/// multisets; use matching_distance to compare them.
class PlanarConfig {
public:
  PlanarConfig(std::vector<Complex> points, bool ordered = false);

  std::size_t n() const noexcept { return points_.size(); }
  bool ordered() const noexcept { return ordered_; }
  const std::vector<Complex>& points() const noexcept { return points_; }
  /// Smallest pairwise distance; positive by construction.
  double margin() const noexcept { return margin_; }
  double scale() const noexcept;
  Complex barycentre() const;
  bool is_centred() const;

  PlanarConfig rotated(Complex theta) const;
  /// Points sorted lexicographically by (Re, Im).
  PlanarConfig canonical() const;

private:
  std::vector<Complex> points_;
  bool ordered_;
  double margin_;
};

double min_pairwise_distance(std::span<const Complex> points);

/// Coefficients (a_2, ..., a_n): a_i is the i-th elementary symmetric function
/// of the roots, and P(w) = w^n + sum_{i>=2} (-1)^i a_i w^{n-i}.
struct CoeffVector {
  std::vector<Complex> a;

  std::size_t n() const noexcept { return a.size() + 1; }
  /// Coefficient a_i for 2 <= i <= n.
  Complex at(std::size_t i) const { return a.at(i - 2); }
};

/// Shifts every point by -t times the barycentre.
PlanarConfig retract_barycentre(const PlanarConfig& c, double t);

/// Throws ValidationError unless c is centred.
CoeffVector roots_to_coeffs(const PlanarConfig& c);

/// Monic coefficients of P, highest degree first (length n + 1).
std::vector<Complex> monic_coefficients(const CoeffVector& a);

/// Roots of P by Aberth-Ehrlich iteration with Newton polishing. Throws
/// NumericError when roots are numerically multiple or the residual check fails.
PlanarConfig coeffs_to_roots(const CoeffVector& a);

/// prod_{i<j} (w_i - w_j)^2.
Complex disc_c_from_roots(const PlanarConfig& c);
/// Discriminant of P through its roots.
Complex disc_c(const CoeffVector& a);
/// Discriminant of P as (-1)^{n(n-1)/2} Res(P, P'), by a Sylvester determinant.
Complex disc_c_resultant(const CoeffVector& a);

/// (prod_{i<j<n} (w_i - w_j)) * prod_i (w_i + w_1 + ... + w_{n-1}).
Complex disc_f(std::span<const Complex> w);
inline constexpr std::size_t kMaxDiscFExpansion = 6;
/// The same product expanded into a polynomial in n - 1 variables.
SparsePoly disc_f_poly(std::size_t n);

/// Bottleneck assignment: min over bijections of max |a_i - b_pi(i)|.
struct Matching {
  double distance;
  std::vector<std::size_t> perm;  // a[i] is matched with b[perm[i]]
};
Matching matching_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Matching distance after the best rotation of `a` for each assignment.
struct ShapeMatch {
  double distance;
  Complex rotation;  // unit number with rotation * a ~ b
  std::vector<std::size_t> perm;
};
ShapeMatch shape_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Action of T on the coefficient space of unordered centred configurations,
/// xi = (2, 3, ..., n), after checking the scaling identity
/// disc(theta^2 a_2, ..., theta^n a_n) = theta^{n(n-1)} disc(a) numerically.
TorusAction disc_c_action(std::size_t n, std::uint64_t seed = 0);

/// Numerical test that the discriminant is not identically zero on the
/// coordinate subspace {a_j = 0, j in S}.
bool disc_c_pattern_achievable(std::size_t n, const std::vector<bool>& zeroed);

/// Stabiliser dimension of the rotation action on centred configurations,
/// found directly on configurations: 0 if seeded random configurations are all
/// moved by a rotation of infinite order.
int config_rotation_stabiliser_dim(std::size_t n, std::size_t trials, std::uint64_t seed);

struct ConfigBound {
  std::size_t n = 0;
  bool ordered = false;
  BoundReport report;
  int config_route_t = 0;
};

/// Runs the torus-action pipeline for F_n (ordered) or C_n (unordered) and
/// returns 2n - 3. Throws NumericError if either stabiliser route disagrees
/// with t = 0.
ConfigBound bound_for_config_spaces(std::size_t n, bool ordered);

}  // namespace disctc
