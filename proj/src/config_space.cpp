#include "disctc/config_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "disctc/error.hpp"
#include "disctc/random.hpp"

namespace disctc {

double min_pairwise_distance(std::span<const Complex> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, std::abs(points[i] - points[j]));
    }
  }
  return best;
}

PlanarConfig::PlanarConfig(std::vector<Complex> points, bool ordered)
    : points_(std::move(points)), ordered_(ordered) {
  if (points_.empty()) throw ValidationError("a configuration needs at least one point");
  for (const auto& w : points_) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw ValidationError("configuration has a non-finite point");
    }
  }
  margin_ = min_pairwise_distance(points_);
  if (!(margin_ > 0.0)) throw ValidationError("configuration points are not pairwise distinct");
}

double PlanarConfig::scale() const noexcept {
  double s = 0.0;
  for (const auto& w : points_) s = std::max(s, std::abs(w));
  return s;
}

Complex PlanarConfig::barycentre() const {
  Complex sum{0.0, 0.0};
  for (const auto& w : points_) sum += w;
  return sum / static_cast<double>(points_.size());
}

bool PlanarConfig::is_centred() const {
  Complex sum{0.0, 0.0};
  for (const auto& w : points_) sum += w;
  return std::abs(sum) < 1e-12 * std::max(1.0, scale());
}

PlanarConfig PlanarConfig::rotated(Complex theta) const {
  std::vector<Complex> out(points_);
  for (auto& w : out) w *= theta;
  return PlanarConfig(std::move(out), ordered_);
}

PlanarConfig PlanarConfig::canonical() const {
  std::vector<Complex> out(points_);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return PlanarConfig(std::move(out), ordered_);
}

PlanarConfig retract_barycentre(const PlanarConfig& c, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("retraction time must lie in [0, 1]");
  const Complex shift = t * c.barycentre();
  std::vector<Complex> out(c.points());
  for (auto& w : out) w -= shift;
  return PlanarConfig(std::move(out), c.ordered());
}

CoeffVector roots_to_coeffs(const PlanarConfig& c) {
  if (!c.is_centred()) throw ValidationError("coefficient coordinates need a centred configuration");
  const std::size_t n = c.n();
  std::vector<Complex> e(n + 1, Complex{0.0, 0.0});
  e[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k + 1; i >= 1; --i) e[i] += c.points()[k] * e[i - 1];
  }
  CoeffVector out;
  out.a.assign(e.begin() + 2, e.end());
  return out;
}

std::vector<Complex> monic_coefficients(const CoeffVector& a) {
  const std::size_t n = a.n();
  std::vector<Complex> p(n + 1, Complex{0.0, 0.0});
  p[0] = 1.0;
  for (std::size_t i = 2; i <= n; ++i) p[i] = (i % 2 == 0 ? 1.0 : -1.0) * a.at(i);
  return p;
}

namespace {

constexpr double kRootClusterFactor = 1e3;

// Horner evaluation of P and P' at z; also the magnitude sum |c_k||z|^k.
struct HornerValue {
  Complex p;
  Complex dp;
  double magnitude;
};

HornerValue horner(const std::vector<Complex>& c, Complex z) {
  Complex p = c[0];
  Complex dp{0.0, 0.0};
  double mag = std::abs(c[0]);
  const double az = std::abs(z);
  for (std::size_t k = 1; k < c.size(); ++k) {
    dp = dp * z + p;
    p = p * z + c[k];
    mag = mag * az + std::abs(c[k]);
  }
  return {p, dp, mag};
}

}  // namespace

PlanarConfig coeffs_to_roots(const CoeffVector& a) {
  const std::size_t n = a.n();
  if (n < 2) throw ValidationError("coefficient vector needs n >= 2");
  const auto c = monic_coefficients(a);

  double radius = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / static_cast<double>(k)));
  }
  if (radius == 0.0) throw NumericError("numerically multiple roots: P(w) = w^n");

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n + 0.4;
    z[k] = std::polar(radius, angle);
  }
  // Aberth-Ehrlich, Gauss-Seidel updates.
  for (int it = 0; it < 2000; ++it) {
    double max_corr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto h = horner(c, z[k]);
      if (h.p == Complex{0.0, 0.0}) continue;
      const Complex ratio = h.p / h.dp;
      Complex s{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      const Complex w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      max_corr = std::max(max_corr, std::abs(w));
    }
    if (max_corr <= 1e-16 * radius) break;
  }
  for (auto& zk : z) {
    for (int it = 0; it < 3; ++it) {
      const auto h = horner(c, zk);
      if (h.dp == Complex{0.0, 0.0}) break;
      const Complex step = h.p / h.dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      zk -= step;
    }
  }
  for (const auto& zk : z) {
    const auto h = horner(c, zk);
    if (!(std::abs(h.p) <= 1e-9 * h.magnitude)) {
      throw NumericError("root residual check failed");
    }
  }
  // A root is numerically multiple when a neighbour lies inside its
  // perturbation radius under coefficient rounding, eps * sum |c_k||z|^k / |P'(z)|.
  for (std::size_t k = 0; k < n; ++k) {
    const auto h = horner(c, z[k]);
    const double spread = kRootClusterFactor * std::numeric_limits<double>::epsilon() * h.magnitude / std::abs(h.dp);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k && !(std::abs(z[k] - z[j]) > spread)) {
        throw NumericError("numerically multiple roots: roots " + std::to_string(k + 1) + " and " +
                           std::to_string(j + 1) + " are within rounding of each other");
      }
    }
  }
  // The roots sum to -c[1] = 0 up to rounding; remove the residue.
  Complex mean{0.0, 0.0};
  for (const auto& zk : z) mean += zk;
  mean /= static_cast<double>(n);
  for (auto& zk : z) zk -= mean;
  return PlanarConfig(std::move(z), false);
}

Complex disc_c_from_roots(const PlanarConfig& c) {
  Complex prod{1.0, 0.0};
  const auto& w = c.points();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const Complex d = w[i] - w[j];
      prod *= d * d;
    }
  }
  return prod;
}

Complex disc_c(const CoeffVector& a) { return disc_c_from_roots(coeffs_to_roots(a)); }

namespace {

Eigen::MatrixXcd sylvester(const CoeffVector& a) {
  const std::size_t n = a.n();
  const auto p = monic_coefficients(a);
  std::vector<Complex> dp(n);
  for (std::size_t k = 0; k < n; ++k) dp[k] = p[k] * static_cast<double>(n - k);
  const auto size = static_cast<Eigen::Index>(2 * n - 1);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s(r, r + k) = p[k];
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) s(n - 1 + r, r + k) = dp[k];
  }
  return s;
}

}  // namespace

Complex disc_c_resultant(const CoeffVector& a) {
  const std::size_t n = a.n();
  if (n < 2) throw ValidationError("discriminant needs n >= 2");
  const Complex res = sylvester(a).partialPivLu().determinant();
  return ((n * (n - 1) / 2) % 2 == 0) ? res : -res;
}

Complex disc_f(std::span<const Complex> w) {
  if (w.empty()) throw ValidationError("disc_f needs n >= 2");
  Complex sum{0.0, 0.0};
  for (const auto& x : w) sum += x;
  Complex prod{1.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) prod *= w[i] - w[j];
  }
  for (const auto& x : w) prod *= x + sum;
  return prod;
}

SparsePoly disc_f_poly(std::size_t n) {
  if (n < 2) throw ValidationError("disc_f_poly needs n >= 2");
  if (n > kMaxDiscFExpansion) {
    throw ValidationError("symbolic expansion is capped at n = " +
                          std::to_string(kMaxDiscFExpansion));
  }
  const std::size_t m = n - 1;
  std::vector<SparsePoly> z;
  SparsePoly sum(m);
  for (std::size_t j = 0; j < m; ++j) {
    z.push_back(SparsePoly::variable(m, j));
    sum += z.back();
  }
  SparsePoly prod = SparsePoly::constant(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) prod = prod * (z[i] - z[j]);
  }
  for (std::size_t i = 0; i < m; ++i) prod = prod * (z[i] + sum);
  return prod;
}

namespace {

void check_same_size(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ValidationError("configurations have different sizes");
}

void bottleneck_search(std::span<const Complex> a, std::span<const Complex> b, std::size_t i,
                       double current, std::vector<std::size_t>& perm, std::vector<bool>& used,
                       Matching& best) {
  if (current >= best.distance) return;
  if (i == a.size()) {
    best.distance = current;
    best.perm = perm;
    return;
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    const double d = std::max(current, std::abs(a[i] - b[j]));
    if (d >= best.distance) continue;
    used[j] = true;
    perm[i] = j;
    bottleneck_search(a, b, i + 1, d, perm, used, best);
    used[j] = false;
  }
}

}  // namespace

Matching matching_distance(std::span<const Complex> a, std::span<const Complex> b) {
  check_same_size(a, b);
  Matching best{std::numeric_limits<double>::infinity(), {}};
  // Seed the bound with the greedy assignment so pruning starts early.
  {
    std::vector<bool> used(b.size(), false);
    std::vector<std::size_t> perm(a.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::size_t pick = b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used[j] && (pick == b.size() || std::abs(a[i] - b[j]) < std::abs(a[i] - b[pick]))) {
          pick = j;
        }
      }
      used[pick] = true;
      perm[i] = pick;
      worst = std::max(worst, std::abs(a[i] - b[pick]));
    }
    best = {std::nextafter(worst, std::numeric_limits<double>::infinity()), perm};
  }
  std::vector<std::size_t> perm(a.size());
  std::vector<bool> used(b.size(), false);
  bottleneck_search(a, b, 0, 0.0, perm, used, best);
  best.distance = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best.distance = std::max(best.distance, std::abs(a[i] - b[best.perm[i]]));
  }
  return best;
}

ShapeMatch shape_distance(std::span<const Complex> a, std::span<const Complex> b) {
  check_same_size(a, b);
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  ShapeMatch best{std::numeric_limits<double>::infinity(), Complex{1.0, 0.0}, perm};
  do {
    Complex corr{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) corr += std::conj(a[i]) * b[perm[i]];
    const Complex rot = std::abs(corr) > 0.0 ? corr / std::abs(corr) : Complex{1.0, 0.0};
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(rot * a[i] - b[perm[i]]));
    if (d < best.distance) best = {d, rot, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TorusAction disc_c_action(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ValidationError("the rotation action needs n >= 2");
  const std::size_t m = n - 1;
  IntVector row(m);
  for (std::size_t j = 0; j < m; ++j) row[j] = static_cast<std::int64_t>(j + 2);
  const auto degree = static_cast<std::int64_t>(n * (n - 1));
  Rng rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    CoeffVector a;
    for (std::size_t j = 0; j < m; ++j) a.a.push_back(gaussian_complex(rng));
    const Complex theta = unit_complex(rng);
    CoeffVector scaled = a;
    for (std::size_t j = 0; j < m; ++j) scaled.a[j] *= std::pow(theta, static_cast<int>(j + 2));
    const Complex base = disc_c_resultant(a);
    const Complex lhs = disc_c_resultant(scaled);
    const Complex rhs = std::pow(theta, static_cast<int>(degree)) * base;
    if (!(std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(base), 1e-300))) {
      throw ValidationError("scaling identity fails for xi = (2, ..., n)");
    }
  }
  return TorusAction::assume_valid(m, {row}, {degree});
}

bool disc_c_pattern_achievable(std::size_t n, const std::vector<bool>& zeroed) {
  if (zeroed.size() + 1 != n) throw ValidationError("pattern length must be n - 1");
  std::uint64_t key = 0x9e3779b97f4a7c15ull;
  for (std::size_t j = 0; j < zeroed.size(); ++j) key = key * 31 + (zeroed[j] ? 2 : 1);
  Rng rng(key);
  for (int trial = 0; trial < 3; ++trial) {
    CoeffVector a;
    for (bool z : zeroed) a.a.push_back(z ? Complex{0.0, 0.0} : gaussian_complex(rng));
    const Eigen::MatrixXcd s = sylvester(a);
    double hadamard = 1.0;
    for (Eigen::Index r = 0; r < s.rows(); ++r) hadamard *= s.row(r).norm();
    if (std::abs(s.partialPivLu().determinant()) > 1e-8 * hadamard) return true;
  }
  return false;
}

int config_rotation_stabiliser_dim(std::size_t n, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  // one radian: not a rational multiple of pi, so it fixes no nonzero multiset
  const Complex theta = std::polar(1.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Complex> w(n);
    for (auto& x : w) x = gaussian_complex(rng);
    const auto c = retract_barycentre(PlanarConfig(w), 1.0);
    const auto moved = c.rotated(theta);
    if (matching_distance(c.points(), moved.points()).distance <= 1e-9 * c.scale()) return 1;
  }
  return 0;
}

ConfigBound bound_for_config_spaces(std::size_t n, bool ordered) {
  if (n < 2) throw ValidationError("configuration space bounds need n >= 2");
  ConfigBound out;
  out.n = n;
  out.ordered = ordered;
  if (ordered) {
    const auto delta = disc_f_poly(n);
    const auto action = validate_action(delta, {IntVector(n - 1, 1)});
    out.report = tc_upper_bound(delta, action);
  } else {
    const auto action = disc_c_action(n);
    out.report = tc_upper_bound(action, [n](const std::vector<bool>& zeroed) {
      return disc_c_pattern_achievable(n, zeroed);
    });
  }
  out.config_route_t = config_rotation_stabiliser_dim(n, 16, 0);
  if (out.report.t != 0 || out.config_route_t != 0) {
    throw NumericError("stabiliser routes disagree: pattern route t = " +
                       std::to_string(out.report.t) + ", configuration route t = " +
                       std::to_string(out.config_route_t));
  }
  const auto expected = 2 * static_cast<std::int64_t>(n) - 3;
  if (out.report.bound != expected) {
    throw NumericError("pipeline bound " + std::to_string(out.report.bound) + " differs from 2n - 3");
  }
  return out;
}

}  // namespace disctc
