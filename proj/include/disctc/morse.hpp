#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "disctc/flow.hpp"
#include "disctc/poly.hpp"

namespace disctc {

/// Point of R^{2m} in coordinates (x_1, y_1, ..., x_m, y_m), identified with
/// (z_1, ..., z_m) in C^m.
class RealPoint {
public:
  explicit RealPoint(Eigen::VectorXd coords);
  static RealPoint from_complex(std::span<const Complex> z);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(coords_.size() / 2); }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  std::vector<Complex> to_complex() const;

private:
  Eigen::VectorXd coords_;
};

using PointPair = std::pair<RealPoint, RealPoint>;

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t null = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Value and holomorphic first and second partials of a function eta at a point.
struct EtaJet {
  Complex value;
  std::vector<Complex> d1;
  std::vector<std::vector<Complex>> d2;
};

/// Real Hessian of |eta|^2 split into the positive semidefinite part coming
/// from d1 * conj(d1) and the indefinite part coming from conj(eta) * d2.
struct Abs2HessianParts {
  Eigen::MatrixXd semidefinite;
  Eigen::MatrixXd indefinite;
};

Abs2HessianParts hessian_abs2_parts(const EtaJet& jet);
Eigen::MatrixXd hessian_abs2(const EtaJet& jet);

inline constexpr double kDefaultNullTol = 1e-9;

/// Eigenvalue sign counts of (M + M^T)/2. An eigenvalue is null when its
/// magnitude is at most null_tol times the largest magnitude (relative) or
/// null_tol itself (absolute).
Inertia inertia(const Eigen::MatrixXd& m, double null_tol = kDefaultNullTol,
                bool relative = true);

/// The proper invariant potential g(z) = sum |z_j|^2 + 1/|delta(z)|^2 on the
/// complement V of the zero locus, with its derivatives.
class GPotential {
public:
  explicit GPotential(SparsePoly delta);

  const SparsePoly& delta() const noexcept { return delta_; }
  std::size_t dim() const noexcept { return delta_.dim(); }

  /// delta at z; throws ValidationError if z is on the zero locus.
  Complex delta_in_v(std::span<const Complex> z) const;
  bool in_v(const RealPoint& p) const;

  double value(const RealPoint& p) const;
  Eigen::VectorXd gradient(const RealPoint& p) const;
  /// Jet of eta = 1/delta.
  EtaJet inverse_jet(const RealPoint& p) const;
  Eigen::MatrixXd hessian_inverse_abs2(const RealPoint& p) const;
  Eigen::MatrixXd hessian(const RealPoint& p) const;

private:
  SparsePoly delta_;
  std::vector<SparsePoly> d1_;
  std::vector<std::vector<SparsePoly>> d2_;
};

double potential_g(const SparsePoly& delta, const RealPoint& p);
Eigen::VectorXd grad_g(const SparsePoly& delta, const RealPoint& p);
Eigen::MatrixXd hessian_g(const SparsePoly& delta, const RealPoint& p);

/// f(p, p') = g(p) + g(p') and its derivatives; the Hessian is block diagonal.
double pair_potential(const GPotential& g, const PointPair& pp);
Eigen::VectorXd pair_grad(const GPotential& g, const PointPair& pp);
Eigen::MatrixXd pair_hessian(const GPotential& g, const PointPair& pp);

struct FlowSample {
  PointPair point;
  double value;
  double grad_norm;
};

struct FlowTrace {
  std::vector<FlowSample> samples;
  bool converged = false;

  const PointPair& terminal() const { return samples.back().point; }
};

/// Fraction of |delta| a single flow step is allowed to lose at either component.
inline constexpr double kDeltaGuard = 0.5;

/// Descending gradient flow of the pair potential from `start`; every sample
/// stays in V x V.
FlowTrace gradient_flow(const GPotential& g, const PointPair& start,
                        const FlowOptions& options = {});

struct SignatureRecord {
  RealPoint point;
  double abs_delta;
  Inertia inverse_abs2;  // Hessian of |1/delta|^2
  Inertia g;             // Hessian of g
  Inertia pair;          // Hessian of f at (this point, next point)
};

struct SignatureReport {
  std::size_t m = 0;
  std::vector<SignatureRecord> records;
  std::size_t rejected = 0;
  std::size_t max_negative_inverse_abs2 = 0;
  std::size_t min_positive_g = 0;
  std::size_t min_positive_pair = 0;
  /// Samples violating negative <= m, positive(g) >= m or positive(f) >= 2m.
  std::size_t violations = 0;
};

struct SamplingOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double null_tol = kDefaultNullTol;
  /// Samples with |delta| below this are rejected and redrawn.
  double delta_floor = 1e-3;
  /// Standard deviation of each real coordinate.
  double scale = 1.0;
};

/// Draws points of V with the seeded generator; throws NumericError if more
/// than 100 draws per requested sample are rejected.
std::vector<RealPoint> sample_points_in_v(const GPotential& g, const SamplingOptions& options,
                                          std::size_t* rejected = nullptr);

/// Checks the signature bounds of the Hessians of |1/delta|^2, g and f at
/// seeded random points of V (pairs are formed cyclically).
SignatureReport verify_signatures(const GPotential& g, const SamplingOptions& options);

}  // namespace disctc
