#include "disctc/morse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "disctc/error.hpp"
#include "disctc/parallel.hpp"
#include "disctc/random.hpp"

namespace disctc {

RealPoint::RealPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0 || coords_.size() % 2 != 0) {
    throw ValidationError("real point must have a positive even number of coordinates");
  }
  if (!coords_.allFinite()) throw ValidationError("real point has non-finite coordinates");
}

RealPoint RealPoint::from_complex(std::span<const Complex> z) {
  Eigen::VectorXd c(2 * static_cast<Eigen::Index>(z.size()));
  for (std::size_t j = 0; j < z.size(); ++j) {
    c[2 * j] = z[j].real();
    c[2 * j + 1] = z[j].imag();
  }
  return RealPoint(std::move(c));
}

std::vector<Complex> RealPoint::to_complex() const {
  std::vector<Complex> z(dim());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = {coords_[2 * j], coords_[2 * j + 1]};
  return z;
}

Abs2HessianParts hessian_abs2_parts(const EtaJet& jet) {
  const auto m = static_cast<Eigen::Index>(jet.d1.size());
  if (jet.d2.size() != jet.d1.size()) throw ValidationError("inconsistent jet dimensions");
  Abs2HessianParts out{Eigen::MatrixXd::Zero(2 * m, 2 * m), Eigen::MatrixXd::Zero(2 * m, 2 * m)};
  const Complex eta_bar = std::conj(jet.value);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (jet.d2[j].size() != jet.d1.size()) throw ValidationError("inconsistent jet dimensions");
    for (Eigen::Index k = 0; k < m; ++k) {
      const Complex ab = jet.d1[j] * std::conj(jet.d1[k]);
      const Complex eb = eta_bar * jet.d2[j][k];
      out.semidefinite(2 * j, 2 * k) = 2.0 * ab.real();
      out.semidefinite(2 * j, 2 * k + 1) = 2.0 * ab.imag();
      out.semidefinite(2 * j + 1, 2 * k) = -2.0 * ab.imag();
      out.semidefinite(2 * j + 1, 2 * k + 1) = 2.0 * ab.real();
      out.indefinite(2 * j, 2 * k) = 2.0 * eb.real();
      out.indefinite(2 * j, 2 * k + 1) = -2.0 * eb.imag();
      out.indefinite(2 * j + 1, 2 * k) = -2.0 * eb.imag();
      out.indefinite(2 * j + 1, 2 * k + 1) = -2.0 * eb.real();
    }
  }
  return out;
}

Eigen::MatrixXd hessian_abs2(const EtaJet& jet) {
  auto parts = hessian_abs2_parts(jet);
  return parts.semidefinite + parts.indefinite;
}

Inertia inertia(const Eigen::MatrixXd& m, double null_tol, bool relative) {
  if (m.rows() != m.cols()) throw ValidationError("inertia of a non-square matrix");
  Inertia out;
  if (m.rows() == 0) return out;
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double tol = relative ? null_tol * ev.cwiseAbs().maxCoeff() : null_tol;
  for (double lambda : ev) {
    if (lambda > tol) {
      ++out.positive;
    } else if (lambda < -tol) {
      ++out.negative;
    } else {
      ++out.null;
    }
  }
  return out;
}

GPotential::GPotential(SparsePoly delta) : delta_(std::move(delta)) {
  if (delta_.is_zero()) throw ValidationError("the potential needs a nonzero polynomial");
  const std::size_t m = delta_.dim();
  for (std::size_t j = 0; j < m; ++j) d1_.push_back(delta_.partial(j));
  d2_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) d2_[j].push_back(d1_[j].partial(k));
  }
}

Complex GPotential::delta_in_v(std::span<const Complex> z) const {
  const Complex d = delta_.eval(z);
  if (!(std::abs(d) > 0.0)) throw ValidationError("point lies on the zero locus of the polynomial");
  return d;
}

bool GPotential::in_v(const RealPoint& p) const {
  if (p.dim() != dim()) return false;
  return std::abs(delta_.eval(p.to_complex())) > 0.0;
}

double GPotential::value(const RealPoint& p) const {
  const auto z = p.to_complex();
  const Complex d = delta_in_v(z);
  return p.coords().squaredNorm() + 1.0 / std::norm(d);
}

EtaJet GPotential::inverse_jet(const RealPoint& p) const {
  const auto z = p.to_complex();
  const Complex d = delta_in_v(z);
  const std::size_t m = dim();
  std::vector<Complex> dd(m);
  for (std::size_t j = 0; j < m; ++j) dd[j] = d1_[j].eval(z);
  EtaJet jet;
  jet.value = 1.0 / d;
  const Complex inv2 = jet.value * jet.value;
  const Complex inv3 = inv2 * jet.value;
  jet.d1.resize(m);
  jet.d2.assign(m, std::vector<Complex>(m));
  for (std::size_t j = 0; j < m; ++j) {
    jet.d1[j] = -dd[j] * inv2;
    for (std::size_t k = 0; k < m; ++k) {
      jet.d2[j][k] = -d2_[j][k].eval(z) * inv2 + 2.0 * dd[j] * dd[k] * inv3;
    }
  }
  return jet;
}

Eigen::VectorXd GPotential::gradient(const RealPoint& p) const {
  const auto z = p.to_complex();
  const Complex d = delta_in_v(z);
  const Complex eta = 1.0 / d;
  const Complex eta_bar = std::conj(eta);
  Eigen::VectorXd grad = 2.0 * p.coords();
  for (std::size_t j = 0; j < dim(); ++j) {
    const Complex a = -d1_[j].eval(z) * eta * eta;
    const Complex w = eta_bar * a;
    grad[2 * j] += 2.0 * w.real();
    grad[2 * j + 1] -= 2.0 * w.imag();
  }
  return grad;
}

Eigen::MatrixXd GPotential::hessian_inverse_abs2(const RealPoint& p) const {
  return hessian_abs2(inverse_jet(p));
}

Eigen::MatrixXd GPotential::hessian(const RealPoint& p) const {
  // second partials of sum (x_j^2 + y_j^2) are 2 I
  Eigen::MatrixXd h = hessian_inverse_abs2(p);
  h.diagonal().array() += 2.0;
  return h;
}

double potential_g(const SparsePoly& delta, const RealPoint& p) { return GPotential(delta).value(p); }

Eigen::VectorXd grad_g(const SparsePoly& delta, const RealPoint& p) {
  return GPotential(delta).gradient(p);
}

Eigen::MatrixXd hessian_g(const SparsePoly& delta, const RealPoint& p) {
  return GPotential(delta).hessian(p);
}

double pair_potential(const GPotential& g, const PointPair& pp) {
  return g.value(pp.first) + g.value(pp.second);
}

Eigen::VectorXd pair_grad(const GPotential& g, const PointPair& pp) {
  const auto n = static_cast<Eigen::Index>(2 * g.dim());
  Eigen::VectorXd out(2 * n);
  out.head(n) = g.gradient(pp.first);
  out.tail(n) = g.gradient(pp.second);
  return out;
}

Eigen::MatrixXd pair_hessian(const GPotential& g, const PointPair& pp) {
  const auto n = static_cast<Eigen::Index>(2 * g.dim());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = g.hessian(pp.first);
  out.bottomRightCorner(n, n) = g.hessian(pp.second);
  return out;
}

namespace {

PointPair split(const Eigen::VectorXd& x) {
  const auto n = x.size() / 2;
  return {RealPoint(x.head(n)), RealPoint(x.tail(n))};
}

}  // namespace

FlowTrace gradient_flow(const GPotential& g, const PointPair& start, const FlowOptions& options) {
  if (start.first.dim() != g.dim() || start.second.dim() != g.dim()) {
    throw ValidationError("flow start has the wrong dimension");
  }
  if (!g.in_v(start.first) || !g.in_v(start.second)) {
    throw ValidationError("flow start lies outside V x V");
  }
  const auto n = static_cast<Eigen::Index>(2 * g.dim());
  auto abs_delta = [&](const Eigen::VectorXd& x) {
    return std::abs(g.delta().eval(RealPoint(x).to_complex()));
  };

  DescentProblem problem;
  problem.value = [&](const Eigen::VectorXd& x) {
    const auto pp = split(x);
    if (!g.in_v(pp.first) || !g.in_v(pp.second)) return std::numeric_limits<double>::infinity();
    return pair_potential(g, pp);
  };
  problem.gradient = [&](const Eigen::VectorXd& x) { return pair_grad(g, split(x)); };
  problem.admissible = [&](const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
    if (!to.allFinite()) return false;
    return abs_delta(to.head(n)) >= kDeltaGuard * abs_delta(from.head(n)) &&
           abs_delta(to.tail(n)) >= kDeltaGuard * abs_delta(from.tail(n));
  };

  Eigen::VectorXd x0(2 * n);
  x0.head(n) = start.first.coords();
  x0.tail(n) = start.second.coords();
  const auto result = descend(problem, x0, options);

  FlowTrace trace;
  trace.converged = result.converged;
  trace.samples.reserve(result.points.size());
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    trace.samples.push_back({split(result.points[i]), result.values[i], result.grad_norms[i]});
  }
  return trace;
}

std::vector<RealPoint> sample_points_in_v(const GPotential& g, const SamplingOptions& options,
                                          std::size_t* rejected) {
  Rng rng(options.seed);
  std::vector<RealPoint> points;
  points.reserve(options.samples);
  std::size_t rejections = 0;
  const std::size_t budget = 100 * options.samples;
  std::vector<Complex> z(g.dim());
  while (points.size() < options.samples) {
    for (auto& zj : z) zj = gaussian_complex(rng, options.scale);
    if (std::abs(g.delta().eval(z)) >= options.delta_floor) {
      points.push_back(RealPoint::from_complex(z));
    } else if (++rejections > budget) {
      throw NumericError("sampling failed to land in V: " + std::to_string(rejections) +
                         " rejections for " + std::to_string(points.size()) + " accepted samples");
    }
  }
  if (rejected) *rejected = rejections;
  return points;
}

SignatureReport verify_signatures(const GPotential& g, const SamplingOptions& options) {
  SignatureReport report;
  report.m = g.dim();
  auto points = sample_points_in_v(g, options, &report.rejected);
  const std::size_t count = points.size();
  std::vector<SignatureRecord> records(count, SignatureRecord{RealPoint(Eigen::VectorXd::Zero(2)),
                                                              0.0, {}, {}, {}});
  parallel_for(count, [&](std::size_t i) {
    const RealPoint& p = points[i];
    const RealPoint& q = points[(i + 1) % count];
    SignatureRecord r{p, std::abs(g.delta().eval(p.to_complex())), {}, {}, {}};
    r.inverse_abs2 = inertia(g.hessian_inverse_abs2(p), options.null_tol);
    r.g = inertia(g.hessian(p), options.null_tol);
    r.pair = inertia(pair_hessian(g, {p, q}), options.null_tol);
    records[i] = std::move(r);
  });

  const std::size_t m = report.m;
  report.min_positive_g = count ? std::numeric_limits<std::size_t>::max() : 0;
  report.min_positive_pair = report.min_positive_g;
  for (const auto& r : records) {
    report.max_negative_inverse_abs2 = std::max(report.max_negative_inverse_abs2, r.inverse_abs2.negative);
    report.min_positive_g = std::min(report.min_positive_g, r.g.positive);
    report.min_positive_pair = std::min(report.min_positive_pair, r.pair.positive);
    if (r.inverse_abs2.negative > m || r.g.positive < m || r.pair.positive < 2 * m) {
      ++report.violations;
    }
  }
  report.records = std::move(records);
  return report;
}

}  // namespace disctc
