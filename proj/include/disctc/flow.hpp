#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

namespace disctc {

/// Rounding allowance, in units of epsilon * |f|, within which consecutive
/// descent values may differ once the Armijo decrease is below rounding.
inline constexpr double kValueRoundingUlps = 4.0;

struct FlowOptions {
  double grad_tol = 1e-8;
  std::size_t max_steps = 100000;
  double initial_step = 0.1;
  double max_step = 1.0;
  /// Armijo sufficient-decrease constant.
  double armijo = 1e-4;
  /// Steps are halved below this length before the flow gives up as stalled.
  double min_step = 1e-18;
};

/// Smooth objective on R^d together with a feasibility guard on steps.
struct DescentProblem {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  /// Whether a step from `from` to `to` may be taken; defaults to always.
  std::function<bool(const Eigen::VectorXd& from, const Eigen::VectorXd& to)> admissible;
};

struct DescentResult {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
  std::vector<double> grad_norms;
  bool converged = false;
  bool stalled = false;
};

/// Gradient descent with halving backtracking (Armijo) line search. Values
/// along `points` are non-increasing up to kValueRoundingUlps of rounding;
/// the first point is the start.
DescentResult descend(const DescentProblem& problem, const Eigen::VectorXd& start,
                      const FlowOptions& options);

}  // namespace disctc
