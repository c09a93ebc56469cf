#include "disctc/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace disctc {

DescentResult descend(const DescentProblem& problem, const Eigen::VectorXd& start,
                      const FlowOptions& options) {
  DescentResult out;
  Eigen::VectorXd x = start;
  double fx = problem.value(x);
  Eigen::VectorXd grad = problem.gradient(x);
  double step = options.initial_step;

  out.points.push_back(x);
  out.values.push_back(fx);
  out.grad_norms.push_back(grad.norm());

  for (std::size_t it = 0; it < options.max_steps; ++it) {
    const double gnorm = grad.norm();
    if (gnorm < options.grad_tol) {
      out.converged = true;
      return out;
    }
    const double decrease = options.armijo * gnorm * gnorm;
    bool accepted = false;
    while (step >= options.min_step) {
      Eigen::VectorXd trial = x - step * grad;
      if (!problem.admissible || problem.admissible(x, trial)) {
        const double ft = problem.value(trial);
        // Below the rounding floor of f the Armijo test cannot resolve the
        // decrease; accept a step that does not overshoot the minimum along
        // the ray and changes f by no more than its evaluation rounding.
        const double floor = kValueRoundingUlps * std::numeric_limits<double>::epsilon() * std::abs(fx);
        if (step * decrease > floor) {
          if (std::isfinite(ft) && ft <= fx - step * decrease) {
            x = std::move(trial);
            fx = ft;
            grad = problem.gradient(x);
            accepted = true;
            break;
          }
        } else if (std::isfinite(ft) && ft <= fx + floor) {
          Eigen::VectorXd trial_grad = problem.gradient(trial);
          if (trial_grad.dot(grad) >= 0.0) {
            x = std::move(trial);
            fx = ft;
            grad = std::move(trial_grad);
            accepted = true;
            break;
          }
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.stalled = true;
      return out;
    }
    out.points.push_back(x);
    out.values.push_back(fx);
    out.grad_norms.push_back(grad.norm());
    step = std::min(2.0 * step, options.max_step);
  }
  out.converged = out.grad_norms.back() < options.grad_tol;
  return out;
}

}  // namespace disctc
