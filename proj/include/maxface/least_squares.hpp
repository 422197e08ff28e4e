#pragma once

#include <functional>

#include <Eigen/Core>

namespace maxface {

struct LeastSquaresOptions {
  int max_iterations = 100;
  double tolerance = 1e-12;     // on the residual 2-norm
  double fd_step = 1e-6;        // relative forward-difference step
  double initial_damping = 1e-3;
  double max_damping = 1e12;
};

struct LeastSquaresResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  double norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using ResidualFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Forward-difference Jacobian of `f` at `x` given f(x) = `fx`.
Eigen::MatrixXd finite_difference_jacobian(const ResidualFunction& f, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& fx, double rel_step);

/// Safeguarded Gauss-Newton: a full step is accepted only if it lowers the residual, then
/// halved steps are tried, then Levenberg-Marquardt steps with growing damping.
/// Residual evaluations that throw maxface::Error count as rejected trial points, except at x0.
LeastSquaresResult solve_least_squares(const ResidualFunction& f, Eigen::VectorXd x0,
                                       const LeastSquaresOptions& opt = {});

}  // namespace maxface
