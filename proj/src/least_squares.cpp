#include "maxface/least_squares.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "maxface/common.hpp"

namespace maxface {

namespace {

std::optional<Eigen::VectorXd> try_eval(const ResidualFunction& f, const Eigen::VectorXd& x) {
  try {
    Eigen::VectorXd r = f(x);
    if (!r.allFinite()) return std::nullopt;
    return r;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

Eigen::MatrixXd finite_difference_jacobian(const ResidualFunction& f, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& fx, double rel_step) {
  Eigen::MatrixXd J(fx.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x[i]));
    Eigen::VectorXd xp = x;
    xp[i] += h;
    auto fp = try_eval(f, xp);
    if (fp) {
      J.col(i) = (*fp - fx) / h;
      continue;
    }
    Eigen::VectorXd xm = x;
    xm[i] -= h;
    auto fm = try_eval(f, xm);
    if (!fm) throw SolverError("finite-difference Jacobian: residual undefined on both sides",
                               fx.norm());
    J.col(i) = (fx - *fm) / h;
  }
  return J;
}

LeastSquaresResult solve_least_squares(const ResidualFunction& f, Eigen::VectorXd x0,
                                       const LeastSquaresOptions& opt) {
  LeastSquaresResult out;
  out.x = std::move(x0);
  out.residual = f(out.x);
  out.evaluations = 1;
  out.norm = out.residual.norm();
  double damping = opt.initial_damping;

  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    if (out.norm <= opt.tolerance) break;
    if (out.x.size() == 0) break;
    const Eigen::MatrixXd J = finite_difference_jacobian(f, out.x, out.residual, opt.fd_step);
    out.evaluations += static_cast<int>(out.x.size());

    bool accepted = false;
    Eigen::VectorXd step = -J.completeOrthogonalDecomposition().solve(out.residual);
    for (int halving = 0; halving < 5 && !accepted; ++halving) {
      const Eigen::VectorXd trial = out.x + step;
      auto r = try_eval(f, trial);
      ++out.evaluations;
      if (r && r->norm() < out.norm) {
        out.x = trial;
        out.residual = *r;
        out.norm = r->norm();
        accepted = true;
      }
      step *= 0.5;
    }

    if (!accepted) {
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd g = J.transpose() * out.residual;
      Eigen::VectorXd scale = JtJ.diagonal().cwiseMax(1e-12);
      while (!accepted && damping <= opt.max_damping) {
        Eigen::MatrixXd A = JtJ;
        A.diagonal() += damping * scale;
        const Eigen::VectorXd lm = -A.ldlt().solve(g);
        const Eigen::VectorXd trial = out.x + lm;
        auto r = try_eval(f, trial);
        ++out.evaluations;
        if (r && r->norm() < out.norm) {
          out.x = trial;
          out.residual = *r;
          out.norm = r->norm();
          accepted = true;
          damping = std::max(damping * 0.1, 1e-12);
        } else {
          damping *= 10.0;
        }
        if (lm.norm() <= 1e-16 * (1.0 + out.x.norm())) break;
      }
    }
    if (!accepted) break;
  }
  out.converged = out.norm <= opt.tolerance;
  return out;
}

}  // namespace maxface
