#include "maxface/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace maxface::quadrature {

Rule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: n must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag[k] = (beta - alpha) / (ab + 2.0);
    } else {
      diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));

  Rule rule;
  if (n == 1) {
    rule.nodes = diag;
    rule.weights = Eigen::VectorXd::Constant(1, mu0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("gauss_jacobi: eigen-decomposition failed");
  rule.nodes = solver.eigenvalues();
  rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

const Rule& gauss_jacobi_cached(int n, double alpha, double beta) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, alpha, beta}];
  if (!slot) slot = std::make_unique<Rule>(gauss_jacobi(n, alpha, beta));
  return *slot;
}

}  // namespace maxface::quadrature
