#pragma once

#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace maxface {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Principal argument in (-pi, pi]; a negative real number (either zero sign) gets +pi.
inline double principal_arg(Complex w) {
  if (w.imag() == 0.0) return w.real() < 0.0 ? kPi : 0.0;
  return std::arg(w);
}

/// w^a on the principal branch with the argument convention of principal_arg.
inline Complex principal_pow(Complex w, double a) {
  if (w == Complex{}) return a > 0.0 ? Complex{} : Complex{std::numeric_limits<double>::infinity()};
  return std::polar(std::pow(std::abs(w), a), a * principal_arg(w));
}

/// Base of every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments, configurations or preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole of g or G.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A quadrature path runs through a marked point or leaves the closed upper half-plane.
class PathError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not reach the requested tolerance.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Image polygon violates the expected ortho-disk geometry.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver stalled above tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// G' vanishes where the front criteria need it nonzero.
class NotAFrontError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Bad option or format name supplied by a caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A proven structural property failed numerically (e.g. loop count).
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace maxface
