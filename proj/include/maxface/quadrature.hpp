#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include <Eigen/Core>

#include "maxface/common.hpp"

namespace maxface::quadrature {

/// Nodes and weights on [-1, 1].
struct Rule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta, alpha, beta > -1.
/// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
Rule gauss_jacobi(int n, double alpha, double beta);

/// Same as gauss_jacobi but memoised; safe to call from several threads.
const Rule& gauss_jacobi_cached(int n, double alpha, double beta);

inline Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

struct Options {
  double rel_tol = 1e-13;
  double abs_tol = 1e-15;
  int max_panels = 20000;
};

template <class T>
struct Integral {
  T value;
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

template <class X>
auto ev(const X& x) {
  if constexpr (requires { x.eval(); }) {
    return x.eval();
  } else {
    return x;
  }
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.norm();
}

// Kronrod 15 / Gauss 7 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto fc = f(center);
  auto kronrod = ev(fc * kWgk[7]);
  auto gauss = ev(fc * kWg[3]);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    auto sum = ev(f(center - dx) + f(center + dx));
    kronrod += sum * kWgk[j];
    if (j % 2 == 1) gauss += sum * kWg[j / 2];
  }
  using T = decltype(kronrod);
  Panel<T> p{a, b, ev(kronrod * half), 0.0};
  p.error = magnitude(ev(kronrod - gauss)) * std::abs(half);
  return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) on the real interval [a, b].
template <class F>
auto adaptive_gk15(F&& f, double a, double b, const Options& opt = {}) {
  using T = decltype(detail::gk15(f, a, b).value);
  std::priority_queue<detail::Panel<T>> panels;
  auto first = detail::gk15(f, a, b);
  T total = first.value;
  double error = first.error;
  int evaluations = 15;
  panels.push(first);
  while (error > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (static_cast<int>(panels.size()) >= opt.max_panels) {
      throw ToleranceError("adaptive Gauss-Kronrod: panel budget exhausted", error);
    }
    auto worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ToleranceError("adaptive Gauss-Kronrod: interval underflow", error);
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    evaluations += 30;
    total += detail::ev(left.value + right.value - worst.value);
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the rounding accumulated by incremental updates.
  T sum = panels.top().value;
  double err = 0.0;
  bool skip = true;
  while (!panels.empty()) {
    if (!skip) sum += panels.top().value;
    skip = false;
    err += panels.top().error;
    panels.pop();
  }
  return Integral<T>{sum, err, evaluations};
}

/// An algebraic endpoint singularity (z - point)^exponent of a straight-path integrand.
/// `index` names the factor so that the integrand can return itself with that factor removed.
struct EndpointFactor {
  int index = -1;
  double exponent = 0.0;
  Complex point{};
  /// Distance from `point` to the nearest other singularity of the integrand.
  double clearance = 0.0;
  bool active() const { return index >= 0; }
};

namespace detail {

// Integral over s in [0, sigma] of s^beta * h(s), h smooth, via Gauss-Jacobi on the panel.
template <class H>
auto jacobi_panel(H& h, double sigma, double beta, int n) {
  const Rule& rule = gauss_jacobi_cached(n, 0.0, beta);
  const double half = 0.5 * sigma;
  auto acc = ev(h(half * (1.0 + rule.nodes[0])) * rule.weights[0]);
  for (int i = 1; i < rule.nodes.size(); ++i) {
    acc += h(half * (1.0 + rule.nodes[i])) * rule.weights[i];
  }
  return ev(acc * std::pow(half, beta + 1.0));
}

// Gauss-Jacobi panel [0, sigma] with a two-order error estimate; shrinks sigma until the
// estimate meets the tolerance and reports the sigma actually used.
template <class H>
auto converged_jacobi_panel(H& h, double& sigma, double beta, const Options& opt, int& evals) {
  for (int depth = 0;; ++depth) {
    auto coarse = jacobi_panel(h, sigma, beta, 24);
    auto fine = jacobi_panel(h, sigma, beta, 36);
    evals += 60;
    const double diff = magnitude(ev(fine - coarse));
    if (diff <= std::max(opt.abs_tol, opt.rel_tol * magnitude(fine)) || depth > 40) {
      if (depth > 40) throw ToleranceError("Gauss-Jacobi endpoint panel did not converge", diff);
      return std::make_pair(fine, diff);
    }
    sigma *= 0.5;
  }
}

}  // namespace detail

/// Integral of an integrand along the straight segment z0 -> z1.
///
/// `f(z, k)` must return the integrand at z divided by its k-th algebraic factor when k >= 0,
/// and the full integrand when k == -1. Endpoint factors start/finish mark z0/z1 as algebraic
/// singularities handled by Gauss-Jacobi panels; the interior uses adaptive Gauss-Kronrod.
template <class F>
auto integrate_segment(F&& f, Complex z0, Complex z1, const EndpointFactor& start,
                       const EndpointFactor& finish, const Options& opt = {}) {
  const Complex d = z1 - z0;
  const double length = std::abs(d);
  auto full = [&](double s) { return detail::ev(f(z0 + s * d, -1) * d); };
  using T = decltype(full(0.5));

  double s_lo = 0.0, s_hi = 1.0;
  int evals = 0;
  double error = 0.0;
  bool have = false;
  T total{};

  auto accumulate = [&](const T& v) {
    if (!have) {
      total = v;
      have = true;
    } else {
      total += v;
    }
  };

  if (start.active()) {
    double sigma = std::min(0.5, 0.5 * start.clearance / length);
    const Complex dpow = principal_pow(d, start.exponent);
    auto h = [&](double s) {
      return detail::ev(f(z0 + s * d, start.index) * (dpow * d));
    };
    auto [v, e] = detail::converged_jacobi_panel(h, sigma, start.exponent, opt, evals);
    accumulate(v);
    error += e;
    s_lo = sigma;
  }
  if (finish.active()) {
    double sigma = std::min(0.5, 0.5 * finish.clearance / length);
    if (start.active()) sigma = std::min(sigma, 1.0 - s_lo);
    const Complex dpow = principal_pow(-d, finish.exponent);
    auto h = [&](double u) {
      return detail::ev(f(z1 - u * d, finish.index) * (dpow * d));
    };
    auto [v, e] = detail::converged_jacobi_panel(h, sigma, finish.exponent, opt, evals);
    accumulate(v);
    error += e;
    s_hi = 1.0 - sigma;
  }
  if (s_hi > s_lo) {
    auto mid = adaptive_gk15(full, s_lo, s_hi, opt);
    accumulate(mid.value);
    error += mid.error;
    evals += mid.evaluations;
  }
  return Integral<T>{total, error, evals};
}

}  // namespace maxface::quadrature
