#include <cmath>

#include "doctest.h"
#include "maxface/least_squares.hpp"
#include "maxface/quadrature.hpp"

using namespace maxface;
using namespace maxface::quadrature;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const Rule r = gauss_legendre(8);
  for (int deg = 0; deg <= 15; ++deg) {
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) sum += r.weights[i] * std::pow(r.nodes[i], deg);
    const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
    CHECK(sum == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("Gauss-Jacobi with alpha = beta = -1/2 is Gauss-Chebyshev") {
  const int n = 12;
  const Rule r = gauss_jacobi(n, -0.5, -0.5);
  for (int i = 0; i < n; ++i) {
    // Ascending Chebyshev nodes cos((2k-1)pi/2n) with equal weights pi/n.
    const double x = -std::cos((2.0 * (i + 1) - 1.0) * kPi / (2.0 * n));
    CHECK(r.nodes[i] == doctest::Approx(x).epsilon(1e-14));
    CHECK(r.weights[i] == doctest::Approx(kPi / n).epsilon(1e-13));
  }
}

TEST_CASE("Gauss-Jacobi with alpha = beta = 1/2 is Chebyshev of the second kind") {
  const int n = 10;
  const Rule r = gauss_jacobi(n, 0.5, 0.5);
  for (int i = 0; i < n; ++i) {
    const double theta = (n - i) * kPi / (n + 1.0);
    CHECK(r.nodes[i] == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    CHECK(r.weights[i] ==
          doctest::Approx(kPi / (n + 1.0) * std::pow(std::sin(theta), 2)).epsilon(1e-13));
  }
}

TEST_CASE("Gauss-Jacobi moments for one-sided weight") {
  // int_{-1}^{1} (1+x)^beta x^2 dx for beta = 1/2, by direct antiderivative.
  const double beta = 0.5;
  const Rule r = gauss_jacobi(6, 0.0, beta);
  double sum = 0.0;
  for (int i = 0; i < 6; ++i) sum += r.weights[i] * r.nodes[i] * r.nodes[i];
  // substitute u = 1+x: int_0^2 u^b (u-1)^2 du
  auto F = [&](double u) {
    return std::pow(u, beta + 3) / (beta + 3) - 2 * std::pow(u, beta + 2) / (beta + 2) +
           std::pow(u, beta + 1) / (beta + 1);
  };
  CHECK(sum == doctest::Approx(F(2.0)).epsilon(1e-14));
}

TEST_CASE("invalid Gauss-Jacobi arguments are rejected") {
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), DomainError);
}

TEST_CASE("adaptive Gauss-Kronrod on smooth and peaked integrands") {
  auto r1 = adaptive_gk15([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r1.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  auto r2 = adaptive_gk15([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
  CHECK(r2.value == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-12));
  auto r3 = adaptive_gk15([](double x) { return Complex(std::cos(x), std::sin(x)); }, 0.0, kPi);
  CHECK(std::abs(r3.value - Complex(0.0, 2.0)) < 1e-14);
}

TEST_CASE("segment integration with algebraic endpoint singularities") {
  // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi, written as a two-factor product.
  Eigen::VectorXd t(2), a(2);
  t << 0.0, 1.0;
  a << -0.5, -0.5;
  auto f = [&](Complex z, int skip) {
    Complex v{1.0, 0.0};
    for (int k = 0; k < 2; ++k) {
      if (k != skip) v *= principal_pow(z - t[k], a[k]);
    }
    return v;
  };
  EndpointFactor s{0, -0.5, 0.0, 1.0};
  EndpointFactor e{1, -0.5, 1.0, 1.0};
  auto r = integrate_segment(f, 0.0, 1.0, s, e);
  // (z-1)^{-1/2} on (0,1) equals -i (1-x)^{-1/2} on the principal branch.
  CHECK(std::abs(r.value - Complex(0.0, -kPi)) < 1e-13);

  // Complex direction: from i to 0 along the imaginary axis with z^{1/2}.
  auto g = [](Complex z, int skip) { return skip == 0 ? Complex{1.0} : principal_pow(z, 0.5); };
  EndpointFactor none{};
  EndpointFactor at0{0, 0.5, 0.0, 10.0};
  auto q = integrate_segment(g, kI, 0.0, none, at0);
  const Complex exact = -(2.0 / 3.0) * principal_pow(kI, 1.5);
  CHECK(std::abs(q.value - exact) < 1e-14);
}

TEST_CASE("least squares recovers a Rosenbrock minimum and a fitted exponential") {
  ResidualFunction rosen = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(2);
    r << 10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0];
    return r;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  auto res = solve_least_squares(rosen, x0);
  CHECK(res.converged);
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-10));

  ResidualFunction fit = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(5);
    for (int i = 0; i < 5; ++i) r[i] = x[0] * std::exp(x[1] * i) - 2.0 * std::exp(-0.3 * i);
    return r;
  };
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  auto res2 = solve_least_squares(fit, y0);
  CHECK(res2.converged);
  CHECK(res2.x[1] == doctest::Approx(-0.3).epsilon(1e-9));
}
