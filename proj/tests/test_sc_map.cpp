#include <cmath>

#include "doctest.h"
#include "maxface/functions.hpp"
#include "maxface/sc_map.hpp"

using namespace maxface;

namespace {

MarkedConfiguration symmetric_config(PatternKind kind, std::vector<double> t) {
  const int p = static_cast<int>(t.size());
  return MarkedConfiguration::symmetric(t, make_pattern(kind, p), 1.0);
}

bool axis_parallel(Complex e) {
  const double ang = std::arg(e);
  const double q = ang / (kPi / 2.0);
  return std::abs(q - std::round(q)) * (kPi / 2.0) < 1e-6;
}

}  // namespace

TEST_CASE("degenerate shim with zero exponents integrates dz") {
  Eigen::VectorXd t(3), a(3);
  t << -1.0, 2.0, 3.0;
  a << 0.0, 0.0, 0.0;
  CHECK(std::abs(sc_integral(t, a, 0.0, 1.0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(sc_integral(t, a, kI, 2.0) - Complex(2.0, -1.0)) < 1e-15);
}

TEST_CASE("genus-one edge against a substitution oracle") {
  auto cfg = symmetric_config(PatternKind::Zigzag, {1.0});
  const Complex F = sc_integral(cfg, 0.0, 1.0);
  // x = 1 - u^2 removes both endpoint singularities: -2i int_0^1 sqrt(1-u^2)/sqrt(2-u^2) du.
  auto smooth = [](double u) { return std::sqrt(1.0 - u * u) / std::sqrt(2.0 - u * u); };
  const double left = quadrature::adaptive_gk15(smooth, 0.0, 0.5).value;
  const double right = quadrature::adaptive_gk15(smooth, 0.5, 1.0).value;
  const Complex oracle(0.0, -2.0 * (left + right));
  CHECK(std::abs(F - oracle) < 1e-9 * std::abs(oracle));
}

TEST_CASE("path errors") {
  auto cfg = symmetric_config(PatternKind::Zigzag, {1.0});
  CHECK_THROWS_AS(sc_integral(cfg, -0.5, 0.5), PathError);
  CHECK_THROWS_AS(sc_integral(cfg, kI, Complex(0.5, -0.1)), PathError);
  CHECK_NOTHROW(sc_integral(cfg, -1.0, 0.0));
}

TEST_CASE("reflection symmetry of the SC integral") {
  auto cfg = symmetric_config(PatternKind::Zigzag, {0.6, 1.0});
  for (Complex z : {Complex(0.3, 0.2), Complex(2.0, 0.5), Complex(0.8, 0.0), Complex(0.6, 0.0)}) {
    const Complex F = sc_integral(cfg, kI, z);
    const Complex Fm = sc_integral(cfg, kI, -std::conj(z));
    CHECK(std::abs(Fm - kI * std::conj(F)) < 1e-12);
  }
}

TEST_CASE("vertex images: axis-parallel edges and symmetry") {
  for (auto kind : {PatternKind::Zigzag, PatternKind::Tweezer}) {
    for (int p = 1; p <= 4; ++p) {
      std::vector<double> t;
      for (int j = 1; j <= p; ++j) t.push_back(j + 0.3 * j * j);
      auto cfg = symmetric_config(kind, t);
      auto P = vertex_images(cfg);
      for (int k = 0; k + 1 < static_cast<int>(P.size()); ++k) CHECK(axis_parallel(P[k + 1] - P[k]));
      for (int j = 1; j <= p; ++j) CHECK(std::abs(P[p - j] - kI * std::conj(P[p + j])) < 1e-12);
      if (kind == PatternKind::Zigzag) {
        // alternating horizontal / vertical
        for (int k = 0; k + 2 < static_cast<int>(P.size()); ++k) {
          const Complex e0 = P[k + 1] - P[k], e1 = P[k + 2] - P[k + 1];
          CHECK(std::abs((e1 / e0).real()) < 1e-9 * std::abs(e1 / e0));
        }
      }
    }
  }
  auto g1 = symmetric_config(PatternKind::Zigzag, {1.0});
  auto P = vertex_images(g1);
  CHECK(std::abs(P[2] - P[1]) == doctest::Approx(std::abs(P[1] - P[0])).epsilon(1e-13));
}

TEST_CASE("angle check for zigzag and tweezer patterns") {
  for (int p = 1; p <= 4; ++p) {
    std::vector<double> t;
    for (int j = 1; j <= p; ++j) t.push_back(j);
    auto zig = angle_check(make_ortho_disk(symmetric_config(PatternKind::Zigzag, t)));
    for (int k = 0; k < 2 * p + 1; ++k) {
      CHECK(zig[k] == doctest::Approx(k % 2 == 0 ? kPi / 2 : 1.5 * kPi).epsilon(1e-9));
    }
    if (p >= 2) {
      auto tw = angle_check(make_ortho_disk(symmetric_config(PatternKind::Tweezer, t)));
      CHECK(tw[p - 1] == doctest::Approx(kPi / 2));
      CHECK(tw[p + 1] == doctest::Approx(kPi / 2));
      CHECK(tw[p] == doctest::Approx(p % 2 == 0 ? kPi / 2 : 1.5 * kPi));
    }
    // angle budget: exterior turning of finite vertices plus the vertex at infinity is 2 pi
    for (auto kind : {PatternKind::Zigzag, PatternKind::Tweezer}) {
      auto cfg = symmetric_config(kind, t);
      auto ang = angle_check(make_ortho_disk(cfg));
      double total = kPi - angle_at_infinity(cfg);
      for (double x : ang) total += kPi - x;
      CHECK(total == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    }
  }
}

TEST_CASE("angle check detects a wrong pattern") {
  auto cfg = symmetric_config(PatternKind::Zigzag, {1.0, 2.0});
  OrthoDisk disk = make_ortho_disk(cfg);
  std::swap(disk.vertex_images[1], disk.vertex_images[3]);
  CHECK_THROWS_AS(angle_check(disk), GeometryError);
}

TEST_CASE("Gauss-Jacobi endpoint against split quadrature with a local expansion") {
  for (auto kind : {PatternKind::Zigzag, PatternKind::Tweezer}) {
    auto cfg = symmetric_config(kind, {0.4, 1.0, 1.7});
    const auto& t = cfg.points();
    const auto& a = cfg.exponents();
    for (int k = 0; k + 1 < t.size(); ++k) {
      const Complex gj = sc_integral(cfg, t[k], t[k + 1]);
      const double eps = 1e-7;
      auto local = [&](int m, double sign) {
        // int over [t_m, t_m + sign*eps] of (x - t_m)^{a_m} h(x), h and h' at t_m
        const Complex h = power_product(t, a, t[m], m);
        Complex dlog{};
        for (int q = 0; q < t.size(); ++q) if (q != m) dlog += a[q] / (t[m] - t[q]);
        const Complex base = principal_pow(Complex(sign), a[m]);
        const double am = a[m];
        return sign * base * h *
               (std::pow(eps, am + 1) / (am + 1) + sign * dlog * std::pow(eps, am + 2) / (am + 2));
      };
      auto f = [&](double x) { return power_product(t, a, Complex(x, 0.0)); };
      const Complex mid = quadrature::adaptive_gk15(f, t[k] + eps, t[k + 1] - eps).value;
      const Complex split = local(k, 1.0) + mid - local(k + 1, -1.0);
      CHECK(std::abs(gj - split) < 1e-9 * std::abs(gj));
    }
  }
}

TEST_CASE("halving the quadrature tolerance is stable") {
  auto cfg = symmetric_config(PatternKind::Tweezer, {0.3, 0.9, 2.5});
  for (double tol : {1e-8, 1e-10, 1e-12}) {
    quadrature::Options coarse, fine;
    coarse.rel_tol = tol;
    fine.rel_tol = tol / 2;
    auto P = vertex_images(cfg, coarse);
    auto Q = vertex_images(cfg, fine);
    double scale = 0.0;
    for (auto v : Q) scale = std::max(scale, std::abs(v));
    for (size_t k = 0; k < P.size(); ++k) CHECK(std::abs(P[k] - Q[k]) <= tol * scale);
  }
}

TEST_CASE("solve_parameters: genus one, round trips and gauges") {
  SideLengthTarget one{{2.5, 2.5}, true};
  auto s1 = solve_parameters(one, make_pattern(PatternKind::Zigzag, 1));
  CHECK(s1.config.point(-1) == -1.0);
  CHECK(s1.config.point(0) == 0.0);
  CHECK(s1.config.point(1) == 1.0);

  auto round_trip = [](const SideLengthTarget& target, const std::vector<double>& a, Gauge gauge) {
    ParameterSolveOptions opt;
    opt.gauge = gauge;
    auto sol = solve_parameters(target, a, opt);
    auto L = side_lengths(sol.config.points(), sol.config.exponents());
    for (size_t k = 0; k < L.size(); ++k) {
      CHECK(sol.scale * L[k] == doctest::Approx(target.lengths[k]).epsilon(1e-8));
    }
    return sol;
  };
  auto s2 = round_trip({{1.0, 2.0, 2.0, 1.0}, true}, make_pattern(PatternKind::Zigzag, 2),
                       Gauge::CenterAndEnd);
  CHECK(s2.config.is_symmetric());
  round_trip({{1.0, 3.0, 3.0, 1.0}, true}, make_pattern(PatternKind::Tweezer, 2),
             Gauge::CenterAndEnd);
  round_trip({{1.0, 1.0, 2.0, 2.0, 1.0, 1.0}, true}, make_pattern(PatternKind::Zigzag, 3),
             Gauge::CenterAndEnd);
  round_trip({{1.0, 1.3, 0.7, 2.0}, false}, make_pattern(PatternKind::Zigzag, 2),
             Gauge::CenterAndEnd);
  auto e = round_trip({{1.0, 1.3, 0.7, 2.0}, false}, make_pattern(PatternKind::Zigzag, 2),
                      Gauge::Ends);
  CHECK(e.config.point(-2) == -1.0);
  CHECK(e.config.point(2) == 1.0);
}

TEST_CASE("solve_parameters validates input") {
  CHECK_THROWS_AS(solve_parameters({{1.0, -1.0}, false}, make_pattern(PatternKind::Zigzag, 1)),
                  DomainError);
  CHECK_THROWS_AS(solve_parameters({{1.0, 2.0, 3.0, 4.0}, true},
                                   make_pattern(PatternKind::Zigzag, 2)),
                  DomainError);
}

TEST_CASE("monotone response of a t-gap to its target length") {
  double previous = 0.0;
  for (double e1 = 0.4; e1 <= 3.0; e1 += 0.2) {
    auto sol = solve_parameters({{e1, 1.0, 1.0, e1}, true}, make_pattern(PatternKind::Zigzag, 2));
    const double gap = sol.config.point(2) - sol.config.point(1);
    CHECK(gap > previous);
    previous = gap;
  }
}
