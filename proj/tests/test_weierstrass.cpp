#include <cmath>

#include "doctest.h"
#include "maxface/reflexivity.hpp"
#include "maxface/sc_map.hpp"
#include "maxface/weierstrass.hpp"
#include "oracles.hpp"

using namespace maxface;

namespace {

const MarkedConfiguration& solved(int p) {
  static std::vector<MarkedConfiguration> cache;
  while (static_cast<int>(cache.size()) < p) {
    cache.push_back(solve_reflexive(PatternKind::Zigzag, static_cast<int>(cache.size()) + 1).config);
  }
  return cache[p - 1];
}

std::vector<double> as_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

const Complex kEighth = std::polar(1.0, kPi / 4.0);

}  // namespace

TEST_CASE("maximal data from reflexive zigzags closes its periods") {
  for (int p = 1; p <= 3; ++p) {
    const auto data = from_reflexive(solved(p), Variant::Maximal);
    const auto report = homology_periods(data);
    CHECK(report.loops.size() == static_cast<std::size_t>(2 * p));
    CHECK(report.max_residual < 1e-8);
    CHECK(report.max_dh_residual < 1e-12);
    for (const auto& loop : report.loops) CHECK(std::abs(loop.dh) < 1e-12);
  }
}

TEST_CASE("loop periods are twice the vertex differences") {
  for (int p = 1; p <= 3; ++p) {
    const auto& cfg = solved(p);
    const auto data = from_reflexive(cfg, Variant::Maximal);
    const auto P = vertex_images(cfg);
    const auto report = homology_periods(data);
    for (const auto& loop : report.loops) {
      const int j = loop.index;
      const Complex alpha = 2.0 * kEighth * (P[j + p] - P[j + p + 1]);
      const Complex beta = 2.0 * kEighth * (P[-j + p] - P[-j - 1 + p]);
      CHECK(std::abs(loop.g_dh - alpha) < 1e-9 * report.scale);
      CHECK(std::abs(loop.ginv_dh - beta) < 1e-9 * report.scale);
    }
  }
}

TEST_CASE("minimal and companion data close") {
  for (int p = 1; p <= 3; ++p) {
    const auto minimal = from_reflexive(solved(p), Variant::Minimal);
    CHECK(period_residual(minimal) < 1e-8);
    const auto comp = companion(minimal);
    CHECK(comp.variant == Variant::Companion);
    const auto report = homology_periods(comp);
    CHECK(report.max_residual < 1e-8);
    for (const auto& loop : report.loops) CHECK(std::abs(loop.dh) == 0.0);
  }
  CHECK_THROWS_AS(companion(from_reflexive(solved(1), Variant::Maximal)), DomainError);
}

TEST_CASE("breaking the symmetry opens the periods") {
  const auto& cfg = solved(2);
  auto t = as_vector(cfg.points());
  t[3] += 0.1;
  const auto broken = MarkedConfiguration::general(t, as_vector(cfg.exponents()), cfg.c());
  CHECK(period_residual({broken, Variant::Maximal}) > 1e-3);
}

TEST_CASE("maximal data is not the companion of the minimal data") {
  const auto& cfg = solved(2);
  const auto maximal = from_reflexive(cfg, Variant::Maximal);
  const auto minimal = from_reflexive(cfg, Variant::Minimal);
  const auto comp = companion(minimal);
  CHECK(std::abs(maximal.dh_factor() - kI * minimal.dh_factor()) < 1e-15);
  for (int k = 0; k < 10; ++k) {
    const Complex z(-2.0 + 0.45 * k, 0.2 + 0.17 * k);
    for (auto sheet : {Sheet::Plus, Sheet::Minus}) {
      const Complex g = minimal.g({z, sheet});
      CHECK(std::abs(maximal.g({z, sheet}) - g) < 1e-13 * std::abs(g));
      CHECK(std::abs(comp.g({z, sheet}) - (-kI) * g) < 1e-13 * std::abs(g));
      CHECK(std::abs(comp.g({z, sheet}) - maximal.g({z, sheet})) > 0.1 * std::abs(g));
    }
  }
  CHECK(std::abs(comp.dh_factor() - maximal.dh_factor()) < 1e-15);
}

TEST_CASE("segment periods agree with contour integration") {
  for (auto kind : {PatternKind::Zigzag, PatternKind::Tweezer}) {
    for (int p = 1; p <= 3; ++p) {
      std::vector<double> pos;
      for (int j = 1; j <= p; ++j) pos.push_back(0.4 * j + 0.1 * j * j);
      const auto cfg = MarkedConfiguration::symmetric(pos, make_pattern(kind, p), Complex(0.3, 0.8));
      const WeierstrassData data{cfg, Variant::Maximal};
      const auto report = homology_periods(data);
      const auto t = as_vector(cfg.points());
      const auto a = as_vector(cfg.exponents());
      std::vector<double> b(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) b[k] = -a[k];
      const Complex c = cfg.c();
      for (const auto& loop : report.loops) {
        const int k = loop.index + p;
        const Complex alpha = data.phase() * oracle::contour_period(t, a, k);
        const Complex beta = c * c / data.phase() * oracle::contour_period(t, b, k);
        CHECK(std::abs(loop.g_dh - alpha) < 1e-8 * std::abs(alpha));
        CHECK(std::abs(loop.ginv_dh - beta) < 1e-8 * std::abs(beta));
      }
    }
  }
}

TEST_CASE("the flat form has constant argument on every edge") {
  const auto& cfg = solved(3);
  const auto& t = cfg.points();
  for (int k = 0; k + 1 < t.size(); ++k) {
    const double ref = std::arg(power_product(t, cfg.exponents(), 0.5 * (t[k] + t[k + 1])));
    for (double s : {0.01, 0.2, 0.7, 0.99}) {
      const double x = t[k] + s * (t[k + 1] - t[k]);
      const double d = std::arg(power_product(t, cfg.exponents(), x)) - ref;
      CHECK(std::abs(std::remainder(d, 2.0 * kPi)) < 1e-8);
    }
  }
}

TEST_CASE("divisor bookkeeping") {
  for (auto kind : {PatternKind::Zigzag, PatternKind::Tweezer}) {
    for (int p = 1; p <= 5; ++p) {
      const auto d = divisors(make_pattern(kind, p));
      CHECK(d.divisor_condition);
      REQUIRE(d.points.size() == static_cast<std::size_t>(2 * p + 2));
      const auto& end = d.points.back();
      CHECK(!end.index);
      CHECK(end.order_g == 1);
      CHECK(end.order_dh == -3);
      CHECK(end.order_g_dh == -2);
      CHECK(end.order_ginv_dh == -4);
      for (int k = 0; k <= 2 * p; ++k) {
        CHECK(d.points[k].order_dh == 1);
        CHECK(std::abs(d.points[k].order_g) == 1);
      }
    }
  }
  // genus-2 tweezer: (alpha) = P_{+-2}^2 P_inf^-2, (beta) = P_{+-1}^2 P_0^2 P_inf^-4
  const auto d = divisors(make_pattern(PatternKind::Tweezer, 2));
  const std::vector<int> alpha{2, 0, 0, 0, 2}, beta{0, 2, 2, 2, 0};
  for (int k = 0; k < 5; ++k) {
    CHECK(d.points[k].order_g_dh == alpha[k]);
    CHECK(d.points[k].order_ginv_dh == beta[k]);
  }
  CHECK_THROWS_AS(divisors(std::vector<double>{0.5, 0.25, -0.5}), DomainError);
}

TEST_CASE("completeness at the Enneper end") {
  const auto maxface = completeness_check(from_reflexive(solved(2), Variant::Maximal));
  CHECK(maxface.complete);
  CHECK(maxface.single_end);
  CHECK(maxface.gauss_map_at_end.value_or(false));
  CHECK(maxface.metric_complete);
  CHECK(maxface.enneper_type);

  const auto balanced = completeness_check({0.5, -0.5, 0.5, -0.5}, Variant::Maximal);
  CHECK(!balanced.complete);
  CHECK(balanced.gauss_map_at_end == false);
  CHECK(!balanced.reason.empty());

  const auto minimal = completeness_check(from_reflexive(solved(2), Variant::Minimal));
  CHECK(!minimal.gauss_map_at_end);
  CHECK(minimal.complete);
}

TEST_CASE("Costa companion obstruction") {
  for (double a : {0.5, 1.0, 2.0}) {
    const Complex period = costa_companion_dh_period(a);
    CHECK(period.real() == doctest::Approx(2.0 * kPi * a).epsilon(1e-12));
    CHECK(std::abs(period.imag()) < 1e-12);
  }
}
