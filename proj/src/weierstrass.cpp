#include "maxface/weierstrass.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/functions.hpp"
#include "maxface/sc_map.hpp"

namespace maxface {

Complex WeierstrassData::dh_factor() const {
  return variant == Variant::Companion ? kI * config.c() : config.c();
}

Complex WeierstrassData::g(const SheetPoint& point) const { return eval_g(config, point, variant); }

Complex WeierstrassData::g_dh(Complex z) const {
  return eval_g(config, {z, Sheet::Plus}, variant) * dh_factor();
}

Complex WeierstrassData::ginv_dh(Complex z) const {
  return dh_factor() / eval_g(config, {z, Sheet::Plus}, variant);
}

WeierstrassData from_reflexive(const MarkedConfiguration& config, Variant variant) {
  switch (variant) {
    case Variant::Maximal: return {config, Variant::Maximal};
    case Variant::Minimal: return {config.with_c(-kI * config.c()), Variant::Minimal};
    case Variant::Companion: return companion(from_reflexive(config, Variant::Minimal));
  }
  throw DomainError("from_reflexive: unknown variant");
}

WeierstrassData companion(const WeierstrassData& data) {
  if (data.variant != Variant::Minimal) {
    throw DomainError("companion: input must be minimal-surface data");
  }
  return {data.config, Variant::Companion};
}

PeriodReport homology_periods(const WeierstrassData& data, const quadrature::Options& opt) {
  const auto& t = data.config.points();
  const Eigen::VectorXd a = data.config.exponents();
  const Eigen::VectorXd b = -a;
  const int p = data.config.genus();
  // g dh = phase k f dz and g^-1 dh = k c^2 / phase f^-1 dz, f = prod (z - t_j)^{a_j}.
  const Complex k = data.dh_factor() / data.config.c();
  const Complex c = data.config.c();
  const Complex alpha = data.phase() * k;
  const Complex beta = k * c * c / data.phase();

  PeriodReport report;
  for (int j = -p; j < p; ++j) {
    const double lo = t[j + p], hi = t[j + p + 1];
    LoopPeriod loop;
    loop.index = j;
    loop.g_dh = 2.0 * alpha * sc_integral(t, a, hi, lo, opt);
    loop.ginv_dh = 2.0 * beta * sc_integral(t, b, hi, lo, opt);
    // upper side hi -> lo, lower side lo -> hi with dh unchanged
    loop.dh = data.dh_factor() * ((lo - hi) + (hi - lo));
    const Complex closing = data.maximal_convention() ? loop.g_dh + std::conj(loop.ginv_dh)
                                                      : loop.g_dh - std::conj(loop.ginv_dh);
    loop.residual = std::abs(closing);
    loop.dh_residual = std::abs(loop.dh.real());
    report.scale = std::max({report.scale, std::abs(loop.g_dh), std::abs(loop.ginv_dh)});
    report.max_dh_residual = std::max(report.max_dh_residual, loop.dh_residual);
    report.loops.push_back(loop);
  }
  for (const auto& loop : report.loops) {
    report.max_residual = std::max(report.max_residual, loop.residual / report.scale);
  }
  return report;
}

double period_residual(const WeierstrassData& data, const quadrature::Options& opt) {
  return homology_periods(data, opt).max_residual;
}

DivisorReport divisors(const std::vector<double>& exponents) {
  DivisorReport report;
  report.divisor_condition = true;
  int twice_sum = 0;
  const int n = static_cast<int>(exponents.size());
  for (int k = 0; k < n; ++k) {
    const double a = exponents[k];
    if (a != 0.5 && a != -0.5) throw DomainError("divisors: exponents must be +-1/2");
    const int twice = a > 0 ? 1 : -1;
    twice_sum += twice;
    PointDivisor d;
    d.index = k - n / 2;
    d.order_g = twice;
    d.order_dh = 1;
    d.order_g_dh = d.order_g + d.order_dh;
    d.order_ginv_dh = d.order_dh - d.order_g;
    if (std::abs(d.order_g) != d.order_dh) report.divisor_condition = false;
    report.points.push_back(d);
  }
  PointDivisor end;
  end.order_g = -twice_sum;
  end.order_dh = -3;
  end.order_g_dh = end.order_g + end.order_dh;
  end.order_ginv_dh = end.order_dh - end.order_g;
  report.points.push_back(end);
  return report;
}

DivisorReport divisors(const WeierstrassData& data) {
  const auto& a = data.config.exponents();
  return divisors(std::vector<double>(a.data(), a.data() + a.size()));
}

CompletenessReport completeness_check(const std::vector<double>& exponents, Variant variant) {
  const auto div = divisors(exponents);
  CompletenessReport report;
  const auto& end = div.points.back();
  report.order_g_at_end = end.order_g;
  report.order_dh_at_end = end.order_dh;
  // dh = c dz is holomorphic off z = infinity, so infinity is the only puncture.
  report.single_end = div.divisor_condition;
  if (variant != Variant::Minimal) report.gauss_map_at_end = end.order_g != 0;
  // ds ~ max(|g|, |g|^-1) |dh| ~ |w|^{-(|ord g| - ord dh)} |dw| near w = 0
  const int growth = std::abs(end.order_g) - end.order_dh;
  report.metric_complete = growth >= 1;
  report.enneper_type = std::abs(end.order_g) == 1 && end.order_dh == -3;

  if (!report.single_end) {
    report.reason = "divisor condition fails at a marked point";
  } else if (report.gauss_map_at_end && !*report.gauss_map_at_end) {
    report.reason = "|g| tends to 1 at the end (sum of 2a_j is 0)";
  } else if (!report.metric_complete) {
    report.reason = "metric is not complete at the end";
  }
  report.complete = report.reason.empty();
  return report;
}

CompletenessReport completeness_check(const WeierstrassData& data) {
  const auto& a = data.config.exponents();
  return completeness_check(std::vector<double>(a.data(), a.data() + a.size()), data.variant);
}

Complex costa_companion_dh_period(double a, int samples) {
  if (samples < 8) throw DomainError("costa_companion_dh_period: too few samples");
  const Complex center(-1.0, 0.0);
  const double radius = 0.5;
  Complex sum{};
  for (int k = 0; k < samples; ++k) {
    const Complex e = std::polar(1.0, 2.0 * kPi * k / samples);
    const Complex z = center + radius * e;
    const Complex dz = kI * radius * e;
    sum += 2.0 * kI * a / (z * z - 1.0) * dz;
  }
  return sum * (2.0 * kPi / samples);
}

}  // namespace maxface
