#include "maxface/functions.hpp"

#include <cmath>

namespace maxface {

namespace {

int marked_index(const MarkedConfiguration& config, Complex z) {
  if (z.imag() != 0.0) return -1;
  const auto& t = config.points();
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (t[k] == z.real()) return static_cast<int>(k);
  }
  return -1;
}

void require_off_marked(const MarkedConfiguration& config, Complex z, const char* what) {
  if (marked_index(config, z) >= 0) {
    throw PoleError(std::string(what) + ": evaluation at a marked point");
  }
}

// prod over k != skip of (z - t_k)^{2a_k}.
Complex rational_product(const MarkedConfiguration& config, Complex z, int skip) {
  Complex num{1.0, 0.0};
  Complex den{1.0, 0.0};
  const auto& t = config.points();
  const auto& a = config.exponents();
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (k == skip) continue;
    if (a[k] > 0) {
      num *= z - t[k];
    } else {
      den *= z - t[k];
    }
  }
  return num / den;
}

}  // namespace

Complex power_product(const Eigen::VectorXd& t, const Eigen::VectorXd& a, Complex z, int skip) {
  double log_modulus = 0.0;
  double phase = 0.0;
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (k == skip || a[k] == 0.0) continue;
    const Complex w = z - t[k];
    if (w == Complex{}) {
      if (a[k] > 0) return Complex{};
      throw PoleError("power product: pole at a marked point");
    }
    log_modulus += a[k] * std::log(std::abs(w));
    phase += a[k] * principal_arg(w);
  }
  return std::polar(std::exp(log_modulus), phase);
}

Complex variant_phase(Variant variant) {
  const Complex e = std::polar(1.0, kPi / 4.0);
  switch (variant) {
    case Variant::Maximal: return e;
    case Variant::Minimal: return std::conj(e);
    case Variant::Companion: return -kI * std::conj(e);
  }
  return e;
}

Complex eval_g(const MarkedConfiguration& config, const SheetPoint& point, Variant variant) {
  if (point.base.imag() < 0.0) {
    throw DomainError("eval_g: point must lie in the closed upper half-plane");
  }
  const Complex value =
      variant_phase(variant) / config.c() *
      power_product(config.points(), config.exponents(), point.base);
  return point.sheet == Sheet::Plus ? value : -value;
}

Complex eval_G(const MarkedConfiguration& config, Complex z) {
  const int k = marked_index(config, z);
  if (k >= 0) {
    if (config.exponents()[k] < 0) throw PoleError("eval_G: pole of G");
    return Complex{};
  }
  const Complex c = config.c();
  return rational_product(config, z, -1) / (c * c);
}

Complex eval_G_prime(const MarkedConfiguration& config, Complex z) {
  const Complex c = config.c();
  const int k = marked_index(config, z);
  if (k >= 0) {
    if (config.exponents()[k] < 0) throw PoleError("eval_G_prime: pole of G");
    return rational_product(config, z, k) / (c * c);
  }
  return eval_G(config, z) * log_derivatives(config, z).l;
}

LogDerivatives log_derivatives(const MarkedConfiguration& config, Complex z) {
  require_off_marked(config, z, "log_derivatives");
  LogDerivatives d{};
  const auto& t = config.points();
  const auto& a = config.exponents();
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    const Complex r = 1.0 / (z - t[k]);
    const double w = 2.0 * a[k];
    d.l += w * r;
    d.dl -= w * r * r;
    d.ddl += 2.0 * w * r * r * r;
    d.dddl -= 6.0 * w * r * r * r * r;
  }
  return d;
}

Complex eval_A(const MarkedConfiguration& config, Complex z) {
  return log_derivatives(config, z).l / (2.0 * config.c());
}

Complex eval_B(const MarkedConfiguration& config, Complex z) {
  const auto d = log_derivatives(config, z);
  if (d.l == Complex{}) throw NotAFrontError("eval_B: G' vanishes");
  return d.dl / (config.c() * d.l);
}

Complex eval_E(const MarkedConfiguration& config, Complex z) {
  const auto d = log_derivatives(config, z);
  if (d.l == Complex{}) throw NotAFrontError("eval_E: G' vanishes");
  return 2.0 * (d.ddl * d.l - d.dl * d.dl) / (config.c() * d.l * d.l * d.l);
}

CriterionDerivatives eval_criterion_derivatives(const MarkedConfiguration& config, Complex z) {
  const auto d = log_derivatives(config, z);
  if (d.l == Complex{}) throw NotAFrontError("eval_criterion_derivatives: G' vanishes");
  const Complex c = config.c();
  const Complex n = d.ddl * d.l - d.dl * d.dl;
  const Complex dn = d.dddl * d.l - d.dl * d.ddl;
  const Complex l2 = d.l * d.l;
  return {d.dl / (2.0 * c), n / (c * l2), 2.0 * (dn * d.l - 3.0 * n * d.dl) / (c * l2 * l2)};
}

double eval_H(const MarkedConfiguration& config, Complex z) {
  if (!config.is_symmetric() || !config.exponents_palindromic()) {
    throw DomainError("eval_H: requires a symmetric configuration with a_{-j} = a_j");
  }
  require_off_marked(config, z, "eval_H");
  Complex sum = 2.0 * config.exponent(0) / z;
  for (int k = 1; k <= config.genus(); ++k) {
    const double tk = config.point(k);
    sum += 4.0 * config.exponent(k) * z / (z * z - tk * tk);
  }
  return (sum / (2.0 * config.c())).real();
}

Complex eval_M(const MarkedConfiguration& config, Complex z) {
  require_off_marked(config, z, "eval_M");
  const auto& t = config.points();
  const auto& a = config.exponents();
  const Complex all = rational_product(config, z, -1);
  Complex sum{};
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    sum += 2.0 * a[k] * all / (z - t[k]);
  }
  return sum;
}

Complex eval_M_prime(const MarkedConfiguration& config, Complex z) {
  const auto d = log_derivatives(config, z);
  const Complex c = config.c();
  return c * c * eval_G(config, z) * (d.l * d.l + d.dl);
}

Complex eval_B_via_M(const MarkedConfiguration& config, Complex z) {
  const Complex G = eval_G(config, z);
  const Complex Gp = eval_G_prime(config, z);
  if (Gp == Complex{}) throw NotAFrontError("eval_B_via_M: G' vanishes");
  const Complex M = eval_M(config, z);
  const Complex Mp = eval_M_prime(config, z);
  const Complex c = config.c();
  return (Mp * G - M * Gp) / (c * c * c * G * Gp);
}

}  // namespace maxface
