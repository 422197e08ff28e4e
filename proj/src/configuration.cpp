#include "maxface/configuration.hpp"

#include <algorithm>
#include <cmath>

namespace maxface {

std::string to_string(PatternKind kind) {
  return kind == PatternKind::Zigzag ? "zigzag" : "tweezer";
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::Minimal: return "minimal";
    case Variant::Maximal: return "maximal";
    case Variant::Companion: return "companion";
  }
  return "unknown";
}

PatternKind parse_pattern_kind(const std::string& text) {
  if (text == "zigzag") return PatternKind::Zigzag;
  if (text == "tweezer") return PatternKind::Tweezer;
  throw DomainError("unknown pattern kind '" + text + "'");
}

Variant parse_variant(const std::string& text) {
  if (text == "minimal") return Variant::Minimal;
  if (text == "maximal") return Variant::Maximal;
  if (text == "companion") return Variant::Companion;
  throw DomainError("unknown surface variant '" + text + "'");
}

std::vector<double> make_pattern(PatternKind kind, int genus) {
  if (genus < 1) throw DomainError("pattern genus must be at least 1");
  std::vector<double> a(2 * genus + 1);
  for (int j = -genus; j <= genus; ++j) {
    double value;
    if (kind == PatternKind::Zigzag || genus == 1) {
      value = ((j + genus) % 2 == 0) ? -0.5 : 0.5;
    } else if (j == 0) {
      value = (genus % 2 == 1) ? 0.5 : -0.5;
    } else if (std::abs(j) == 1) {
      value = -0.5;
    } else {
      value = ((genus - std::abs(j)) % 2 == 0) ? 0.5 : -0.5;
    }
    a[j + genus] = value;
  }
  return a;
}

namespace {

void validate(const Eigen::VectorXd& t, const Eigen::VectorXd& a, Complex c) {
  if (t.size() != a.size() || t.size() < 3 || t.size() % 2 == 0) {
    throw DomainError("configuration needs 2p+1 points and exponents with p >= 1");
  }
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k])) throw DomainError("marked points must be finite");
    if (k > 0 && !(t[k] > t[k - 1])) throw DomainError("marked points must be strictly increasing");
    if (a[k] != 0.5 && a[k] != -0.5) throw DomainError("exponents must be exactly +1/2 or -1/2");
  }
  if (c == Complex{} || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw DomainError("scale constant c must be finite and nonzero");
  }
}

}  // namespace

MarkedConfiguration MarkedConfiguration::general(const std::vector<double>& points,
                                                 const std::vector<double>& exponents,
                                                 Complex c) {
  MarkedConfiguration m;
  m.points_ = Eigen::Map<const Eigen::VectorXd>(points.data(), points.size());
  m.exponents_ = Eigen::Map<const Eigen::VectorXd>(exponents.data(), exponents.size());
  validate(m.points_, m.exponents_, c);
  m.genus_ = static_cast<int>(points.size() / 2);
  m.c_ = c;
  return m;
}

MarkedConfiguration MarkedConfiguration::symmetric(const std::vector<double>& positive_points,
                                                   const std::vector<double>& exponents,
                                                   Complex c) {
  const int p = static_cast<int>(positive_points.size());
  std::vector<double> t(2 * p + 1, 0.0);
  for (int j = 1; j <= p; ++j) {
    t[p + j] = positive_points[j - 1];
    t[p - j] = -positive_points[j - 1];
  }
  MarkedConfiguration m = general(t, exponents, c);
  m.symmetric_ = true;
  return m;
}

int MarkedConfiguration::weight_at_infinity() const {
  int sum = 0;
  for (int j = -genus_; j <= genus_; ++j) sum += twice_exponent(j);
  return -4 - sum;
}

bool MarkedConfiguration::exponents_palindromic() const {
  for (int j = 1; j <= genus_; ++j) {
    if (exponent(j) != exponent(-j)) return false;
  }
  return true;
}

double MarkedConfiguration::min_gap() const {
  return (points_.tail(points_.size() - 1) - points_.head(points_.size() - 1)).minCoeff();
}

MarkedConfiguration MarkedConfiguration::with_c(Complex c) const {
  MarkedConfiguration m = *this;
  validate(m.points_, m.exponents_, c);
  m.c_ = c;
  return m;
}

}  // namespace maxface
