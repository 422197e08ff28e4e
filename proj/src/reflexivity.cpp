#include "maxface/reflexivity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "maxface/functions.hpp"

namespace maxface {

std::vector<double> SymmetricShape::lengths() const {
  std::vector<double> L(2 * genus);
  for (int j = 0; j < genus; ++j) {
    L[genus + j] = arms.at(j);
    L[genus - 1 - j] = arms.at(j);
  }
  return L;
}

std::vector<Complex> sc_frame_polygon(const std::vector<double>& lengths,
                                      const std::vector<double>& exponents) {
  const int n = static_cast<int>(exponents.size());
  std::vector<Complex> P(n);
  P[0] = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    double turns = 0.0;
    for (int m = k + 1; m < n; ++m) turns += exponents[m];
    P[k + 1] = P[k] + lengths[k] * std::polar(1.0, kPi * turns);
  }
  return P;
}

std::vector<Complex> SymmetricShape::vertices() const {
  auto P = sc_frame_polygon(lengths(), exponents());
  const Complex lo = P.front(), hi = P.back();
  for (auto& v : P) {
    if (kind == PatternKind::Zigzag) {
      const Complex alpha = Complex(1.0, -1.0) / (hi - lo);
      v = alpha * (v - lo) + kI;
    } else {
      const Complex alpha = Complex(-1.0, -1.0) / std::conj(hi - lo);
      v = alpha * std::conj(v - lo) + kI;
    }
  }
  return P;
}

std::vector<Complex> SymmetricShape::free_vertices() const {
  auto P = vertices();
  return std::vector<Complex>(P.begin() + genus + 1, P.begin() + 2 * genus);
}

SymmetricShape default_shape(PatternKind kind, int genus) {
  if (genus < 1) throw DomainError("default_shape: genus must be at least 1");
  SymmetricShape s{kind, genus, std::vector<double>(genus, 1.0)};
  if (kind == PatternKind::Tweezer && genus >= 2) s.arms[0] = 2.0 * (genus / 2) + 1.0;
  return s;
}

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool on_segment(Complex p, Complex a, Complex b, double tol) {
  return std::min(a.real(), b.real()) - tol <= p.real() &&
         p.real() <= std::max(a.real(), b.real()) + tol &&
         std::min(a.imag(), b.imag()) - tol <= p.imag() &&
         p.imag() <= std::max(a.imag(), b.imag()) + tol;
}

bool segments_meet(Complex a, Complex b, Complex c, Complex d, double eps, double tol) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  auto sgn = [eps](double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); };
  const int s1 = sgn(d1), s2 = sgn(d2), s3 = sgn(d3), s4 = sgn(d4);
  if (s1 * s2 < 0 && s3 * s4 < 0) return true;
  if (s1 == 0 && on_segment(c, a, b, tol)) return true;
  if (s2 == 0 && on_segment(d, a, b, tol)) return true;
  if (s3 == 0 && on_segment(a, c, d, tol)) return true;
  if (s4 == 0 && on_segment(b, c, d, tol)) return true;
  return false;
}

}  // namespace

void check_simple(const std::vector<double>& lengths, const std::vector<double>& exponents) {
  for (double L : lengths) {
    if (!(L > 0.0) || !std::isfinite(L)) throw GeometryError("shape: arm lengths must be positive");
  }
  const auto P = sc_frame_polygon(lengths, exponents);
  const int n = static_cast<int>(P.size());
  double total = 0.0;
  for (double L : lengths) total += L;
  const double R = 10.0 * total + 10.0;
  double all = 0.0;
  for (double a : exponents) all += a;
  // segments: incoming ray, finite edges, outgoing ray (outgoing edge direction is angle 0)
  std::vector<std::pair<Complex, Complex>> seg;
  seg.emplace_back(P[0] - R * std::polar(1.0, kPi * all), P[0]);
  for (int k = 0; k + 1 < n; ++k) seg.emplace_back(P[k], P[k + 1]);
  seg.emplace_back(P[n - 1], P[n - 1] + R);
  const double eps = 1e-9 * total * total;
  for (size_t i = 0; i < seg.size(); ++i) {
    for (size_t j = i + 2; j < seg.size(); ++j) {
      if (segments_meet(seg[i].first, seg[i].second, seg[j].first, seg[j].second, eps,
                        1e-9 * total)) {
        throw GeometryError("shape: boundary self-intersects (edges " + std::to_string(i) +
                            " and " + std::to_string(j) + ")");
      }
    }
  }
}

std::pair<SideLengthTarget, SideLengthTarget> region_targets(const SymmetricShape& shape) {
  if (static_cast<int>(shape.arms.size()) != shape.genus || shape.genus < 1) {
    throw DomainError("region_targets: need one arm length per genus");
  }
  const auto L = shape.lengths();
  check_simple(L, shape.exponents());
  std::vector<double> reversed(L.rbegin(), L.rend());
  return {SideLengthTarget{L, true}, SideLengthTarget{reversed, true}};
}

namespace {

// Exponents of Omega_{G^-1 dh} in its own boundary order: b_j = -a_{-j}.
std::vector<double> reflected_exponents(const std::vector<double>& a) {
  std::vector<double> b(a.rbegin(), a.rend());
  for (auto& x : b) x = -x;
  return b;
}

// Affine renormalisation to t_0 = 0, t_p = 1.
Eigen::VectorXd normalise(const Eigen::VectorXd& t) {
  const int p = static_cast<int>(t.size() / 2);
  return (t.array() - t[p]) / (t[2 * p] - t[p]);
}

Eigen::VectorXd log_gaps(const Eigen::VectorXd& t, const Eigen::VectorXd& s) {
  const Eigen::Index n = t.size() - 1;
  Eigen::VectorXd d(n);
  for (Eigen::Index k = 0; k < n; ++k) d[k] = std::log((t[k + 1] - t[k]) / (s[k + 1] - s[k]));
  return d;
}

}  // namespace

ReflexivityResidual residual(const SymmetricShape& shape, const ReflexivityOptions& opt) {
  auto [first, second] = region_targets(shape);
  const bool sym = opt.exploit_symmetry && opt.gauge == Gauge::CenterAndEnd;
  first.symmetric = sym;
  second.symmetric = sym;
  ParameterSolveOptions inner = opt.inner;
  inner.gauge = opt.gauge;
  const auto a = shape.exponents();
  const auto sol_t = solve_parameters(first, a, inner);
  const auto sol_s = solve_parameters(second, reflected_exponents(a), inner);

  ReflexivityResidual r;
  r.side_residual_Gdh = sol_t.max_relative_error;
  r.side_residual_Ginv_dh = sol_s.max_relative_error;
  r.t = normalise(sol_t.config.points());
  // s_j uniformises Q_j = P_{-j}; the vertex correspondence P_j <-> Q_j compares t_j with s_j.
  r.s = normalise(sol_s.config.points());
  r.scale_t = sol_t.scale;
  r.scale_s = sol_s.scale;
  r.match_residual = (r.t - r.s).cwiseAbs().maxCoeff();
  const int n = static_cast<int>(r.t.size());
  auto ratio = [n](const Eigen::VectorXd& v) {
    return Eigen::VectorXd((v.array() - v[0]) / (v[n - 1] - v[0]));
  };
  r.cross_ratio_residual = (ratio(r.t) - ratio(r.s)).cwiseAbs().maxCoeff();
  r.gap_residual = log_gaps(r.t, r.s).cwiseAbs().maxCoeff();
  r.total = std::max({r.match_residual, r.cross_ratio_residual, r.gap_residual,
                      r.side_residual_Gdh, r.side_residual_Ginv_dh});
  return r;
}

Complex maxface_constant(const ReflexivityResidual& r, const std::vector<double>& exponents) {
  const int n = static_cast<int>(r.t.size());
  // affine fit s = mu t + nu
  Eigen::MatrixXd A(n, 2);
  A.col(0) = r.t;
  A.col(1).setOnes();
  const Eigen::Vector2d fit = A.colPivHouseholderQr().solve(r.s);
  const double mu = fit[0], nu = fit[1];
  const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(exponents.data(), n);
  const Eigen::VectorXd b = -a.reverse();
  const Complex z = kI;
  // The flat forms of the two regions are rescaled to the same shape; K = target / L.
  const double lambda = r.scale_s / r.scale_t;
  const Complex alpha_beta = lambda * power_product(r.t, a, z) *
                             power_product(r.s, b, mu * z + nu) * mu;
  // Both regions are brought into the frame of the period comparison by a quarter turn each.
  Complex c2 = kI * kI * alpha_beta;
  if (std::abs(c2.imag()) <= 1e-10 * std::abs(c2)) c2 = Complex(c2.real(), 0.0);
  Complex c = std::sqrt(c2);
  if (c.real() < 0.0 || (c.real() == 0.0 && c.imag() < 0.0)) c = -c;
  return c;
}

SymmetricShape continue_shape(const SymmetricShape& lower) {
  SymmetricShape s = lower;
  s.genus = lower.genus + 1;
  s.arms.push_back(lower.arms.back());
  try {
    check_simple(s.lengths(), s.exponents());
  } catch (const GeometryError&) {
    return default_shape(s.kind, s.genus);
  }
  return s;
}

ReflexiveSolution solve_reflexive(PatternKind kind, int genus,
                                  const std::optional<SymmetricShape>& initial,
                                  const ReflexiveSolveOptions& opt) {
  if (genus < 1) throw DomainError("solve_reflexive: genus must be at least 1");
  SymmetricShape start = initial ? *initial : default_shape(kind, genus);
  if (start.kind != kind || start.genus != genus ||
      static_cast<int>(start.arms.size()) != genus) {
    throw DomainError("solve_reflexive: initial shape does not match kind and genus");
  }
  const double e0 = start.arms[0];
  auto shape_of = [&](const Eigen::VectorXd& x) {
    SymmetricShape s = start;
    for (int j = 1; j < genus; ++j) s.arms[j] = e0 * std::exp(x[j - 1]);
    return s;
  };
  Eigen::VectorXd best_x;
  double best_norm = std::numeric_limits<double>::infinity();
  ResidualFunction f = [&](const Eigen::VectorXd& x) {
    const auto r = residual(shape_of(x), opt.residual);
    Eigen::VectorXd v = log_gaps(r.t, r.s).tail(genus);
    if (v.norm() < best_norm) {
      best_norm = v.norm();
      best_x = x;
    }
    return v;
  };
  Eigen::VectorXd x0(genus - 1);
  for (int j = 1; j < genus; ++j) x0[j - 1] = std::log(start.arms[j] / e0);

  LeastSquaresOptions lso;
  lso.max_iterations = opt.max_iterations;
  lso.tolerance = opt.target;
  lso.fd_step = opt.fd_step;
  ReflexiveSolution out;
  Eigen::VectorXd x = x0;
  try {
    const auto ls = solve_least_squares(f, x0, lso);
    x = ls.x;
    out.iterations = ls.iterations;
  } catch (const Error&) {
    if (best_x.size() != x0.size()) {
      if (initial) return solve_reflexive(kind, genus, std::nullopt, opt);
      throw;
    }
    x = best_x;
    out.iterations = lso.max_iterations;
  }
  out.shape = shape_of(x);
  try {
    out.residual = residual(out.shape, opt.residual);
  } catch (const Error&) {
    if (best_x.size() != x0.size()) throw;
    out.shape = shape_of(best_x);
    out.residual = residual(out.shape, opt.residual);
  }
  out.reflexive = out.residual.total < opt.tolerance;
  const auto a = out.shape.exponents();
  const Complex c = maxface_constant(out.residual, a);
  std::vector<double> positive(out.residual.t.data() + genus + 1,
                               out.residual.t.data() + 2 * genus + 1);
  out.config = MarkedConfiguration::symmetric(positive, a, c);

  ReflexivityOptions free = opt.residual;
  free.exploit_symmetry = false;
  try {
    const auto r = residual(out.shape, free);
    double dev = 0.0;
    for (int j = 1; j <= genus; ++j) dev = std::max(dev, std::abs(r.t[genus + j] + r.t[genus - j]));
    out.symmetry_deviation = dev;
  } catch (const Error&) {
    out.symmetry_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

SymmetricShape shape_from_vertices(PatternKind kind, const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  if (n < 3 || n % 2 == 0) throw GeometryError("shape_from_vertices: need 2p+1 vertices");
  const int p = n / 2;
  SymmetricShape s{kind, p, std::vector<double>(p)};
  for (int j = 0; j < p; ++j) s.arms[j] = std::abs(v[p + j + 1] - v[p + j]);
  const auto w = s.vertices();
  double scale = 0.0;
  for (auto x : v) scale = std::max(scale, std::abs(x));
  // Compare after mapping both onto the normalised frame (P_{-p}, P_p fixed).
  const Complex target_hi = kind == PatternKind::Zigzag ? Complex(1.0) : Complex(-1.0);
  const Complex alpha = (target_hi - kI) / (v.back() - v.front());
  for (int k = 0; k < n; ++k) {
    const Complex mapped = alpha * (v[k] - v.front()) + kI;
    if (std::abs(mapped - w[k]) > 1e-9 * (1.0 + std::abs(w[k]))) {
      throw GeometryError("shape_from_vertices: vertices do not form a symmetric " + to_string(kind));
    }
  }
  return s;
}

SymmetricShape tweezer_to_zigzag(const SymmetricShape& tweezer) {
  if (tweezer.kind != PatternKind::Tweezer) throw DomainError("tweezer_to_zigzag: need a tweezer");
  auto P = tweezer.vertices();
  const int p = tweezer.genus;
  for (int j = 1; j <= p; ++j) P[p + j] = -P[p + j];
  P[p] *= (p % 2 == 0) ? kI : -kI;
  return shape_from_vertices(PatternKind::Zigzag, P);
}

SymmetricShape zigzag_to_tweezer(const SymmetricShape& zigzag) {
  if (zigzag.kind != PatternKind::Zigzag) throw DomainError("zigzag_to_tweezer: need a zigzag");
  auto Q = zigzag.vertices();
  const int p = zigzag.genus;
  for (int j = 1; j <= p; ++j) Q[p + j] = -Q[p + j];
  Q[p] *= (p % 2 == 0) ? -kI : kI;
  return shape_from_vertices(PatternKind::Tweezer, Q);
}

}  // namespace maxface
