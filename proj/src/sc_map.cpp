#include "maxface/sc_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxface/functions.hpp"

namespace maxface {

namespace {

int marked_at(const Eigen::VectorXd& t, Complex z) {
  if (z.imag() != 0.0) return -1;
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (t[k] == z.real()) return static_cast<int>(k);
  }
  return -1;
}

double clearance(const Eigen::VectorXd& t, int k) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index m = 0; m < t.size(); ++m) {
    if (m != k) best = std::min(best, std::abs(t[m] - t[k]));
  }
  return best;
}

quadrature::EndpointFactor endpoint(const Eigen::VectorXd& t, const Eigen::VectorXd& a, Complex z) {
  const int k = marked_at(t, z);
  if (k < 0 || a[k] == 0.0) return {};
  return {k, a[k], z, clearance(t, k)};
}

}  // namespace

Complex sc_integral(const Eigen::VectorXd& t, const Eigen::VectorXd& a, Complex from, Complex to,
                    const quadrature::Options& opt) {
  if (from.imag() < 0.0 || to.imag() < 0.0) {
    throw PathError("sc_integral: path leaves the closed upper half-plane");
  }
  if (from == to) return Complex{};
  if (from.imag() == 0.0 && to.imag() == 0.0) {
    const double lo = std::min(from.real(), to.real());
    const double hi = std::max(from.real(), to.real());
    for (Eigen::Index k = 0; k < t.size(); ++k) {
      if (t[k] > lo && t[k] < hi) throw PathError("sc_integral: path runs through a marked point");
    }
  }
  auto integrand = [&](Complex z, int skip) { return power_product(t, a, z, skip); };
  return quadrature::integrate_segment(integrand, from, to, endpoint(t, a, from),
                                       endpoint(t, a, to), opt)
      .value;
}

Complex sc_integral(const MarkedConfiguration& config, Complex from, Complex to,
                    const quadrature::Options& opt) {
  return sc_integral(config.points(), config.exponents(), from, to, opt);
}

std::vector<Complex> vertex_images(const Eigen::VectorXd& t, const Eigen::VectorXd& a,
                                   const quadrature::Options& opt) {
  const int n = static_cast<int>(t.size());
  const int p = n / 2;
  std::vector<Complex> P(n);
  P[p] = sc_integral(t, a, kI, t[p], opt);
  for (int k = p; k + 1 < n; ++k) P[k + 1] = P[k] + sc_integral(t, a, t[k], t[k + 1], opt);
  for (int k = p; k > 0; --k) P[k - 1] = P[k] - sc_integral(t, a, t[k - 1], t[k], opt);
  return P;
}

std::vector<Complex> vertex_images(const MarkedConfiguration& config,
                                   const quadrature::Options& opt) {
  return vertex_images(config.points(), config.exponents(), opt);
}

OrthoDisk make_ortho_disk(const MarkedConfiguration& config, double quad_tolerance) {
  quadrature::Options opt;
  opt.rel_tol = quad_tolerance;
  return {config, vertex_images(config, opt), kI, quad_tolerance};
}

double angle_at_infinity(const MarkedConfiguration& config) {
  return (config.weight_at_infinity() + 2) * kPi / 2.0;
}

std::vector<double> angle_check(const OrthoDisk& disk) {
  const auto& cfg = disk.config;
  const int p = cfg.genus();
  const auto& t = cfg.points();
  const auto& a = cfg.exponents();
  std::vector<Complex> dirs;
  dirs.push_back(power_product(t, a, t[0] - 1.0));
  for (int j = -p; j < p; ++j) dirs.push_back(disk.vertex(j + 1) - disk.vertex(j));
  dirs.push_back(power_product(t, a, t[2 * p] + 1.0));

  std::vector<double> angles;
  for (int j = -p; j <= p; ++j) {
    const Complex in = dirs[j + p];
    const Complex out = dirs[j + p + 1];
    const double turn = std::arg(out / in);
    double angle = kPi - turn;
    if (angle < 0.0) angle += 2.0 * kPi;
    const double expected = (cfg.exponent(j) + 1.0) * kPi;
    const bool near_right = std::abs(angle - kPi / 2.0) <= 1e-6;
    const bool near_reflex = std::abs(angle - 1.5 * kPi) <= 1e-6;
    if (!near_right && !near_reflex) {
      throw GeometryError("angle_check: interior angle at vertex " + std::to_string(j) +
                          " is neither pi/2 nor 3pi/2");
    }
    if (std::abs(angle - expected) > 1e-6) {
      throw GeometryError("angle_check: interior angle at vertex " + std::to_string(j) +
                          " disagrees with its exponent");
    }
    angles.push_back(angle);
  }
  return angles;
}

std::vector<double> side_lengths(const Eigen::VectorXd& t, const Eigen::VectorXd& a,
                                 const quadrature::Options& opt) {
  std::vector<double> L;
  for (Eigen::Index k = 0; k + 1 < t.size(); ++k) {
    L.push_back(std::abs(sc_integral(t, a, t[k], t[k + 1], opt)));
  }
  return L;
}

namespace {

// Positive gaps from log-variables, normalised to sum to `total`; the first gap has log 0.
Eigen::VectorXd gaps_from_logs(const Eigen::VectorXd& x, int count, double total) {
  Eigen::VectorXd g(count);
  g[0] = 1.0;
  for (int i = 1; i < count; ++i) g[i] = std::exp(x[i - 1]);
  return g * (total / g.sum());
}

struct Layout {
  int p;
  bool symmetric;
  Gauge gauge;

  int unknowns() const {
    if (symmetric) return p - 1;
    return gauge == Gauge::Ends ? 2 * p - 1 : 2 * p - 1;
  }

  Eigen::VectorXd points(const Eigen::VectorXd& x) const {
    Eigen::VectorXd t(2 * p + 1);
    if (symmetric) {
      const Eigen::VectorXd g = gaps_from_logs(x, p, 1.0);
      t[p] = 0.0;
      for (int j = 1; j <= p; ++j) {
        t[p + j] = t[p + j - 1] + g[j - 1];
        t[p - j] = -t[p + j];
      }
      t[2 * p] = 1.0;
      t[0] = -1.0;
    } else if (gauge == Gauge::Ends) {
      const Eigen::VectorXd g = gaps_from_logs(x, 2 * p, 2.0);
      t[0] = -1.0;
      for (int k = 1; k <= 2 * p; ++k) t[k] = t[k - 1] + g[k - 1];
      t[2 * p] = 1.0;
    } else {
      const Eigen::VectorXd right = gaps_from_logs(x.head(p - 1), p, 1.0);
      t[p] = 0.0;
      for (int j = 1; j <= p; ++j) t[p + j] = t[p + j - 1] + right[j - 1];
      t[2 * p] = 1.0;
      for (int j = 1; j <= p; ++j) t[p - j] = t[p - j + 1] - std::exp(x[p - 1 + j - 1]);
    }
    return t;
  }

  Eigen::VectorXd initial(const Eigen::VectorXd& t0) const {
    Eigen::VectorXd x(unknowns());
    if (symmetric) {
      for (int i = 1; i < p; ++i) x[i - 1] = std::log((t0[p + i + 1] - t0[p + i]) / (t0[p + 1] - t0[p]));
    } else if (gauge == Gauge::Ends) {
      for (int k = 1; k < 2 * p; ++k) x[k - 1] = std::log((t0[k + 1] - t0[k]) / (t0[1] - t0[0]));
    } else {
      for (int i = 1; i < p; ++i) x[i - 1] = std::log((t0[p + i + 1] - t0[p + i]) / (t0[p + 1] - t0[p]));
      for (int j = 1; j <= p; ++j) x[p - 1 + j - 1] = std::log(t0[p - j + 1] - t0[p - j]);
    }
    return x;
  }
};

}  // namespace

ParameterSolution solve_parameters(const SideLengthTarget& target,
                                   const std::vector<double>& exponents,
                                   const ParameterSolveOptions& opt) {
  const int n = static_cast<int>(exponents.size());
  if (n < 3 || n % 2 == 0) throw DomainError("solve_parameters: need 2p+1 exponents");
  const int p = n / 2;
  if (static_cast<int>(target.lengths.size()) != 2 * p) {
    throw DomainError("solve_parameters: need 2p target lengths");
  }
  for (double L : target.lengths) {
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("solve_parameters: lengths must be positive");
  }
  const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(exponents.data(), n);
  if (target.symmetric) {
    for (int k = 0; k < p; ++k) {
      if (std::abs(target.lengths[k] - target.lengths[2 * p - 1 - k]) >
          1e-12 * target.lengths[k]) {
        throw DomainError("solve_parameters: symmetric target must be palindromic");
      }
      if (a[k] != a[2 * p - k]) throw DomainError("solve_parameters: symmetric target needs a_{-j} = a_j");
    }
  }

  const Layout layout{p, target.symmetric, opt.gauge};
  quadrature::Options qopt;
  qopt.rel_tol = opt.quad_tolerance;

  Eigen::VectorXd logL(2 * p);
  for (int k = 0; k < 2 * p; ++k) logL[k] = std::log(target.lengths[k]);
  // Symmetric solves only match the independent half of the edges.
  const int first = target.symmetric ? p : 0;
  const int rows = 2 * p - first;

  auto mismatch = [&](const Eigen::VectorXd& t) {
    const std::vector<double> L = side_lengths(t, a, qopt);
    Eigen::VectorXd d(rows);
    for (int k = 0; k < rows; ++k) d[k] = std::log(L[first + k]) - logL[first + k];
    return d;
  };
  ResidualFunction residual = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd d = mismatch(layout.points(x));
    return Eigen::VectorXd(d.array() - d.mean());
  };

  Eigen::VectorXd t0(2 * p + 1);
  for (int k = 0; k <= 2 * p; ++k) t0[k] = static_cast<double>(k - p) / p;
  auto result = solve_least_squares(residual, layout.initial(t0), opt.solver);

  const Eigen::VectorXd t = layout.points(result.x);
  const Eigen::VectorXd d = mismatch(t);
  const double log_scale = -d.mean();
  const double max_rel = (d.array() + log_scale).abs().maxCoeff();
  if (!(max_rel <= opt.length_tolerance)) {
    throw SolverError("solve_parameters: side lengths not matched", max_rel);
  }
  ParameterSolution out;
  out.config = MarkedConfiguration::general(std::vector<double>(t.data(), t.data() + t.size()),
                                            exponents, 1.0);
  if (target.symmetric) {
    out.config = MarkedConfiguration::symmetric(
        std::vector<double>(t.data() + p + 1, t.data() + 2 * p + 1), exponents, 1.0);
  }
  out.scale = std::exp(log_scale);
  out.max_relative_error = max_rel;
  out.iterations = result.iterations;
  return out;
}

}  // namespace maxface
