#include "maxface/singular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "maxface/functions.hpp"

namespace maxface {

std::string to_string(Enclosure e) {
  switch (e) {
    case Enclosure::ZeroOfG: return "zero";
    case Enclosure::PoleOfG: return "pole";
    case Enclosure::Mixed: return "mixed";
  }
  return "mixed";
}

std::string to_string(SingularityType t) {
  switch (t) {
    case SingularityType::CuspidalEdge: return "cuspidal_edge";
    case SingularityType::Swallowtail: return "swallowtail";
    case SingularityType::CuspidalButterfly: return "cuspidal_butterfly";
    case SingularityType::SpecialType1: return "special_type_1";
    case SingularityType::CuspidalS1Minus: return "cuspidal_s1_minus";
    case SingularityType::SpecialType2: return "special_type_2";
    case SingularityType::CuspidalCrossCap: return "cuspidal_crosscap";
    case SingularityType::NotAFront: return "not_a_front";
  }
  return "not_a_front";
}

namespace {

// log|G(z)|
double level(const MarkedConfiguration& cfg, Complex z) {
  const auto& t = cfg.points();
  const auto& a = cfg.exponents();
  double s = -2.0 * std::log(std::abs(cfg.c()));
  for (Eigen::Index k = 0; k < t.size(); ++k) s += 2.0 * a[k] * std::log(std::abs(z - t[k]));
  return s;
}

// G'/G; the gradient of log|G| is its conjugate.
Complex log_slope(const MarkedConfiguration& cfg, Complex z) {
  const auto& t = cfg.points();
  const auto& a = cfg.exponents();
  Complex s{};
  for (Eigen::Index k = 0; k < t.size(); ++k) s += 2.0 * a[k] / (z - t[k]);
  return s;
}

double refine_real_root(const MarkedConfiguration& cfg, double lo, double hi) {
  double flo = level(cfg, lo);
  for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi);
       ++i) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    const double fm = level(cfg, m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

int guaranteed_crossings(const MarkedConfiguration& cfg) {
  const auto& a = cfg.exponents();
  const int n = static_cast<int>(a.size());
  int count = 0;
  int twice_sum = 0;
  for (int k = 0; k < n; ++k) twice_sum += a[k] > 0 ? 1 : -1;
  for (int k = 0; k + 1 < n; ++k) count += (a[k] > 0) != (a[k + 1] > 0);
  // At infinity |G| ~ |x|^{sum 2a}; an end interval must cross if its marked end behaves the
  // other way.
  if (twice_sum != 0) {
    const bool decays = twice_sum < 0;
    count += decays == (a[0] < 0);
    count += decays == (a[n - 1] < 0);
  }
  return count;
}

bool alternating(const MarkedConfiguration& cfg) {
  const auto& a = cfg.exponents();
  for (Eigen::Index k = 0; k + 1 < a.size(); ++k) {
    if ((a[k] > 0) == (a[k + 1] > 0)) return false;
  }
  return true;
}

// Newton on log|G| along the gradient.
bool correct(const MarkedConfiguration& cfg, Complex& z, double tol) {
  for (int it = 0; it < 12; ++it) {
    const double f = level(cfg, z);
    if (std::abs(f) < tol) return true;
    const Complex grad = std::conj(log_slope(cfg, z));
    const double g2 = std::norm(grad);
    if (!(g2 > 0.0) || !std::isfinite(f)) return false;
    z -= f * grad / g2;
  }
  return std::abs(level(cfg, z)) < tol;
}

double length_scale(const MarkedConfiguration& cfg) { return std::min(1.0, cfg.min_gap()); }

struct Tracer {
  const MarkedConfiguration& cfg;
  const TraceOptions& opt;
  bool degenerate = false;

  // Unit tangent at z aligned with `previous`.
  Complex tangent(Complex z, Complex previous) {
    const Complex l = log_slope(cfg, z);
    if (std::abs(l) < 1e-10) {
      degenerate = true;
      return previous;
    }
    Complex t = kI * std::conj(l) / std::abs(l);
    if ((t * std::conj(previous)).real() < 0.0) t = -t;
    return t;
  }

  // One accepted predictor-corrector step from z along dir; h is adapted in place.
  Complex step(Complex z, Complex& dir, double& h) {
    while (true) {
      if (h < opt.min_step) throw PathError("singular tracer: step size underflow");
      Complex next = z + h * dir;
      const bool ok = correct(cfg, next, opt.level_tolerance);
      if (ok && std::abs(next - (z + h * dir)) < 0.25 * h) {
        const Complex nd = tangent(next, dir);
        const double turn = std::abs(std::arg(nd * std::conj(dir)));
        if (turn < opt.max_turn) {
          dir = nd;
          if (turn < 0.3 * opt.max_turn) h = std::min(1.5 * h, opt.max_step * length_scale(cfg));
          return next;
        }
      }
      h *= 0.5;
    }
  }
};

// Root of log|G| on the real axis near x0 within [x0 - r, x0 + r].
double real_landing(const MarkedConfiguration& cfg, double x0, double r) {
  double lo = x0 - r, hi = x0 + r;
  for (int expand = 0; expand < 20; ++expand) {
    if ((level(cfg, lo) < 0.0) != (level(cfg, hi) < 0.0)) return refine_real_root(cfg, lo, hi);
    lo -= r;
    hi += r;
  }
  throw PathError("singular tracer: lost the real axis crossing");
}

std::vector<Complex> upper_arc(const MarkedConfiguration& cfg, double seed, const TraceOptions& opt,
                               double& landing, bool& degenerate) {
  Tracer tr{cfg, opt};
  std::vector<Complex> arc{Complex(seed, 0.0)};
  Complex z(seed, 0.0);
  Complex dir = tr.tangent(z, kI);
  if (dir.imag() <= 0.0) dir = kI;
  double h = opt.initial_step * length_scale(cfg);
  for (int n = 0; n < opt.max_steps; ++n) {
    const Complex next = tr.step(z, dir, h);
    if (next.imag() <= 0.0) {
      const double s = z.imag() / (z.imag() - next.imag());
      const double x0 = z.real() + s * (next.real() - z.real());
      landing = real_landing(cfg, x0, std::max(1e-9, 0.25 * std::abs(next - z)));
      arc.emplace_back(landing, 0.0);
      degenerate = tr.degenerate;
      return arc;
    }
    arc.push_back(next);
    z = next;
  }
  throw PathError("singular tracer: step budget exhausted");
}

double signed_area(const std::vector<Complex>& pts) {
  double s = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Complex a = pts[k], b = pts[(k + 1) % pts.size()];
    s += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * s;
}

bool inside(const std::vector<Complex>& poly, Complex p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Complex a = poly[i], b = poly[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (p.real() < x) in = !in;
    }
  }
  return in;
}

void label(const MarkedConfiguration& cfg, SingularCurve& curve) {
  if (signed_area(curve.points) < 0.0) std::reverse(curve.points.begin(), curve.points.end());
  const auto& t = cfg.points();
  const auto& a = cfg.exponents();
  int zeros = 0, poles = 0;
  curve.enclosed.clear();
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    bool in;
    if (curve.real_crossings.size() == 2) {
      in = curve.real_crossings[0] < t[k] && t[k] < curve.real_crossings[1];
    } else {
      in = inside(curve.points, Complex(t[k], 0.0));
    }
    if (!in) continue;
    curve.enclosed.push_back(static_cast<int>(k));
    (a[k] > 0 ? zeros : poles)++;
  }
  if (zeros == 1 && poles == 0) {
    curve.encloses = Enclosure::ZeroOfG;
  } else if (poles == 1 && zeros == 0) {
    curve.encloses = Enclosure::PoleOfG;
  } else {
    curve.encloses = Enclosure::Mixed;
  }
}

double distance_to(const std::vector<SingularCurve>& curves, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const Complex a = c.points[k], b = c.points[(k + 1) % c.points.size()];
      const Complex d = b - a;
      double s = std::norm(d) > 0.0 ? ((z - a) * std::conj(d)).real() / std::norm(d) : 0.0;
      s = std::clamp(s, 0.0, 1.0);
      best = std::min(best, std::abs(z - (a + s * d)));
    }
  }
  return best;
}

}  // namespace

std::vector<double> real_crossings(const MarkedConfiguration& cfg) {
  const auto& t = cfg.points();
  const int n = static_cast<int>(t.size());
  const double span = std::max(1.0, t[n - 1] - t[0]);
  const int samples = 800;
  std::vector<double> roots;
  auto scan = [&](auto&& point) {
    double prev_x = point(1), prev_f = level(cfg, prev_x);
    for (int k = 2; k < samples; ++k) {
      const double x = point(k);
      const double f = level(cfg, x);
      if ((f < 0.0) != (prev_f < 0.0)) {
        roots.push_back(refine_real_root(cfg, std::min(prev_x, x), std::max(prev_x, x)));
      }
      prev_x = x;
      prev_f = f;
    }
  };
  // left end: x = t_{-p} - span * u / (1 - u)
  scan([&](int k) {
    const double u = static_cast<double>(samples - k) / samples;
    return t[0] - span * (u / (1.0 - u + 1e-7));
  });
  for (int j = 0; j + 1 < n; ++j) {
    scan([&](int k) {
      const double s = 0.5 * (1.0 - std::cos(kPi * k / samples));
      return t[j] + s * (t[j + 1] - t[j]);
    });
  }
  scan([&](int k) {
    const double u = static_cast<double>(k) / samples;
    return t[n - 1] + span * (u / (1.0 - u + 1e-7));
  });
  std::sort(roots.begin(), roots.end());
  const int bound = guaranteed_crossings(cfg);
  if (static_cast<int>(roots.size()) < bound) {
    throw PropertyViolation("real_crossings: found " + std::to_string(roots.size()) +
                            " real singular points, expected at least " + std::to_string(bound));
  }
  return roots;
}

SingularCurve trace_loop(const MarkedConfiguration& cfg, Complex seed, const TraceOptions& opt) {
  Complex z0 = seed;
  if (!correct(cfg, z0, opt.level_tolerance)) throw PathError("trace_loop: seed is not near the level set");
  Tracer tr{cfg, opt};
  SingularCurve curve;
  curve.points.push_back(z0);
  Complex z = z0;
  Complex dir = tr.tangent(z, kI);
  double h = opt.initial_step * length_scale(cfg);
  double travelled = 0.0;
  for (int n = 0; n < opt.max_steps; ++n) {
    const Complex next = tr.step(z, dir, h);
    travelled += std::abs(next - z);
    if (travelled > 4.0 * h) {
      const Complex d = next - z;
      double s = ((z0 - z) * std::conj(d)).real() / std::norm(d);
      s = std::clamp(s, 0.0, 1.0);
      if (std::abs(z0 - (z + s * d)) < 0.5 * std::abs(d)) {
        curve.degenerate = tr.degenerate;
        for (auto p : curve.points) {
          if (p.imag() == 0.0) curve.real_crossings.push_back(p.real());
        }
        label(cfg, curve);
        return curve;
      }
    }
    curve.points.push_back(next);
    z = next;
  }
  throw PathError("trace_loop: step budget exhausted");
}

SingularCurve trace_component(const MarkedConfiguration& cfg, double seed, const TraceOptions& opt) {
  if (std::abs(level(cfg, seed)) > 1e-8) throw DomainError("trace_component: seed is not a real crossing");
  SingularCurve curve;
  double landing = 0.0;
  auto arc = upper_arc(cfg, seed, opt, landing, curve.degenerate);
  curve.points = arc;
  for (std::size_t k = arc.size() - 2; k >= 1; --k) curve.points.push_back(std::conj(arc[k]));
  curve.real_crossings = {std::min(seed, landing), std::max(seed, landing)};
  label(cfg, curve);
  return curve;
}

std::vector<SingularCurve> components(const MarkedConfiguration& cfg, const ComponentOptions& opt) {
  const auto crossings = real_crossings(cfg);
  std::vector<SingularCurve> out;
  std::vector<bool> used(crossings.size(), false);
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    if (used[i]) continue;
    auto curve = trace_component(cfg, crossings[i], opt.trace);
    for (double x : curve.real_crossings) {
      bool matched = false;
      for (std::size_t j = 0; j < crossings.size(); ++j) {
        if (std::abs(crossings[j] - x) <= 1e-7 * (1.0 + std::abs(x))) {
          used[j] = true;
          matched = true;
        }
      }
      if (!matched) throw PropertyViolation("components: a traced loop met the axis at an unlisted point");
    }
    out.push_back(std::move(curve));
  }

  if (opt.scan_for_extra_loops) {
    const auto& t = cfg.points();
    const double span = t[t.size() - 1] - t[0];
    const double margin = 2.0 + 0.5 * span;
    const double x0 = t[0] - margin, x1 = t[t.size() - 1] + margin;
    const double y1 = margin;
    const double dx = (x1 - x0) / opt.scan_columns, dy = y1 / opt.scan_rows;
    std::vector<double> f((opt.scan_columns + 1) * (opt.scan_rows + 1));
    auto at = [&](int i, int j) -> double& { return f[j * (opt.scan_columns + 1) + i]; };
    for (int j = 0; j <= opt.scan_rows; ++j) {
      for (int i = 0; i <= opt.scan_columns; ++i) at(i, j) = level(cfg, Complex(x0 + i * dx, (j + 0.5) * dy));
    }
    const double reach = 2.0 * std::hypot(dx, dy);
    for (int j = 0; j < opt.scan_rows; ++j) {
      for (int i = 0; i < opt.scan_columns; ++i) {
        const double v[4] = {at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)};
        bool pos = false, neg = false;
        for (double x : v) (x < 0.0 ? neg : pos) = true;
        if (!(pos && neg)) continue;
        const Complex center(x0 + (i + 0.5) * dx, (j + 1.0) * dy);
        if (distance_to(out, center) < reach) continue;
        Complex seed = center;
        if (!correct(cfg, seed, opt.trace.level_tolerance) || seed.imag() <= 0.0) continue;
        if (distance_to(out, seed) < reach) continue;
        auto loop = trace_loop(cfg, seed, opt.trace);
        SingularCurve mirror = loop;
        for (auto& p : mirror.points) p = std::conj(p);
        label(cfg, mirror);
        out.push_back(std::move(loop));
        out.push_back(std::move(mirror));
      }
    }
  }

  for (std::size_t k = 0; k < out.size(); ++k) out[k].component_id = static_cast<int>(k);
  const bool degenerate =
      std::any_of(out.begin(), out.end(), [](const SingularCurve& c) { return c.degenerate; });
  if (alternating(cfg) && !degenerate && static_cast<int>(out.size()) != cfg.genus() + 1) {
    throw PropertyViolation("components: found " + std::to_string(out.size()) +
                            " singular loops, expected p+1 = " + std::to_string(cfg.genus() + 1));
  }
  return out;
}

SingularPointRecord classify_point(Complex z, Complex A, Complex B, Complex E, double tau) {
  SingularPointRecord r;
  r.z = z;
  r.A = A;
  r.B = B;
  r.E = E;
  if (std::abs(A) < tau) {
    r.classification = SingularityType::NotAFront;
    return r;
  }
  const bool re_zero = std::abs(A.real()) < tau;
  const bool im_zero = std::abs(A.imag()) < tau;
  if (!re_zero && !im_zero) {
    r.classification = SingularityType::CuspidalEdge;
    return r;
  }
  if (im_zero) {
    r.vanishing = Vanishing::ImA;
    if (std::abs(B.real()) >= tau) {
      r.classification = SingularityType::Swallowtail;
    } else if (std::abs(E.imag()) >= tau) {
      r.classification = SingularityType::CuspidalButterfly;
      r.borderline = true;
      r.alternative = SingularityType::Swallowtail;
    } else {
      r.classification = SingularityType::SpecialType1;
      r.borderline = true;
      r.alternative = SingularityType::CuspidalButterfly;
    }
  } else {
    r.vanishing = Vanishing::ReA;
    if (std::abs(B.imag()) >= tau) {
      r.classification = SingularityType::CuspidalCrossCap;
    } else if (std::abs(E.real()) >= tau) {
      r.classification = SingularityType::CuspidalS1Minus;
      r.borderline = true;
      r.alternative = SingularityType::CuspidalCrossCap;
    } else {
      r.classification = SingularityType::SpecialType2;
      r.borderline = true;
      r.alternative = SingularityType::CuspidalS1Minus;
    }
  }
  return r;
}

namespace {

SingularPointRecord record_at(const MarkedConfiguration& cfg, Complex z, double tau) {
  const Complex A = eval_A(cfg, z);
  Complex B{std::nan(""), 0.0}, E{std::nan(""), 0.0};
  try {
    B = eval_B(cfg, z);
    E = eval_E(cfg, z);
  } catch (const NotAFrontError&) {
  }
  return classify_point(z, A, B, E, tau);
}

// Point of the curve where `field` changes sign between polyline points a and b.
template <class Field>
Complex refine_event(const MarkedConfiguration& cfg, Complex a, Complex b, Field field) {
  auto project = [&](double s) {
    Complex z = a + s * (b - a);
    correct(cfg, z, 1e-13);
    return z;
  };
  double lo = 0.0, hi = 1.0;
  const bool neg_lo = field(a) < 0.0;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi);
    if ((field(project(m)) < 0.0) == neg_lo) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return project(0.5 * (lo + hi));
}

}  // namespace

ClassificationReport classify(const MarkedConfiguration& cfg, const SingularCurve& curve, double tau) {
  ClassificationReport report;
  const auto& pts = curve.points;
  const std::size_t n = pts.size();
  auto re_a = [&](Complex z) { return eval_A(cfg, z).real(); };
  auto im_a = [&](Complex z) { return eval_A(cfg, z).imag(); };
  std::vector<Complex> A(n);
  for (std::size_t k = 0; k < n; ++k) A[k] = eval_A(cfg, pts[k]);

  auto add_event = [&](Complex z, Vanishing which) {
    auto r = record_at(cfg, z, tau);
    // the refined zero decides which row applies even if the other part is small as well
    if (r.classification != SingularityType::NotAFront && r.vanishing != which) {
      const Complex fake_A = which == Vanishing::ReA ? Complex(0.0, r.A.imag()) : Complex(r.A.real(), 0.0);
      r = classify_point(z, fake_A, r.B, r.E, tau);
      r.A = eval_A(cfg, z);
    }
    if (r.classification == SingularityType::NotAFront) {
      report.not_a_front++;
    } else if (which == Vanishing::ReA && std::abs(r.A.imag()) >= tau) {
      report.re_a_zero++;
    } else if (which == Vanishing::ImA && std::abs(r.A.real()) >= tau) {
      report.im_a_zero++;
    }
    report.special.push_back(r);
  };

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = (k + 1) % n;
    if (A[k].real() == 0.0) {
      add_event(pts[k], Vanishing::ReA);
    } else if (A[k].real() * A[m].real() < 0.0) {
      add_event(refine_event(cfg, pts[k], pts[m], re_a), Vanishing::ReA);
    }
    if (A[k].imag() == 0.0) {
      add_event(pts[k], Vanishing::ImA);
    } else if (A[k].imag() * A[m].imag() < 0.0) {
      add_event(refine_event(cfg, pts[k], pts[m], im_a), Vanishing::ImA);
    }
    if (std::abs(A[k].real()) >= tau && std::abs(A[k].imag()) >= tau) {
      report.samples.push_back(record_at(cfg, pts[k], tau));
    }
  }
  return report;
}

int winding_of_G(const MarkedConfiguration& cfg, const SingularCurve& curve) {
  const auto& pts = curve.points;
  double total = 0.0;
  Complex prev = eval_G(cfg, pts[0]);
  for (std::size_t k = 1; k <= pts.size(); ++k) {
    const Complex cur = eval_G(cfg, pts[k % pts.size()]);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

std::vector<ZeroLocus> intersect_zero_loci(const MarkedConfiguration& cfg, const SingularCurve& curve,
                                           int resolution) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (auto p : curve.points) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  const double pad = std::max(0.1, 0.25 * std::max(x1 - x0, y1 - y0));
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const int n = resolution;
  const double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
  // offset by a fraction of a cell so that grid nodes miss the marked points and the axis
  auto node = [&](int i, int j) { return Complex(x0 + (i + 0.3141) * dx, y0 + (j + 0.2718) * dy); };

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Complex> A((n + 1) * (n + 1)), B((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const Complex z = node(i, j);
      Complex a{nan, nan}, b{nan, nan};
      try {
        a = eval_A(cfg, z);
        b = eval_B(cfg, z);
      } catch (const Error&) {
      }
      A[j * (n + 1) + i] = a;
      B[j * (n + 1) + i] = b;
    }
  }

  struct Field {
    const char* name;
    std::function<double(int)> grid;
    std::function<double(Complex)> eval;
  };
  auto safe = [&](auto f) {
    return [f, &cfg](Complex z) {
      try {
        return f(cfg, z);
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
  };
  std::vector<Field> fields{
      {"ReA", [&](int k) { return A[k].real(); },
       safe([](const MarkedConfiguration& c, Complex z) { return eval_A(c, z).real(); })},
      {"ImA", [&](int k) { return A[k].imag(); },
       safe([](const MarkedConfiguration& c, Complex z) { return eval_A(c, z).imag(); })},
      {"ReB", [&](int k) { return B[k].real(); },
       safe([](const MarkedConfiguration& c, Complex z) { return eval_B(c, z).real(); })},
  };

  std::vector<ZeroLocus> out;
  for (const auto& field : fields) {
    ZeroLocus locus;
    locus.field = field.name;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int idx[4] = {j * (n + 1) + i, j * (n + 1) + i + 1, (j + 1) * (n + 1) + i + 1,
                            (j + 1) * (n + 1) + i};
        const Complex z[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
        double v[4];
        bool finite = true;
        double vmax = 0.0;
        for (int q = 0; q < 4; ++q) {
          v[q] = field.grid(idx[q]);
          finite = finite && std::isfinite(v[q]);
          vmax = std::max(vmax, std::abs(v[q]));
        }
        if (!finite) continue;
        std::vector<Complex> cut;
        for (int q = 0; q < 4; ++q) {
          const double va = v[q], vb = v[(q + 1) % 4];
          if ((va < 0.0) != (vb < 0.0)) {
            const double s = va / (va - vb);
            cut.push_back(z[q] + s * (z[(q + 1) % 4] - z[q]));
          }
        }
        auto keep = [&](Complex a, Complex b) {
          const double mid = field.eval(0.5 * (a + b));
          if (std::isfinite(mid) && std::abs(mid) <= vmax) locus.segments.push_back({a, b});
        };
        if (cut.size() == 2) {
          keep(cut[0], cut[1]);
        } else if (cut.size() == 4) {
          const double center = field.eval(0.5 * (z[0] + z[2]));
          if ((center < 0.0) == (v[0] < 0.0)) {
            keep(cut[0], cut[3]);
            keep(cut[1], cut[2]);
          } else {
            keep(cut[0], cut[1]);
            keep(cut[2], cut[3]);
          }
        }
      }
    }
    const auto& pts = curve.points;
    for (const auto& seg : locus.segments) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Complex p = pts[k], q = pts[(k + 1) % pts.size()];
        const Complex r = q - p, s = seg.b - seg.a;
        const double den = (std::conj(r) * s).imag();
        if (den == 0.0) continue;
        const double u = (std::conj(seg.a - p) * s).imag() / den;
        const double w = (std::conj(seg.a - p) * r).imag() / den;
        if (u < 0.0 || u >= 1.0 || w < 0.0 || w > 1.0) continue;
        const Complex hit = p + u * r;
        bool dup = false;
        for (auto h : locus.intersections) dup = dup || std::abs(h - hit) < 0.5 * std::min(dx, dy);
        if (!dup) locus.intersections.push_back(hit);
      }
    }
    out.push_back(std::move(locus));
  }
  return out;
}

std::string singular_svg(const MarkedConfiguration& cfg, const std::vector<SingularCurve>& curves,
                         const std::vector<std::vector<ZeroLocus>>& overlays, const SvgOptions& opt) {
  const auto& t = cfg.points();
  double x0 = t[0], x1 = t[t.size() - 1], y0 = 0.0, y1 = 0.0;
  for (const auto& c : curves) {
    for (auto p : c.points) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
  }
  const double pad = 0.1 * std::max({x1 - x0, y1 - y0, 1.0});
  x0 = opt.xmin.value_or(x0 - pad);
  x1 = opt.xmax.value_or(x1 + pad);
  y0 = opt.ymin.value_or(y0 - pad);
  y1 = opt.ymax.value_or(y1 + pad);
  const double sx = opt.width / (x1 - x0), sy = opt.height / (y1 - y0);
  const double s = std::min(sx, sy);
  auto X = [&](double x) { return (x - x0) * s; };
  auto Y = [&](double y) { return (y1 - y) * s; };
  char buf[128];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num((x1 - x0) * s) << "\" height=\""
      << num((y1 - y0) * s) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"0\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(x1)) << "\" y2=\"" << num(Y(0))
      << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    out << "<line x1=\"" << num(X(t[k])) << "\" y1=\"" << num(Y(0) - 5) << "\" x2=\"" << num(X(t[k]))
        << "\" y2=\"" << num(Y(0) + 5) << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(X(t[k]) + 2) << "\" y=\"" << num(Y(0) + 16)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">" << num(t[k]) << "</text>\n";
  }
  const char* colours[] = {"black", "red", "orange"};
  for (const auto& loci : overlays) {
    for (const auto& locus : loci) {
      const char* colour = locus.field == "ReA" ? colours[0] : locus.field == "ImA" ? colours[1] : colours[2];
      out << "<path fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"0.8\" d=\"";
      for (const auto& seg : locus.segments) {
        out << "M" << num(X(seg.a.real())) << " " << num(Y(seg.a.imag())) << "L" << num(X(seg.b.real()))
            << " " << num(Y(seg.b.imag()));
      }
      out << "\"/>\n";
    }
  }
  for (const auto& c : curves) {
    out << "<polygon fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
    for (auto p : c.points) out << num(X(p.real())) << "," << num(Y(p.imag())) << " ";
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace maxface
