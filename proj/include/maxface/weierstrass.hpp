#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxface/configuration.hpp"
#include "maxface/functions.hpp"
#include "maxface/quadrature.hpp"

namespace maxface {

/// Weierstrass data on the hyperelliptic cover branched at the marked points and infinity.
/// On the upper half-plane sheet
///   g = phase / c * prod (z - t_j)^{a_j},   dh = k c dz,
/// with phase e^{-i pi/4} (Minimal), e^{i pi/4} (Maximal), -i e^{-i pi/4} (Companion) and
/// k = 1, except k = i for the Companion of a Minimal surface.
struct WeierstrassData {
  MarkedConfiguration config;
  Variant variant = Variant::Maximal;

  Complex phase() const { return variant_phase(variant); }
  /// dh / dz.
  Complex dh_factor() const;
  Complex g(const SheetPoint& point) const;
  /// g dh / dz and g^{-1} dh / dz on the Plus sheet.
  Complex g_dh(Complex z) const;
  Complex ginv_dh(Complex z) const;
  /// Maximal and Companion data close periods as maxfaces, Minimal as a minimal surface.
  bool maximal_convention() const { return variant != Variant::Minimal; }
};

/// Data for `variant` from a configuration whose c is the maxface constant (as returned by
/// solve_reflexive): Maximal keeps c, Minimal uses -i c so that g agrees and dh_max = i dh_min,
/// Companion is companion() of that Minimal data.
WeierstrassData from_reflexive(const MarkedConfiguration& config, Variant variant);

/// g_1 = -i g, dh_1 = i dh. Throws DomainError unless data.variant == Minimal.
WeierstrassData companion(const WeierstrassData& data);

struct LoopPeriod {
  int index = 0;  // j: the loop around [t_j, t_{j+1}]
  Complex g_dh;
  Complex ginv_dh;
  Complex dh;
  /// |int g dh + conj int g^-1 dh| (maximal) or |int g dh - conj int g^-1 dh| (minimal).
  double residual = 0.0;
  double dh_residual = 0.0;  // |Re int dh|
};

struct PeriodReport {
  std::vector<LoopPeriod> loops;
  double scale = 0.0;         // largest |period| over the loops
  double max_residual = 0.0;  // max residual / scale
  double max_dh_residual = 0.0;
};

/// Periods over the lifted loops B_j, j = -p..p-1. Each loop runs from t_{j+1} to t_j on the
/// upper side and back on the lower side of the other sheet; forms odd under the sheet swap
/// (g dh, g^-1 dh) pick up twice the segment integral, dh cancels.
PeriodReport homology_periods(const WeierstrassData& data, const quadrature::Options& opt = {});

/// Normalised closing residual max_j residual_j / scale.
double period_residual(const WeierstrassData& data, const quadrature::Options& opt = {});

/// Orders of g, dh, g dh and g^-1 dh at a branch point of the cover (local parameter w with
/// z - t_j = w^2, or z = w^-2 at infinity).
struct PointDivisor {
  std::optional<int> index;  // nullopt for infinity
  int order_g = 0;
  int order_dh = 0;
  int order_g_dh = 0;
  int order_ginv_dh = 0;
};

struct DivisorReport {
  std::vector<PointDivisor> points;  // t_{-p..p}, then infinity
  /// Every zero or pole of g away from the end is a zero of dh of the same order, and dh has
  /// no other zeros.
  bool divisor_condition = false;
};

DivisorReport divisors(const std::vector<double>& exponents);
DivisorReport divisors(const WeierstrassData& data);

struct CompletenessReport {
  bool single_end = false;
  /// |g| != 1 at the end; not evaluated for minimal data.
  std::optional<bool> gauss_map_at_end;
  bool metric_complete = false;
  int order_g_at_end = 0;
  int order_dh_at_end = 0;
  bool enneper_type = false;
  bool complete = false;
  std::string reason;  // empty when complete
};

/// Completeness at the puncture from the exponent data alone. Accepts any list of +-1/2
/// exponents so that non-admissible lists (e.g. sum of 2a_j equal to 0) can be examined.
CompletenessReport completeness_check(const std::vector<double>& exponents, Variant variant);
CompletenessReport completeness_check(const WeierstrassData& data);

/// Companion of the Costa surface: dh_1 = 2ia/(z^2 - 1) dz integrated once around z = -1 on a
/// circle of radius 1/2. Nonzero real part means the period problem fails.
Complex costa_companion_dh_period(double a, int samples = 256);

}  // namespace maxface
