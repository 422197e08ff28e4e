#pragma once

#include <Eigen/Core>

#include "maxface/configuration.hpp"

namespace maxface {

/// prod_k (z - t_k)^{a_k}, principal branch per factor, omitting array index `skip` (-1: none).
/// Returns 0 at a zero; throws PoleError at a pole.
Complex power_product(const Eigen::VectorXd& t, const Eigen::VectorXd& a, Complex z,
                      int skip = -1);

/// Unit phase of g: e^{i pi/4} maximal, e^{-i pi/4} minimal, -i e^{-i pi/4} companion.
Complex variant_phase(Variant variant);

/// g = phase / c * prod (z - t_j)^{a_j}; the Minus sheet carries the opposite square root.
Complex eval_g(const MarkedConfiguration& config, const SheetPoint& point, Variant variant);

/// G = prod (z - t_j)^{2 a_j} / c^2.
Complex eval_G(const MarkedConfiguration& config, Complex z);
/// Analytic G'; finite at zeros of G.
Complex eval_G_prime(const MarkedConfiguration& config, Complex z);

/// l = G'/G = sum 2a_k/(z - t_k) and its first two derivatives.
struct LogDerivatives {
  Complex l;
  Complex dl;
  Complex ddl;
  Complex dddl;
};
LogDerivatives log_derivatives(const MarkedConfiguration& config, Complex z);

/// A = G'/(2cG).
Complex eval_A(const MarkedConfiguration& config, Complex z);
/// B = (g/g') A'; throws NotAFrontError where G' = 0.
Complex eval_B(const MarkedConfiguration& config, Complex z);
/// E = (g/g') B'; throws NotAFrontError where G' = 0.
Complex eval_E(const MarkedConfiguration& config, Complex z);
/// Analytic z-derivatives of A, B and E.
struct CriterionDerivatives {
  Complex dA;
  Complex dB;
  Complex dE;
};
CriterionDerivatives eval_criterion_derivatives(const MarkedConfiguration& config, Complex z);
/// Re A written through the symmetric form; requires a symmetric configuration.
double eval_H(const MarkedConfiguration& config, Complex z);
/// M = sum_k 2a_k prod_{j != k} (z - t_j)^{2a_j} (z - t_k)^{2a_k - 1} = c^2 G'.
Complex eval_M(const MarkedConfiguration& config, Complex z);
/// M' = c^2 G''.
Complex eval_M_prime(const MarkedConfiguration& config, Complex z);
/// B through (M'G - MG') / (c^3 G G').
Complex eval_B_via_M(const MarkedConfiguration& config, Complex z);

}  // namespace maxface
