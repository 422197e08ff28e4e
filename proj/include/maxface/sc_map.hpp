#pragma once

#include <vector>

#include <Eigen/Core>

#include "maxface/configuration.hpp"
#include "maxface/least_squares.hpp"
#include "maxface/quadrature.hpp"

namespace maxface {

/// Integral of prod_k (z - t_k)^{a_k} along the straight path from -> to in the closed upper
/// half-plane. Marked endpoints get Gauss-Jacobi panels with weight exponent a_k; the rest is
/// adaptive Gauss-Kronrod. Throws PathError if the path leaves the closed upper half-plane or
/// runs through a marked point.
Complex sc_integral(const Eigen::VectorXd& t, const Eigen::VectorXd& a, Complex from, Complex to,
                    const quadrature::Options& opt = {});
Complex sc_integral(const MarkedConfiguration& config, Complex from, Complex to,
                    const quadrature::Options& opt = {});

/// Marked configuration with the flat structure induced by F(z) = int_i^z prod (t - t_j)^{a_j} dt.
struct OrthoDisk {
  MarkedConfiguration config;
  std::vector<Complex> vertex_images;  // P_{-p..p}, indexed from 0
  Complex base_point{0.0, 1.0};
  double quad_tolerance = 1e-13;

  Complex vertex(int j) const { return vertex_images[j + config.genus()]; }
};

/// P_j = F(t_j) from the general point/exponent arrays.
std::vector<Complex> vertex_images(const Eigen::VectorXd& t, const Eigen::VectorXd& a,
                                   const quadrature::Options& opt = {});
std::vector<Complex> vertex_images(const MarkedConfiguration& config,
                                   const quadrature::Options& opt = {});
OrthoDisk make_ortho_disk(const MarkedConfiguration& config, double quad_tolerance = 1e-13);

/// Interior angle (pi/2 or 3pi/2) at every vertex, from the incoming and outgoing edge
/// directions (the infinite edges included). Throws GeometryError if an angle is off both values
/// by more than 1e-6 or disagrees with the configuration's exponent (angle = (a_j + 1) pi).
std::vector<double> angle_check(const OrthoDisk& disk);

/// Angle at infinity implied by the exponents, (a_inf + 2) pi / 2 with a_inf = -4 - sum 2a_j.
double angle_at_infinity(const MarkedConfiguration& config);

/// |P_{j+1} - P_j| = int_{t_j}^{t_{j+1}} prod |x - t_k|^{a_k} dx for j = -p..p-1.
std::vector<double> side_lengths(const Eigen::VectorXd& t, const Eigen::VectorXd& a,
                                 const quadrature::Options& opt = {});

/// Finite edge lengths of an ortho-disk polygon, edge j joining P_j and P_{j+1}.
struct SideLengthTarget {
  std::vector<double> lengths;  // 2p entries, j = -p..p-1
  bool symmetric = false;
};

enum class Gauge {
  CenterAndEnd,  // t_0 = 0, t_p = 1
  Ends,          // t_{-p} = -1, t_p = 1
};

struct ParameterSolveOptions {
  Gauge gauge = Gauge::CenterAndEnd;
  double quad_tolerance = 1e-13;
  LeastSquaresOptions solver{60, 1e-12, 1e-7, 1e-3, 1e12};
  /// Acceptance threshold on the max relative side-length mismatch.
  double length_tolerance = 1e-8;
};

/// Marked points solving the SC parameter problem, and the scale K with target = K * L(t).
struct ParameterSolution {
  MarkedConfiguration config;  // c = 1 placeholder
  double scale = 1.0;
  double max_relative_error = 0.0;
  int iterations = 0;
};

/// Finds t_j such that the ortho-disk with exponents `exponents` has side lengths proportional
/// to the target. Unknowns are log-gaps, so ordering is preserved. Symmetric targets impose
/// t_{-j} = -t_j. Throws SolverError if the relative mismatch stays above length_tolerance.
ParameterSolution solve_parameters(const SideLengthTarget& target,
                                   const std::vector<double>& exponents,
                                   const ParameterSolveOptions& opt = {});

}  // namespace maxface
