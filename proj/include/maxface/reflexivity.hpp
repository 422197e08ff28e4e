#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "maxface/configuration.hpp"
#include "maxface/sc_map.hpp"

namespace maxface {

/// A zigzag or tweezer symmetric about its diagonal, described by its arm lengths
/// e_j = |P_j P_{j+1}|, j = 0..p-1 (the mirror edges P_{-j-1} P_{-j} repeat them).
/// The drawn frame puts a zigzag at P_{-p} = i, P_p = 1 (symmetric about y = x) and a tweezer
/// at P_{-p} = i, P_p = -1 (symmetric about y = -x).
struct SymmetricShape {
  PatternKind kind = PatternKind::Zigzag;
  int genus = 1;
  std::vector<double> arms;

  std::vector<double> exponents() const { return make_pattern(kind, genus); }
  /// Edge lengths for j = -p..p-1.
  std::vector<double> lengths() const;
  /// Vertex positions P_{-p..p} in the drawn frame.
  std::vector<Complex> vertices() const;
  /// P_1..P_{p-1} in the drawn frame.
  std::vector<Complex> free_vertices() const;
};

/// Staircase zigzag with unit arms; tweezer with a long middle arm 2*floor(p/2)+1 and unit arms.
SymmetricShape default_shape(PatternKind kind, int genus);

/// Vertex list of a shape given by its edge lengths in the SC frame, P_{-p} = 0, edge j pointing
/// along pi * sum_{k>j} a_k.
std::vector<Complex> sc_frame_polygon(const std::vector<double>& lengths,
                                      const std::vector<double>& exponents);

/// Throws GeometryError if the polygon with its two infinite edges self-intersects.
void check_simple(const std::vector<double>& lengths, const std::vector<double>& exponents);

/// Side-length targets of the two regions: Omega_{Gdh} (exponents a) and Omega_{G^-1 dh}
/// (exponents -a, vertices relabelled Q_j = P_{-j}).
std::pair<SideLengthTarget, SideLengthTarget> region_targets(const SymmetricShape& shape);

struct ReflexivityOptions {
  Gauge gauge = Gauge::CenterAndEnd;
  /// Impose t_{-j} = -t_j in the inner solves (halves the unknowns).
  bool exploit_symmetry = true;
  ParameterSolveOptions inner{};
};

struct ReflexivityResidual {
  double side_residual_Gdh = 0.0;
  double side_residual_Ginv_dh = 0.0;
  /// max_j |t_j - s_j| after normalising both to t_0 = 0, t_p = 1.
  double match_residual = 0.0;
  /// max_j of the difference of (t_j - t_{-p}) / (t_p - t_{-p}) between the two solves.
  double cross_ratio_residual = 0.0;
  /// max_j |log(t_{j+1} - t_j) - log(s_{j+1} - s_j)|; stays positive in degenerate limits
  /// where neighbouring marked points of both regions collide and match_residual fades.
  double gap_residual = 0.0;
  double total = 0.0;
  Eigen::VectorXd t;  // normalised marked points of Omega_{Gdh}
  Eigen::VectorXd s;  // normalised marked points of Omega_{G^-1 dh}
  double scale_t = 1.0;
  double scale_s = 1.0;
};

ReflexivityResidual residual(const SymmetricShape& shape, const ReflexivityOptions& opt = {});

struct ReflexiveSolveOptions {
  double tolerance = 1e-7;      // declared success threshold on the total residual
  double target = 1e-12;        // optimizer stopping threshold
  int max_iterations = 60;
  double fd_step = 1e-6;
  ReflexivityOptions residual{};
};

struct ReflexiveSolution {
  SymmetricShape shape;
  MarkedConfiguration config;  // t_j with the computed maxface constant c
  ReflexivityResidual residual;
  bool reflexive = false;
  int iterations = 0;
  /// max_j |t_{-j} + t_j| from an inner solve without imposed symmetry.
  double symmetry_deviation = 0.0;
};

/// Minimises the matching residual over the (p-1) free arm ratios. Never throws on stall:
/// returns the best shape with reflexive == false.
ReflexiveSolution solve_reflexive(PatternKind kind, int genus,
                                  const std::optional<SymmetricShape>& initial = std::nullopt,
                                  const ReflexiveSolveOptions& opt = {});

/// Genus-p starting shape continued from a genus-(p-1) solution (last arm repeated).
SymmetricShape continue_shape(const SymmetricShape& lower);

/// Maxface constant c from c^2 = alpha beta / dpi^2 at the reference point z = i, with the
/// branch Re c > 0 (tie: Im c > 0).
Complex maxface_constant(const ReflexivityResidual& r, const std::vector<double>& exponents);

/// Tweezer -> zigzag: P_j -> -P_j (j >= 1), P_0 -> i P_0 (p even) or -i P_0 (p odd), P_{-j}
/// fixed. Returns the zigzag as a symmetric shape; throws GeometryError if the image is not a
/// zigzag symmetric about y = x.
SymmetricShape tweezer_to_zigzag(const SymmetricShape& tweezer);
/// The inverse map, zigzag -> tweezer.
SymmetricShape zigzag_to_tweezer(const SymmetricShape& zigzag);

/// Arms of a symmetric shape read back from a drawn vertex list; validates directions.
SymmetricShape shape_from_vertices(PatternKind kind, const std::vector<Complex>& vertices);

}  // namespace maxface
