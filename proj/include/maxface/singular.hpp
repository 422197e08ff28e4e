#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxface/configuration.hpp"

namespace maxface {

enum class Enclosure { ZeroOfG, PoleOfG, Mixed };
std::string to_string(Enclosure e);

/// One connected component of {|G| = 1} as a closed polyline (last point joins the first).
struct SingularCurve {
  int component_id = 0;
  std::vector<Complex> points;
  std::vector<double> real_crossings;
  Enclosure encloses = Enclosure::Mixed;
  /// Marked point indices (0..2p) inside the loop.
  std::vector<int> enclosed;
  /// G' vanished (numerically) somewhere on the curve.
  bool degenerate = false;
};

enum class SingularityType {
  CuspidalEdge,
  Swallowtail,
  CuspidalButterfly,
  SpecialType1,
  CuspidalS1Minus,
  SpecialType2,
  CuspidalCrossCap,
  NotAFront
};
std::string to_string(SingularityType t);

/// Which part of A vanishes at a classified point.
enum class Vanishing { None, ReA, ImA };

struct SingularPointRecord {
  Complex z;
  Complex A, B, E;
  Vanishing vanishing = Vanishing::None;
  SingularityType classification = SingularityType::CuspidalEdge;
  /// The deciding value was inside (-tau, tau); `alternative` is the row it would get if that
  /// value were treated as nonzero.
  bool borderline = false;
  std::optional<SingularityType> alternative;
};

struct TraceOptions {
  double level_tolerance = 1e-12;  // |log|G|| after correction
  double initial_step = 1e-3;
  double max_step = 0.05;
  double min_step = 1e-11;
  double max_turn = 0.1;  // radians per step
  int max_steps = 200000;
};

/// Sorted real roots of |G(x)| = 1. Throws PropertyViolation if fewer than the guaranteed
/// 2p+2 (alternating exponents) or 2(p-1) (tweezer pattern) are found.
std::vector<double> real_crossings(const MarkedConfiguration& config);

/// Closed component through the real crossing `seed`. |G| depends on c only through |c|, so the
/// set is symmetric about the real axis: the arc in Im z >= 0 is traced and then mirrored.
SingularCurve trace_component(const MarkedConfiguration& config, double seed,
                              const TraceOptions& opt = {});

/// Full loop through an arbitrary point of the level set (no mirroring).
SingularCurve trace_loop(const MarkedConfiguration& config, Complex seed,
                         const TraceOptions& opt = {});

struct ComponentOptions {
  TraceOptions trace{};
  /// Grid used to look for loops that miss the real axis.
  int scan_columns = 240;
  int scan_rows = 120;
  bool scan_for_extra_loops = true;
};

/// All components: traced from every real crossing, merged, plus loops found by a grid scan
/// off the axis. Throws PropertyViolation if an alternating pattern does not give p+1 loops.
std::vector<SingularCurve> components(const MarkedConfiguration& config,
                                      const ComponentOptions& opt = {});

struct ClassificationReport {
  std::vector<SingularPointRecord> special;  // Re A = 0 or Im A = 0 points
  std::vector<SingularPointRecord> samples;  // polyline points, Re A != 0 and Im A != 0
  int re_a_zero = 0;  // Re A = 0, Im A != 0
  int im_a_zero = 0;  // Im A = 0, Re A != 0
  int not_a_front = 0;
};

/// Front-singularity classification of the sign changes of Re A and Im A along the curve.
ClassificationReport classify(const MarkedConfiguration& config, const SingularCurve& curve,
                              double tau = 1e-8);

/// Singularity type for given A, B, E values.
SingularPointRecord classify_point(Complex z, Complex A, Complex B, Complex E, double tau);

/// Winding number of G(z) around 0 along the closed curve.
int winding_of_G(const MarkedConfiguration& config, const SingularCurve& curve);

struct Segment {
  Complex a, b;
};

struct ZeroLocus {
  std::string field;  // "ReA", "ImA" or "ReB"
  std::vector<Segment> segments;
  std::vector<Complex> intersections;  // with the curve
};

/// Zero sets of Re A, Im A and Re B on a grid around the curve (marching squares), with their
/// intersection points with the curve.
std::vector<ZeroLocus> intersect_zero_loci(const MarkedConfiguration& config,
                                           const SingularCurve& curve, int resolution = 200);

struct SvgOptions {
  double width = 800.0;
  double height = 600.0;
  std::optional<double> xmin, xmax, ymin, ymax;
};

/// Self-contained SVG of the loops, optional zero-loci overlays and marked-point ticks.
std::string singular_svg(const MarkedConfiguration& config, const std::vector<SingularCurve>& curves,
                         const std::vector<std::vector<ZeroLocus>>& overlays = {},
                         const SvgOptions& opt = {});

}  // namespace maxface
