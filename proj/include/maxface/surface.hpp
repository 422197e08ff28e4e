#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "maxface/weierstrass.hpp"

namespace maxface {

struct MeshOptions {
  int columns = 50;
  int rows = 50;
  /// Domain rectangle [xmin, xmax] x [0, ymax]; defaults to t_{-p} - 1 .. t_p + 1 and height
  /// (t_p - t_{-p}) / 2 + 1.
  std::optional<double> xmin, xmax, ymax;
  /// Also mesh the upper half-plane of the Minus sheet.
  bool both_sheets = false;
};

/// Structured grid on the closed upper half-plane with a spanning tree of integration edges
/// rooted at the base point i (node 0).
struct DomainMesh {
  std::vector<Complex> points;
  std::vector<Sheet> sheets;
  std::vector<std::array<int, 3>> faces;
  /// Tree parent of every node (-1 for the root); `order` lists nodes parents first.
  std::vector<int> parent;
  std::vector<int> order;
  int columns = 0;
  int rows = 0;
  double dx = 0.0;
  double dy = 0.0;
  /// Grid nodes closer than this to a marked point are pushed out to this distance.
  double clip_radius = 0.0;
  /// Node index of grid point (i, j) on the Plus sheet.
  int grid_index(int i, int j) const { return 1 + j * (columns + 1) + i; }
};

DomainMesh make_domain_mesh(const MarkedConfiguration& config, const MeshOptions& opt = {});

struct SurfaceMesh {
  Variant variant = Variant::Maximal;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<double> gnorm;
  std::vector<double> metric;
  std::vector<bool> valid;
  std::vector<std::string> warnings;
};

struct ImmersionOptions {
  quadrature::Options quadrature{};
  /// period_residual above this adds a path-dependence warning.
  double period_threshold = 1e-8;
};

/// X = Re int_i^z (1/2 (g^-1 + g), i/2 (g^-1 - g), 1) dh for maxfaces (Maximal, Companion) and
/// Re int_i^z (1/2 (g^-1 - g), i/2 (g^-1 + g), 1) dh for Minimal data, accumulated along the
/// tree. A failed edge integral invalidates its subtree and drops the faces that touch it.
SurfaceMesh integrate_immersion(const WeierstrassData& data, const DomainMesh& mesh,
                                const ImmersionOptions& opt = {});

/// The same integral along the straight segment from i to z (no tree), on the Plus sheet.
Eigen::Vector3d immersion_direct(const WeierstrassData& data, Complex z,
                                 const quadrature::Options& opt = {});

/// ds^2 / |dz|^2: 1/4 (|g|^-1 -+ |g|)^2 |dh/dz|^2, minus for maxfaces, plus for Minimal.
double metric_factor(const WeierstrassData& data, Complex z);

/// Points on mesh edges where |g| - 1 changes sign (linear interpolation in the domain).
std::vector<Complex> metric_zero_crossings(const SurfaceMesh& surface, const DomainMesh& mesh);

/// Maxface and companion of `minimal` on one mesh; max over valid vertices of
/// |X_C(v) - Psi(X_max(v))| with Psi(x, y, z) = (y, -x, z).
double companion_symmetry_check(const WeierstrassData& minimal, const DomainMesh& mesh,
                                const ImmersionOptions& opt = {});

inline Eigen::Vector3d psi(const Eigen::Vector3d& x) { return {x.y(), -x.x(), x.z()}; }

enum class MeshFormat { Obj, Ply };
/// "obj" or "ply"; anything else throws UsageError.
MeshFormat parse_mesh_format(const std::string& name);

/// ASCII OBJ or PLY, coordinates with 17 significant digits. Invalid vertices are omitted and
/// faces reindexed. PLY carries per-vertex quality_gnorm and quality_metric.
std::string export_mesh(const SurfaceMesh& mesh, MeshFormat format);

}  // namespace maxface
