#include "maxface/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

#include "maxface/sc_map.hpp"

namespace maxface {

namespace {

double segment_distance(Complex a, Complex b, Complex p) {
  const Complex d = b - a;
  double s = std::norm(d) > 0.0 ? ((p - a) * std::conj(d)).real() / std::norm(d) : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

// (int g dh, int g^-1 dh, int dh) from i to a point.
struct Primitive {
  Complex g, ginv, h;
};

struct Forms {
  Complex alpha, beta, dh;
  Eigen::VectorXd t, a, b;

  explicit Forms(const WeierstrassData& data) {
    const Complex c = data.config.c();
    const Complex k = data.dh_factor() / c;
    alpha = data.phase() * k;
    beta = k * c * c / data.phase();
    dh = data.dh_factor();
    t = data.config.points();
    a = data.config.exponents();
    b = -a;
  }

  Primitive edge(Complex from, Complex to, const quadrature::Options& opt) const {
    return {alpha * sc_integral(t, a, from, to, opt), beta * sc_integral(t, b, from, to, opt),
            dh * (to - from)};
  }
};

Eigen::Vector3d position(const Primitive& P, bool maximal) {
  if (maximal) {
    return {(0.5 * (P.ginv + P.g)).real(), (0.5 * kI * (P.ginv - P.g)).real(), P.h.real()};
  }
  return {(0.5 * (P.ginv - P.g)).real(), (0.5 * kI * (P.ginv + P.g)).real(), P.h.real()};
}

}  // namespace

DomainMesh make_domain_mesh(const MarkedConfiguration& config, const MeshOptions& opt) {
  if (opt.columns < 1 || opt.rows < 1) throw DomainError("make_domain_mesh: need at least one cell");
  const auto& t = config.points();
  const double lo = t[0], hi = t[t.size() - 1];
  const double x0 = opt.xmin.value_or(lo - 1.0);
  const double x1 = opt.xmax.value_or(hi + 1.0);
  const double y1 = opt.ymax.value_or(0.5 * (hi - lo) + 1.0);
  if (!(x1 > x0) || !(y1 > 0.0)) throw DomainError("make_domain_mesh: empty domain rectangle");

  DomainMesh mesh;
  mesh.columns = opt.columns;
  mesh.rows = opt.rows;
  mesh.dx = (x1 - x0) / opt.columns;
  mesh.dy = y1 / opt.rows;
  mesh.clip_radius = 1e-3 * config.min_gap();
  const double r = mesh.clip_radius;

  mesh.points.push_back(kI);
  mesh.sheets.push_back(Sheet::Plus);
  for (int j = 0; j <= opt.rows; ++j) {
    for (int i = 0; i <= opt.columns; ++i) {
      Complex z(x0 + i * mesh.dx, j * mesh.dy);
      for (Eigen::Index k = 0; k < t.size(); ++k) {
        const Complex w = z - t[k];
        if (std::abs(w) < r) z = t[k] + (w == Complex{} ? kI * r : r * w / std::abs(w));
      }
      mesh.points.push_back(z);
      mesh.sheets.push_back(Sheet::Plus);
    }
  }
  const int grid_nodes = (opt.columns + 1) * (opt.rows + 1);
  for (int j = 0; j < opt.rows; ++j) {
    for (int i = 0; i < opt.columns; ++i) {
      const int a = mesh.grid_index(i, j), b = mesh.grid_index(i + 1, j);
      const int c = mesh.grid_index(i + 1, j + 1), d = mesh.grid_index(i, j + 1);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  }

  // breadth-first tree over the grid edges that keep clear of the marked points
  mesh.parent.assign(1 + grid_nodes, -2);
  mesh.parent[0] = -1;
  mesh.order.push_back(0);
  int start = 1;
  for (int n = 1; n <= grid_nodes; ++n) {
    if (std::abs(mesh.points[n] - kI) < std::abs(mesh.points[start] - kI)) start = n;
  }
  auto clear = [&](Complex a, Complex b) {
    for (Eigen::Index k = 0; k < t.size(); ++k) {
      if (segment_distance(a, b, t[k]) < 0.5 * r) return false;
    }
    return true;
  };
  std::queue<int> queue;
  mesh.parent[start] = 0;
  mesh.order.push_back(start);
  queue.push(start);
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop();
    const int i = (n - 1) % (opt.columns + 1), j = (n - 1) / (opt.columns + 1);
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int q = 0; q < 4; ++q) {
      const int ni = i + di[q], nj = j + dj[q];
      if (ni < 0 || nj < 0 || ni > opt.columns || nj > opt.rows) continue;
      const int m = mesh.grid_index(ni, nj);
      if (mesh.parent[m] != -2 || !clear(mesh.points[n], mesh.points[m])) continue;
      mesh.parent[m] = n;
      mesh.order.push_back(m);
      queue.push(m);
    }
  }
  for (int n = 1; n <= grid_nodes; ++n) {
    if (mesh.parent[n] == -2) throw PathError("make_domain_mesh: grid node unreachable from the base point");
  }

  if (opt.both_sheets) {
    const int offset = static_cast<int>(mesh.points.size()) - 1;
    for (int n = 1; n <= grid_nodes; ++n) {
      mesh.points.push_back(mesh.points[n]);
      mesh.sheets.push_back(Sheet::Minus);
      mesh.parent.push_back(n);
      mesh.order.push_back(n + offset);
    }
    const std::size_t plus_faces = mesh.faces.size();
    for (std::size_t f = 0; f < plus_faces; ++f) {
      const auto& face = mesh.faces[f];
      mesh.faces.push_back({face[0] + offset, face[2] + offset, face[1] + offset});
    }
  }
  return mesh;
}

SurfaceMesh integrate_immersion(const WeierstrassData& data, const DomainMesh& mesh,
                                const ImmersionOptions& opt) {
  const Forms forms(data);
  const bool maximal = data.maximal_convention();
  const std::size_t n = mesh.points.size();
  SurfaceMesh out;
  out.variant = data.variant;
  out.vertices.assign(n, Eigen::Vector3d::Zero());
  out.gnorm.assign(n, 0.0);
  out.metric.assign(n, 0.0);
  out.valid.assign(n, false);

  if (data.config.genus() > 0) {
    const double residual = period_residual(data, opt.quadrature);
    if (residual > opt.period_threshold) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "period residual %.3g exceeds %.3g: positions depend on the path",
                    residual, opt.period_threshold);
      out.warnings.emplace_back(buf);
    }
  }

  // Minus-sheet copies go round t_0 and come back with g and g^-1 flipped.
  std::optional<Primitive> at_center;
  const bool has_minus = std::any_of(mesh.sheets.begin(), mesh.sheets.end(),
                                     [](Sheet s) { return s == Sheet::Minus; });
  if (has_minus) at_center = forms.edge(kI, data.config.point(0), opt.quadrature);

  std::vector<Primitive> prim(n, Primitive{});
  for (int v : mesh.order) {
    const int parent = mesh.parent[v];
    if (parent < 0) {
      out.valid[v] = true;
    } else if (out.valid[parent]) {
      if (mesh.sheets[v] == Sheet::Minus) {
        const auto& P = prim[parent];
        prim[v] = {2.0 * at_center->g - P.g, 2.0 * at_center->ginv - P.ginv, P.h};
        out.valid[v] = true;
      } else {
        try {
          const auto e = forms.edge(mesh.points[parent], mesh.points[v], opt.quadrature);
          const auto& P = prim[parent];
          prim[v] = {P.g + e.g, P.ginv + e.ginv, P.h + e.h};
          out.valid[v] = true;
        } catch (const Error& err) {
          out.warnings.emplace_back(std::string("edge integral failed: ") + err.what());
        }
      }
    }
    if (!out.valid[v]) continue;
    out.vertices[v] = position(prim[v], maximal);
    out.gnorm[v] = std::abs(data.g({mesh.points[v], Sheet::Plus}));
    out.metric[v] = metric_factor(data, mesh.points[v]);
  }
  for (const auto& f : mesh.faces) {
    if (out.valid[f[0]] && out.valid[f[1]] && out.valid[f[2]]) out.faces.push_back(f);
  }
  return out;
}

Eigen::Vector3d immersion_direct(const WeierstrassData& data, Complex z, const quadrature::Options& opt) {
  return position(Forms(data).edge(kI, z, opt), data.maximal_convention());
}

double metric_factor(const WeierstrassData& data, Complex z) {
  // |g| is the same on both sheets and in both half-planes
  const double g = std::abs(power_product(data.config.points(), data.config.exponents(), z)) /
                   std::abs(data.config.c());
  const double dh = std::abs(data.dh_factor());
  const double s = data.maximal_convention() ? 1.0 / g - g : 1.0 / g + g;
  return 0.25 * s * s * dh * dh;
}

std::vector<Complex> metric_zero_crossings(const SurfaceMesh& surface, const DomainMesh& mesh) {
  std::vector<Complex> out;
  for (const auto& f : surface.faces) {
    for (int q = 0; q < 3; ++q) {
      const int a = f[q], b = f[(q + 1) % 3];
      if (a > b) continue;  // each interior edge once from one of its faces
      const double la = std::log(surface.gnorm[a]), lb = std::log(surface.gnorm[b]);
      if (!std::isfinite(la) || !std::isfinite(lb) || (la < 0.0) == (lb < 0.0)) continue;
      const double s = la / (la - lb);
      out.push_back(mesh.points[a] + s * (mesh.points[b] - mesh.points[a]));
    }
  }
  return out;
}

double companion_symmetry_check(const WeierstrassData& minimal, const DomainMesh& mesh,
                                const ImmersionOptions& opt) {
  const WeierstrassData maxface{minimal.config.with_c(kI * minimal.config.c()), Variant::Maximal};
  const auto comp = companion(minimal);
  const auto X = integrate_immersion(maxface, mesh, opt);
  const auto Y = integrate_immersion(comp, mesh, opt);
  double worst = 0.0;
  for (std::size_t v = 0; v < mesh.points.size(); ++v) {
    if (!X.valid[v] || !Y.valid[v]) continue;
    worst = std::max(worst, (Y.vertices[v] - psi(X.vertices[v])).norm());
  }
  return worst;
}

MeshFormat parse_mesh_format(const std::string& name) {
  if (name == "obj") return MeshFormat::Obj;
  if (name == "ply") return MeshFormat::Ply;
  throw UsageError("unknown mesh format '" + name + "' (expected obj or ply)");
}

std::string export_mesh(const SurfaceMesh& mesh, MeshFormat format) {
  std::vector<int> index(mesh.vertices.size(), -1);
  int count = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (mesh.valid[v]) index[v] = count++;
  }
  std::vector<std::array<int, 3>> faces;
  for (const auto& f : mesh.faces) {
    if (index[f[0]] >= 0 && index[f[1]] >= 0 && index[f[2]] >= 0) {
      faces.push_back({index[f[0]], index[f[1]], index[f[2]]});
    }
  }

  std::string out;
  char buf[256];
  if (format == MeshFormat::Obj) {
    out += "# maxface " + to_string(mesh.variant) + "\n";
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      if (index[v] < 0) continue;
      const auto& x = mesh.vertices[v];
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", x.x(), x.y(), x.z());
      out += buf;
    }
    for (const auto& f : faces) {
      std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
      out += buf;
    }
    return out;
  }

  out += "ply\nformat ascii 1.0\ncomment maxface " + to_string(mesh.variant) + "\n";
  out += "element vertex " + std::to_string(count) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  out += "property double quality_gnorm\nproperty double quality_metric\n";
  out += "element face " + std::to_string(faces.size()) + "\n";
  out += "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (index[v] < 0) continue;
    const auto& x = mesh.vertices[v];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g\n", x.x(), x.y(), x.z(), mesh.gnorm[v],
                  mesh.metric[v]);
    out += buf;
  }
  for (const auto& f : faces) {
    std::snprintf(buf, sizeof buf, "3 %d %d %d\n", f[0], f[1], f[2]);
    out += buf;
  }
  return out;
}

}  // namespace maxface
