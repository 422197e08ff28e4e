#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "maxface/reflexivity.hpp"
#include "maxface/singular.hpp"
#include "maxface/surface.hpp"

using namespace maxface;

namespace {

const MarkedConfiguration& solved(int p) {
  static std::vector<MarkedConfiguration> cache;
  while (static_cast<int>(cache.size()) < p) {
    cache.push_back(solve_reflexive(PatternKind::Zigzag, static_cast<int>(cache.size()) + 1).config);
  }
  return cache[p - 1];
}

double lorentz(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
}

}  // namespace

TEST_CASE("domain mesh tree") {
  const auto& cfg = solved(2);
  const auto mesh = make_domain_mesh(cfg, {});
  const std::size_t n = mesh.points.size();
  CHECK(n == 1 + 51u * 51u);
  CHECK(mesh.faces.size() == 2u * 50u * 50u);
  CHECK(mesh.points[0] == kI);
  CHECK(mesh.parent[0] == -1);
  REQUIRE(mesh.order.size() == n);
  std::vector<bool> seen(n, false);
  for (int v : mesh.order) {
    if (mesh.parent[v] >= 0) CHECK(seen[mesh.parent[v]]);
    seen[v] = true;
  }
  const auto& t = cfg.points();
  for (std::size_t v = 0; v < n; ++v) {
    for (Eigen::Index k = 0; k < t.size(); ++k) CHECK(std::abs(mesh.points[v] - t[k]) >= mesh.clip_radius * (1 - 1e-12));
    CHECK(mesh.points[v].imag() >= 0.0);
  }
}

TEST_CASE("base point maps to the origin and the tree is path independent") {
  for (int p = 1; p <= 2; ++p) {
    const auto data = from_reflexive(solved(p), Variant::Maximal);
    const auto mesh = make_domain_mesh(data.config, {});
    const auto X = integrate_immersion(data, mesh);
    CHECK(X.warnings.empty());
    CHECK(X.vertices[0].norm() == 0.0);
    std::mt19937 rng(7 + p);
    std::uniform_int_distribution<int> pick(1, static_cast<int>(mesh.points.size()) - 1);
    for (int k = 0; k < 50; ++k) {
      const int v = pick(rng);
      const auto direct = immersion_direct(data, mesh.points[v]);
      CHECK((X.vertices[v] - direct).norm() < 1e-10 * (1.0 + direct.norm()));
    }
  }
}

TEST_CASE("open periods produce a warning") {
  const auto& cfg = solved(1);
  const auto broken = MarkedConfiguration::symmetric({1.3}, make_pattern(PatternKind::Zigzag, 1), cfg.c());
  const auto X = integrate_immersion({broken, Variant::Maximal}, make_domain_mesh(broken, {4, 4}));
  CHECK(!X.warnings.empty());
}

TEST_CASE("branch points share x and y") {
  for (int p = 1; p <= 3; ++p) {
    const auto data = from_reflexive(solved(p), Variant::Maximal);
    const auto ref = immersion_direct(data, data.config.point(0));
    for (int j = -p; j <= p; ++j) {
      const auto x = immersion_direct(data, data.config.point(j));
      CHECK(std::abs(x.x() - ref.x()) < 1e-9);
      CHECK(std::abs(x.y() - ref.y()) < 1e-9);
    }
  }
}

TEST_CASE("reflection in the imaginary axis is an isometry of the image") {
  const auto data = from_reflexive(solved(2), Variant::Maximal);
  const std::vector<Complex> zs{{0.3, 0.4}, {1.7, 0.2}, {0.9, 1.5}, {2.4, 0.8}};
  for (std::size_t a = 0; a < zs.size(); ++a) {
    for (std::size_t b = a + 1; b < zs.size(); ++b) {
      const double d = (immersion_direct(data, zs[a]) - immersion_direct(data, zs[b])).norm();
      const double e = (immersion_direct(data, -std::conj(zs[a])) - immersion_direct(data, -std::conj(zs[b]))).norm();
      CHECK(std::abs(d - e) < 1e-10 * (1.0 + d));
    }
  }
}

TEST_CASE("the parameterisation is conformal with the metric factor") {
  const double h = 1e-4;
  const std::vector<Complex> zs{{0.2, 0.9}, {0.5, 2.0}, {-1.6, 0.5}, {2.3, 1.1}, {-0.4, 0.05}};
  for (auto variant : {Variant::Maximal, Variant::Minimal}) {
    const auto data = from_reflexive(solved(1), variant);
    const bool maximal = variant == Variant::Maximal;
    for (auto z : zs) {
      const double g = std::abs(data.g({z, Sheet::Plus}));
      if (maximal && std::abs(g - 1.0) < 0.05) continue;
      const Eigen::Vector3d Xu = (immersion_direct(data, z + h) - immersion_direct(data, z - h)) / (2 * h);
      const Eigen::Vector3d Xv = (immersion_direct(data, z + kI * h) - immersion_direct(data, z - kI * h)) / (2 * h);
      const double lambda = metric_factor(data, z);
      const double uu = maximal ? lorentz(Xu, Xu) : Xu.dot(Xu);
      const double vv = maximal ? lorentz(Xv, Xv) : Xv.dot(Xv);
      const double uv = maximal ? lorentz(Xu, Xv) : Xu.dot(Xv);
      CHECK(uu == doctest::Approx(lambda).epsilon(1e-6));
      CHECK(vv == doctest::Approx(lambda).epsilon(1e-6));
      CHECK(std::abs(uv) < 1e-6 * lambda);
    }
  }
}

TEST_CASE("metric factor") {
  const auto maxface = from_reflexive(solved(1), Variant::Maximal);
  const auto minimal = from_reflexive(solved(1), Variant::Minimal);
  for (const auto& loop : components(maxface.config)) {
    for (auto z : loop.points) CHECK(metric_factor(maxface, z) < 1e-8);
  }
  double prev = 0.0;
  for (double x : {10.0, 100.0, 1000.0, 1e4}) {
    const double m = metric_factor(maxface, x);
    CHECK(m > 5.0 * prev);
    prev = m;
  }
  for (double x = -3.0; x <= 3.0; x += 0.37) {
    for (double y : {0.01, 0.5, 2.0}) {
      const double lo = std::abs(minimal.dh_factor()) * std::abs(minimal.dh_factor());
      CHECK(metric_factor(minimal, {x, y}) >= 0.99999999 * lo);
      CHECK(metric_factor(maxface, {x, y}) >= 0.0);
    }
  }
}

TEST_CASE("metric degeneracy lies within a grid cell of the traced loops") {
  for (int p = 1; p <= 2; ++p) {
    const auto data = from_reflexive(solved(p), Variant::Maximal);
    const auto mesh = make_domain_mesh(data.config, {});
    const auto X = integrate_immersion(data, mesh);
    const auto zeros = metric_zero_crossings(X, mesh);
    CHECK(zeros.size() > 20u);
    const auto loops = components(data.config);
    const double cell = std::hypot(mesh.dx, mesh.dy);
    for (auto z : zeros) {
      double nearest = 1e300;
      for (const auto& loop : loops) {
        for (auto w : loop.points) nearest = std::min(nearest, std::abs(z - w));
      }
      CHECK(nearest < cell);
    }
  }
}

TEST_CASE("companion is the rotated maxface") {
  for (int p = 1; p <= 2; ++p) {
    const auto minimal = from_reflexive(solved(p), Variant::Minimal);
    const auto mesh = make_domain_mesh(minimal.config, {});
    CHECK(companion_symmetry_check(minimal, mesh) < (p == 1 ? 1e-7 : 1e-6));
  }
  // shifting both immersions by matching constants leaves the deviation unchanged
  const auto minimal = from_reflexive(solved(1), Variant::Minimal);
  const auto mesh = make_domain_mesh(minimal.config, {10, 10});
  const auto X = integrate_immersion({minimal.config.with_c(kI * minimal.config.c()), Variant::Maximal}, mesh);
  const auto Y = integrate_immersion(companion(minimal), mesh);
  const Eigen::Vector3d C(0.3, -1.2, 2.0);
  for (std::size_t v = 0; v < mesh.points.size(); ++v) {
    const double d0 = (Y.vertices[v] - psi(X.vertices[v])).norm();
    const double d1 = ((Y.vertices[v] + psi(C)) - psi(X.vertices[v] + C)).norm();
    CHECK(std::abs(d0 - d1) < 1e-14);
  }
  CHECK_THROWS_AS(companion_symmetry_check(from_reflexive(solved(1), Variant::Maximal), mesh), DomainError);
}

TEST_CASE("second sheet is the half-turn about the branch line") {
  const auto data = from_reflexive(solved(1), Variant::Maximal);
  MeshOptions opt;
  opt.columns = 8;
  opt.rows = 6;
  opt.both_sheets = true;
  const auto mesh = make_domain_mesh(data.config, opt);
  const auto X = integrate_immersion(data, mesh);
  const int plus = 1 + 9 * 7;
  REQUIRE(mesh.points.size() == static_cast<std::size_t>(2 * plus - 1));
  CHECK(X.faces.size() == 2u * 2u * 8u * 6u);
  const auto axis = immersion_direct(data, data.config.point(1));
  for (int v = 1; v < plus; ++v) {
    const int w = v + plus - 1;
    CHECK(mesh.sheets[w] == Sheet::Minus);
    CHECK(X.vertices[w].x() == doctest::Approx(2 * axis.x() - X.vertices[v].x()).epsilon(1e-9));
    CHECK(X.vertices[w].y() == doctest::Approx(2 * axis.y() - X.vertices[v].y()).epsilon(1e-9));
    CHECK(X.vertices[w].z() == X.vertices[v].z());
  }
}

TEST_CASE("mesh export") {
  SurfaceMesh empty;
  const auto obj0 = export_mesh(empty, MeshFormat::Obj);
  CHECK(obj0.find("\nv ") == std::string::npos);
  const auto ply0 = export_mesh(empty, MeshFormat::Ply);
  CHECK(ply0.find("element vertex 0\n") != std::string::npos);
  CHECK(ply0.find("element face 0\n") != std::string::npos);
  CHECK(ply0.substr(ply0.size() - 11) == "end_header\n");

  const auto data = from_reflexive(solved(1), Variant::Maximal);
  auto X = integrate_immersion(data, make_domain_mesh(data.config, {4, 3}));
  const std::size_t total = X.vertices.size();
  X.valid[3] = false;
  const auto obj = export_mesh(X, MeshFormat::Obj);
  std::istringstream in(obj);
  std::string line;
  std::size_t vertices = 0, faces = 0;
  int max_index = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      ++vertices;
      double x, y, z;
      std::istringstream ls(line.substr(2));
      ls >> x >> y >> z;
      CHECK(!ls.fail());
    } else if (line.rfind("f ", 0) == 0) {
      ++faces;
      std::istringstream ls(line.substr(2));
      int a, b, c;
      ls >> a >> b >> c;
      max_index = std::max({max_index, a, b, c});
      CHECK(std::min({a, b, c}) >= 1);
    }
  }
  CHECK(vertices == total - 1);
  CHECK(max_index <= static_cast<int>(vertices));
  std::size_t kept = 0;
  for (const auto& f : X.faces) kept += (f[0] != 3 && f[1] != 3 && f[2] != 3);
  CHECK(faces == kept);
  CHECK(faces < X.faces.size());

  const auto ply = export_mesh(X, MeshFormat::Ply);
  CHECK(ply.rfind("ply\nformat ascii 1.0\n", 0) == 0);
  CHECK(ply.find("property double quality_gnorm\nproperty double quality_metric\n") != std::string::npos);
  CHECK(ply.find("element vertex " + std::to_string(total - 1) + "\n") != std::string::npos);

  char buf[64];
  std::snprintf(buf, sizeof buf, "v %.17g ", X.vertices[1].x());
  CHECK(obj.find(buf) != std::string::npos);

  CHECK(parse_mesh_format("ply") == MeshFormat::Ply);
  CHECK_THROWS_AS(parse_mesh_format("stl"), UsageError);
}
