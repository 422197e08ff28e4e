#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "maxface/report.hpp"

using namespace maxface;

namespace {

enum Exit { kOk = 0, kOther = 1, kValidation = 2, kSolverStall = 3, kProperty = 4, kIo = 5 };

// Flags that override the configuration file; unset ones leave it alone.
struct Overrides {
  std::string kind, variant, c, format;
  std::optional<int> genus;
  std::vector<double> t;
  std::optional<double> tau;
  std::optional<int> columns, rows;
  bool both_sheets = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--kind", o.kind, "zigzag or tweezer");
  cmd->add_option("--genus", o.genus, "genus p >= 1");
  cmd->add_option("--tj", o.t, "explicit t_1..t_p, comma separated")->delimiter(',');
  cmd->add_option("--c", o.c, "explicit constant c: re or re,im");
}

Complex parse_c(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--c expects re or re,im, got '" + text + "'");
    }
  }
  if (parts.size() == 1) return {parts[0], 0.0};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw UsageError("--c expects re or re,im, got '" + text + "'");
}

WorkbenchConfig resolve(const std::string& config_path, const std::string& output_flag, const Overrides& o) {
  WorkbenchConfig cfg;
  if (!config_path.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw DomainError(config_path + ": " + e.what());
    }
    cfg = config_from_json(j);
  }
  if (!o.kind.empty()) cfg.kind = parse_pattern_kind(o.kind);
  if (o.genus) cfg.genus = *o.genus;
  if (!o.t.empty()) {
    cfg.t = o.t;
    if (!o.genus) cfg.genus = static_cast<int>(o.t.size());
  }
  if (!o.c.empty()) cfg.c = parse_c(o.c);
  if (!o.variant.empty()) cfg.variant = parse_variant(o.variant);
  if (o.tau) cfg.tolerances.tau = *o.tau;
  if (o.columns) cfg.mesh.columns = *o.columns;
  if (o.rows) cfg.mesh.rows = *o.rows;
  if (!o.format.empty()) cfg.mesh.format = o.format;
  if (o.both_sheets) cfg.mesh.both_sheets = true;
  if (const char* env = std::getenv("MAXFACE_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
  if (!output_flag.empty()) cfg.output_dir = output_flag;
  if (!cfg.exponents.empty() && static_cast<int>(cfg.exponents.size()) != 2 * cfg.genus + 1) cfg.exponents.clear();
  cfg.validate();
  return cfg;
}

std::string out_path(const WorkbenchConfig& cfg, const std::string& name) { return cfg.output_dir + "/" + name; }

ReflexiveSolveOptions solve_options(const WorkbenchConfig& cfg) {
  ReflexiveSolveOptions opt;
  opt.tolerance = cfg.tolerances.solver;
  opt.residual.inner.quad_tolerance = cfg.tolerances.quadrature;
  return opt;
}

quadrature::Options quad_options(const WorkbenchConfig& cfg) {
  quadrature::Options opt;
  opt.rel_tol = cfg.tolerances.quadrature;
  return opt;
}

// Explicit data, a stored solution, or a fresh reflexive solve.
MarkedConfiguration configuration_for(const WorkbenchConfig& cfg, const std::string& solution_path) {
  if (!solution_path.empty()) return configuration_from_json(Json::parse(read_file(solution_path)));
  if (!cfg.t.empty()) return cfg.explicit_configuration();
  const auto solution = solve_reflexive(cfg.kind, cfg.genus, std::nullopt, solve_options(cfg));
  if (!solution.reflexive) {
    throw SolverError("no reflexive " + to_string(cfg.kind) + " found at genus " + std::to_string(cfg.genus),
                      solution.residual.total);
  }
  return solution.config;
}

int cmd_solve(const WorkbenchConfig& cfg, const std::string& warm_start) {
  std::optional<SymmetricShape> initial;
  if (!warm_start.empty()) {
    const auto lower = shape_from_json(Json::parse(read_file(warm_start)));
    if (lower.kind != cfg.kind) throw DomainError("warm start is a " + to_string(lower.kind));
    if (lower.genus == cfg.genus) {
      initial = lower;
    } else if (lower.genus == cfg.genus - 1) {
      initial = continue_shape(lower);
    } else {
      throw DomainError("warm start must have genus p or p-1");
    }
  }
  const auto solution = solve_reflexive(cfg.kind, cfg.genus, initial, solve_options(cfg));
  write_file(out_path(cfg, "solve.json"), to_json(solution).dump(2) + "\n");
  std::printf("%s genus %d: reflexive=%s residual=%.3e iterations=%d\n", to_string(cfg.kind).c_str(), cfg.genus,
              solution.reflexive ? "yes" : "no", solution.residual.total, solution.iterations);
  const auto& t = solution.config.points();
  std::printf("t =");
  for (Eigen::Index k = 0; k < t.size(); ++k) std::printf(" %.12g", t[k]);
  std::printf("\nc = %.12g%+.12gi\n", solution.config.c().real(), solution.config.c().imag());
  return solution.reflexive ? kOk : kSolverStall;
}

int cmd_periods(const WorkbenchConfig& cfg, const std::string& solution_path) {
  const auto config = configuration_for(cfg, solution_path);
  const auto data = from_reflexive(config, cfg.variant);
  const auto report = homology_periods(data, quad_options(cfg));
  Json j;
  j["variant"] = to_string(cfg.variant);
  j["configuration"] = to_json(data.config);
  j["periods"] = to_json(report);
  j["divisors"] = to_json(divisors(data));
  j["completeness"] = to_json(completeness_check(data));
  write_file(out_path(cfg, "periods.json"), j.dump(2) + "\n");
  std::printf("%-6s %-24s %-24s %-10s\n", "loop", "int g dh", "int g^-1 dh", "residual");
  for (const auto& l : report.loops) {
    std::printf("%-6d %11.4e%+11.4ei %11.4e%+11.4ei %10.3e\n", l.index, l.g_dh.real(), l.g_dh.imag(),
                l.ginv_dh.real(), l.ginv_dh.imag(), l.residual / report.scale);
  }
  const bool closed = report.max_residual < cfg.tolerances.period && report.max_dh_residual < 1e-12;
  std::printf("max residual %.3e (threshold %.1e), max |Re int dh| %.3e: %s\n", report.max_residual,
              cfg.tolerances.period, report.max_dh_residual, closed ? "closed" : "OPEN");
  return closed ? kOk : kProperty;
}

int cmd_singular(const WorkbenchConfig& cfg, const std::string& solution_path) {
  const auto config = configuration_for(cfg, solution_path);
  ComponentOptions opt;
  opt.trace.level_tolerance = cfg.tolerances.tracer;
  const auto curves = components(config, opt);
  std::vector<ClassificationReport> classes;
  std::vector<std::vector<ZeroLocus>> overlays;
  bool minima = true;
  for (const auto& c : curves) {
    classes.push_back(classify(config, c, cfg.tolerances.tau));
    overlays.push_back(intersect_zero_loci(config, c));
    minima = minima && classes.back().re_a_zero >= 2 && classes.back().im_a_zero >= 2;
  }
  write_file(out_path(cfg, "singular.svg"), singular_svg(config, curves, overlays));
  write_file(out_path(cfg, "singular.json"), singular_report(config, curves, classes).dump(2) + "\n");
  std::printf("%zu singular loops\n", curves.size());
  for (std::size_t k = 0; k < curves.size(); ++k) {
    std::printf("loop %zu: encloses %s, Re A = 0 at %d points, Im A = 0 at %d points%s\n", k,
                to_string(curves[k].encloses).c_str(), classes[k].re_a_zero, classes[k].im_a_zero,
                curves[k].degenerate ? " (degenerate)" : "");
  }
  return minima ? kOk : kProperty;
}

int cmd_mesh(const WorkbenchConfig& cfg, const std::string& solution_path, bool check_companion) {
  const auto config = configuration_for(cfg, solution_path);
  const auto data = from_reflexive(config, cfg.variant);
  MeshOptions mopt;
  mopt.columns = cfg.mesh.columns;
  mopt.rows = cfg.mesh.rows;
  mopt.both_sheets = cfg.mesh.both_sheets;
  const auto mesh = make_domain_mesh(config, mopt);
  ImmersionOptions iopt;
  iopt.quadrature = quad_options(cfg);
  iopt.period_threshold = cfg.tolerances.period;
  const auto surface = integrate_immersion(data, mesh, iopt);
  const auto format = parse_mesh_format(cfg.mesh.format);
  write_file(out_path(cfg, "mesh." + cfg.mesh.format), export_mesh(surface, format));
  for (const auto& w : surface.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  Json j;
  j["variant"] = to_string(cfg.variant);
  j["configuration"] = to_json(data.config);
  j["vertices"] = surface.vertices.size();
  j["faces"] = surface.faces.size();
  j["warnings"] = surface.warnings;
  int code = kOk;
  if (check_companion) {
    const double deviation = companion_symmetry_check(from_reflexive(config, Variant::Minimal), mesh, iopt);
    j["companion_deviation"] = deviation;
    std::printf("companion symmetry deviation %.3e\n", deviation);
    if (!(deviation < 1e-6)) code = kProperty;
  }
  write_file(out_path(cfg, "mesh.json"), j.dump(2) + "\n");
  std::printf("%zu vertices, %zu faces -> %s\n", surface.vertices.size(), surface.faces.size(),
              out_path(cfg, "mesh." + cfg.mesh.format).c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxface and minimal surface workbench"};
  std::string config_path, output_dir;
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--output-dir", output_dir, "output directory (overrides MAXFACE_OUTPUT_DIR)");
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  std::string warm_start, solution;
  bool check_companion = false;

  auto* solve = app.add_subcommand("solve", "solve the reflexivity problem");
  add_common(solve, o);
  solve->add_option("--warm-start", warm_start, "solution file of genus p or p-1");

  auto* periods = app.add_subcommand("periods", "period closing report");
  add_common(periods, o);
  periods->add_option("--variant", o.variant, "maximal, minimal or companion");
  periods->add_option("--solution", solution, "use the configuration stored in a solution file");

  auto* singular = app.add_subcommand("singular", "trace and classify the singular set");
  add_common(singular, o);
  singular->add_option("--tau", o.tau, "zero threshold for A, B, E in classification");
  singular->add_option("--solution", solution, "use the configuration stored in a solution file");

  auto* mesh = app.add_subcommand("mesh", "surface mesh export");
  add_common(mesh, o);
  mesh->add_option("--variant", o.variant, "maximal, minimal or companion");
  mesh->add_option("--format", o.format, "obj or ply");
  mesh->add_option("--columns", o.columns, "grid columns");
  mesh->add_option("--rows", o.rows, "grid rows");
  mesh->add_flag("--both-sheets", o.both_sheets, "also mesh the second sheet");
  mesh->add_flag("--check-companion", check_companion, "report the companion symmetry deviation");
  mesh->add_option("--solution", solution, "use the configuration stored in a solution file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    const auto cfg = resolve(config_path, output_dir, o);
    write_file(out_path(cfg, "config_echo.json"), to_json(cfg).dump(2) + "\n");
    if (solve->parsed()) return cmd_solve(cfg, warm_start);
    if (periods->parsed()) return cmd_periods(cfg, solution);
    if (singular->parsed()) return cmd_singular(cfg, solution);
    return cmd_mesh(cfg, solution, check_companion);
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver stalled: %s (best residual %.3e)\n", e.what(), e.best_residual());
    return kSolverStall;
  } catch (const PropertyViolation& e) {
    std::fprintf(stderr, "property violation: %s\n", e.what());
    return kProperty;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kValidation;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage: %s\n", e.what());
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOther;
  }
}
