#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxface/reflexivity.hpp"
#include "maxface/singular.hpp"
#include "maxface/surface.hpp"
#include "maxface/weierstrass.hpp"

namespace maxface {

using Json = nlohmann::ordered_json;

struct Tolerances {
  double quadrature = 1e-13;  // relative
  double solver = 1e-7;       // reflexivity success threshold
  double tracer = 1e-12;      // |log|G|| after correction
  double tau = 1e-8;          // zero threshold for A, B, E in classification
  double period = 1e-8;       // normalised period residual accepted as closed
};

struct MeshSettings {
  int columns = 50;
  int rows = 50;
  std::string format = "obj";
  bool both_sheets = false;
};

/// Resolved run configuration; documented in docs/FORMATS.md.
struct WorkbenchConfig {
  PatternKind kind = PatternKind::Zigzag;
  int genus = 1;
  Variant variant = Variant::Maximal;
  std::optional<Complex> c;
  std::vector<double> t;          // t_1..t_p; empty means "solve"
  std::vector<double> exponents;  // a_{-p..p}; empty means the pattern of `kind`
  Tolerances tolerances{};
  MeshSettings mesh{};
  std::string output_dir = "maxface_out";

  /// Throws DomainError on an inconsistent configuration.
  void validate() const;
  std::vector<double> resolved_exponents() const;
  /// Explicit configuration (requires t); c defaults to 1.
  MarkedConfiguration explicit_configuration() const;
};

Json to_json(const WorkbenchConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
WorkbenchConfig config_from_json(const Json& j);

Json complex_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const MarkedConfiguration& config);
Json to_json(const ReflexiveSolution& solution);
/// Shape stored in a solution file (the warm-start input).
SymmetricShape shape_from_json(const Json& j);
/// Marked configuration stored in a solution file.
MarkedConfiguration configuration_from_json(const Json& j);

Json to_json(const PeriodReport& report);
Json to_json(const DivisorReport& report);
Json to_json(const CompletenessReport& report);
Json to_json(const SingularPointRecord& record);
Json singular_report(const MarkedConfiguration& config, const std::vector<SingularCurve>& curves,
                     const std::vector<ClassificationReport>& classes);

/// Reads a whole file; throws IoError.
std::string read_file(const std::string& path);
/// Writes a whole file, creating parent directories; throws IoError.
void write_file(const std::string& path, const std::string& contents);

}  // namespace maxface
