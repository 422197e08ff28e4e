#include "maxface/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace maxface {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

template <class T>
void read_if(const Json& j, const char* key, T& value) {
  if (j.contains(key)) value = j.at(key).get<T>();
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) throw DomainError("unknown key '" + item.key() + "' in " + where);
  }
}

}  // namespace

void WorkbenchConfig::validate() const {
  if (genus < 1) throw DomainError("genus must be at least 1");
  if (!t.empty()) {
    if (static_cast<int>(t.size()) != genus) {
      throw DomainError("t lists t_1..t_p and must have genus entries");
    }
    double prev = 0.0;
    for (double x : t) {
      if (!(x > prev)) throw DomainError("t must be positive and strictly increasing");
      prev = x;
    }
  }
  if (!exponents.empty()) {
    if (static_cast<int>(exponents.size()) != 2 * genus + 1) {
      throw DomainError("exponents list a_{-p..p} and must have 2*genus+1 entries");
    }
    for (double a : exponents) {
      if (a != 0.5 && a != -0.5) throw DomainError("exponents must be +-1/2");
    }
  }
  if (c && std::abs(*c) == 0.0) throw DomainError("c must be nonzero");
  const double tol[] = {tolerances.quadrature, tolerances.solver, tolerances.tracer, tolerances.tau,
                        tolerances.period};
  for (double x : tol) {
    if (!(x > 0.0)) throw DomainError("tolerances must be positive");
  }
  if (mesh.columns < 1 || mesh.rows < 1) throw DomainError("mesh needs at least one cell");
  if (mesh.format != "obj" && mesh.format != "ply") throw DomainError("mesh format must be obj or ply");
  if (output_dir.empty()) throw DomainError("output_dir must not be empty");
}

std::vector<double> WorkbenchConfig::resolved_exponents() const {
  return exponents.empty() ? make_pattern(kind, genus) : exponents;
}

MarkedConfiguration WorkbenchConfig::explicit_configuration() const {
  if (t.empty()) throw DomainError("explicit configuration needs t");
  return MarkedConfiguration::symmetric(t, resolved_exponents(), c.value_or(Complex(1.0, 0.0)));
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("complex values are a number or [re, im]");
}

Json to_json(const WorkbenchConfig& config) {
  Json j;
  j["kind"] = to_string(config.kind);
  j["genus"] = config.genus;
  j["variant"] = to_string(config.variant);
  j["c"] = config.c ? complex_json(*config.c) : Json(nullptr);
  j["t"] = config.t;
  j["exponents"] = config.resolved_exponents();
  j["tolerances"] = {{"quadrature", config.tolerances.quadrature},
                     {"solver", config.tolerances.solver},
                     {"tracer", config.tolerances.tracer},
                     {"tau", config.tolerances.tau},
                     {"period", config.tolerances.period}};
  j["mesh"] = {{"columns", config.mesh.columns},
               {"rows", config.mesh.rows},
               {"format", config.mesh.format},
               {"both_sheets", config.mesh.both_sheets}};
  j["output_dir"] = config.output_dir;
  return j;
}

WorkbenchConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("configuration must be a JSON object");
  reject_unknown(j, {"kind", "genus", "variant", "c", "t", "exponents", "tolerances", "mesh", "output_dir"},
                 "configuration");
  WorkbenchConfig config;
  try {
    if (j.contains("kind")) config.kind = parse_pattern_kind(j.at("kind").get<std::string>());
    read_if(j, "genus", config.genus);
    if (j.contains("variant")) config.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("c") && !j.at("c").is_null()) config.c = complex_from_json(j.at("c"));
    read_if(j, "t", config.t);
    read_if(j, "exponents", config.exponents);
    if (j.contains("tolerances")) {
      const auto& tol = j.at("tolerances");
      reject_unknown(tol, {"quadrature", "solver", "tracer", "tau", "period"}, "tolerances");
      read_if(tol, "quadrature", config.tolerances.quadrature);
      read_if(tol, "solver", config.tolerances.solver);
      read_if(tol, "tracer", config.tolerances.tracer);
      read_if(tol, "tau", config.tolerances.tau);
      read_if(tol, "period", config.tolerances.period);
    }
    if (j.contains("mesh")) {
      const auto& m = j.at("mesh");
      reject_unknown(m, {"columns", "rows", "format", "both_sheets"}, "mesh");
      read_if(m, "columns", config.mesh.columns);
      read_if(m, "rows", config.mesh.rows);
      read_if(m, "format", config.mesh.format);
      read_if(m, "both_sheets", config.mesh.both_sheets);
    }
    read_if(j, "output_dir", config.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("configuration: ") + e.what());
  }
  config.validate();
  return config;
}

Json to_json(const MarkedConfiguration& config) {
  return {{"genus", config.genus()},
          {"t", to_std(config.points())},
          {"exponents", to_std(config.exponents())},
          {"c", complex_json(config.c())}};
}

Json to_json(const ReflexiveSolution& s) {
  const auto& r = s.residual;
  return {{"kind", to_string(s.shape.kind)},
          {"genus", s.shape.genus},
          {"reflexive", s.reflexive},
          {"iterations", s.iterations},
          {"arms", s.shape.arms},
          {"configuration", to_json(s.config)},
          {"residual",
           {{"total", r.total},
            {"match", r.match_residual},
            {"cross_ratio", r.cross_ratio_residual},
            {"gap", r.gap_residual},
            {"side_Gdh", r.side_residual_Gdh},
            {"side_Ginv_dh", r.side_residual_Ginv_dh},
            {"t", to_std(r.t)},
            {"s", to_std(r.s)}}},
          {"symmetry_deviation", s.symmetry_deviation}};
}

SymmetricShape shape_from_json(const Json& j) {
  try {
    SymmetricShape shape;
    shape.kind = parse_pattern_kind(j.at("kind").get<std::string>());
    shape.genus = j.at("genus").get<int>();
    shape.arms = j.at("arms").get<std::vector<double>>();
    if (static_cast<int>(shape.arms.size()) != shape.genus) throw DomainError("solution file: arms must have genus entries");
    return shape;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("solution file: ") + e.what());
  }
}

MarkedConfiguration configuration_from_json(const Json& j) {
  try {
    const auto& c = j.contains("configuration") ? j.at("configuration") : j;
    return MarkedConfiguration::general(c.at("t").get<std::vector<double>>(),
                                        c.at("exponents").get<std::vector<double>>(), complex_from_json(c.at("c")));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("solution file: ") + e.what());
  }
}

Json to_json(const PeriodReport& report) {
  Json loops = Json::array();
  for (const auto& l : report.loops) {
    loops.push_back({{"index", l.index},
                     {"g_dh", complex_json(l.g_dh)},
                     {"ginv_dh", complex_json(l.ginv_dh)},
                     {"dh", complex_json(l.dh)},
                     {"residual", l.residual},
                     {"dh_residual", l.dh_residual}});
  }
  return {{"loops", loops},
          {"scale", report.scale},
          {"max_residual", report.max_residual},
          {"max_dh_residual", report.max_dh_residual}};
}

Json to_json(const DivisorReport& report) {
  Json points = Json::array();
  for (const auto& d : report.points) {
    points.push_back({{"point", d.index ? Json(*d.index) : Json("infinity")},
                      {"order_g", d.order_g},
                      {"order_dh", d.order_dh},
                      {"order_g_dh", d.order_g_dh},
                      {"order_ginv_dh", d.order_ginv_dh}});
  }
  return {{"points", points}, {"divisor_condition", report.divisor_condition}};
}

Json to_json(const CompletenessReport& r) {
  return {{"complete", r.complete},
          {"single_end", r.single_end},
          {"gauss_map_at_end", r.gauss_map_at_end ? Json(*r.gauss_map_at_end) : Json(nullptr)},
          {"metric_complete", r.metric_complete},
          {"order_g_at_end", r.order_g_at_end},
          {"order_dh_at_end", r.order_dh_at_end},
          {"enneper_type", r.enneper_type},
          {"reason", r.reason}};
}

Json to_json(const SingularPointRecord& r) {
  const char* vanishing = r.vanishing == Vanishing::ReA ? "ReA" : r.vanishing == Vanishing::ImA ? "ImA" : "none";
  return {{"z", complex_json(r.z)},
          {"A", complex_json(r.A)},
          {"B", complex_json(r.B)},
          {"E", complex_json(r.E)},
          {"vanishing", vanishing},
          {"classification", to_string(r.classification)},
          {"borderline", r.borderline},
          {"alternative", r.alternative ? Json(to_string(*r.alternative)) : Json(nullptr)}};
}

Json singular_report(const MarkedConfiguration& config, const std::vector<SingularCurve>& curves,
                     const std::vector<ClassificationReport>& classes) {
  Json loops = Json::array();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    Json special = Json::array();
    for (const auto& r : classes[k].special) special.push_back(to_json(r));
    loops.push_back({{"component_id", c.component_id},
                     {"encloses", to_string(c.encloses)},
                     {"enclosed", c.enclosed},
                     {"real_crossings", c.real_crossings},
                     {"degenerate", c.degenerate},
                     {"polyline_points", c.points.size()},
                     {"winding", winding_of_G(config, c)},
                     {"re_a_zero", classes[k].re_a_zero},
                     {"im_a_zero", classes[k].im_a_zero},
                     {"not_a_front", classes[k].not_a_front},
                     {"minima_met", classes[k].re_a_zero >= 2 && classes[k].im_a_zero >= 2},
                     {"cuspidal_edge_samples", classes[k].samples.size()},
                     {"special_points", special}});
  }
  return {{"configuration", to_json(config)}, {"components", curves.size()}, {"loops", loops}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return s.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  out.close();
  if (!out) throw IoError("error writing " + path);
}

}  // namespace maxface
