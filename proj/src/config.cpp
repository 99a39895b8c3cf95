#include "heislap/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heislap/errors.hpp"

namespace heislap {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& field, double fallback,
                  bool required = false) {
  if (!j.contains(field)) {
    if (required) throw config_error("config: missing field '" + field + "'");
    return fallback;
  }
  if (!j[field].is_number())
    throw config_error("config: field '" + field + "' must be a number");
  return j[field].get<double>();
}

int get_int(const json& j, const std::string& field, int fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number_integer())
    throw config_error("config: field '" + field + "' must be an integer");
  return j[field].get<int>();
}

}  // namespace

Polygon RunConfig::make_polygon() const { return Polygon(polygon); }

RunConfig parse_config_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("config " + origin + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw config_error("config " + origin + ": expected an object");

  RunConfig cfg;

  if (j.contains("polygon")) {
    const json& poly = j["polygon"];
    if (!poly.is_array())
      throw config_error("config: field 'polygon' must be an array of [x,y] pairs");
    for (const json& v : poly) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw config_error("config: field 'polygon' entries must be [x,y] pairs");
      cfg.polygon.push_back({v[0].get<double>(), v[1].get<double>()});
    }
  }

  cfg.a = get_number(j, "a", 0.0);
  cfg.b = get_number(j, "b", 1.0);
  if (!(cfg.a < cfg.b)) throw config_error("config: field 'a' must be below 'b'");
  cfg.h_plane = get_number(j, "h_plane", 0.0);
  cfg.h_axial = get_number(j, "h_axial", cfg.h_plane);
  cfg.num_eigenpairs = get_int(j, "num_eigenpairs", 1);
  if (cfg.num_eigenpairs < 1)
    throw config_error("config: field 'num_eigenpairs' must be >= 1");
  cfg.n_beta = get_int(j, "n_beta", 64);
  if (cfg.n_beta < 2) throw config_error("config: field 'n_beta' must be >= 2");
  cfg.tol_bound = get_number(j, "tol_bound", 0.05);

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) throw config_error("config: field 'solver' must be an object");
    cfg.solver.tol = get_number(s, "tol", cfg.solver.tol);
    cfg.solver.max_iter = get_int(s, "max_iter", cfg.solver.max_iter);
    if (s.contains("seed")) {
      if (!s["seed"].is_number_integer() || s["seed"].get<long long>() < 0)
        throw config_error("config: field 'solver.seed' must be a nonnegative integer");
      cfg.solver.seed = s["seed"].get<std::uint64_t>();
    }
    if (!(cfg.solver.tol > 0.0))
      throw config_error("config: field 'solver.tol' must be positive");
    if (cfg.solver.max_iter < 1)
      throw config_error("config: field 'solver.max_iter' must be >= 1");
  }

  if (j.contains("lambda_grid")) {
    const json& g = j["lambda_grid"];
    if (!g.is_object())
      throw config_error("config: field 'lambda_grid' must be an object");
    if (g.contains("min")) cfg.lambda_grid.min = get_number(g, "min", 0.0);
    if (g.contains("max")) cfg.lambda_grid.max = get_number(g, "max", 0.0);
    cfg.lambda_grid.count = get_int(g, "count", 100);
    if (cfg.lambda_grid.count < 2)
      throw config_error("config: field 'lambda_grid.count' must be >= 2");
    if (g.contains("spacing")) {
      if (!g["spacing"].is_string())
        throw config_error("config: field 'lambda_grid.spacing' must be a string");
      std::string sp = g["spacing"].get<std::string>();
      if (sp == "geometric")
        cfg.lambda_grid.geometric = true;
      else if (sp == "linear")
        cfg.lambda_grid.geometric = false;
      else
        throw config_error(
            "config: field 'lambda_grid.spacing' must be 'linear' or 'geometric'");
    }
  }

  if (j.contains("hardy")) {
    const json& hc = j["hardy"];
    if (!hc.is_object()) throw config_error("config: field 'hardy' must be an object");
    cfg.hardy.levels = get_int(hc, "levels", cfg.hardy.levels);
    cfg.hardy.tol = get_number(hc, "tol", cfg.hardy.tol);
    cfg.hardy.max_iter = get_int(hc, "max_iter", cfg.hardy.max_iter);
    if (cfg.hardy.levels < 1)
      throw config_error("config: field 'hardy.levels' must be >= 1");
  }

  if (j.contains("landau")) {
    const json& lc = j["landau"];
    if (!lc.is_object()) throw config_error("config: field 'landau' must be an object");
    cfg.landau.b_field = get_number(lc, "b_field", cfg.landau.b_field);
    cfg.landau.half_width = get_number(lc, "half_width", cfg.landau.half_width);
    cfg.landau.h = get_number(lc, "h", cfg.landau.h);
    cfg.landau.m = get_int(lc, "m", cfg.landau.m);
    if (cfg.landau.b_field < 0.0)
      throw config_error("config: field 'landau.b_field' must be nonnegative");
    if (!(cfg.landau.half_width > 0.0))
      throw config_error("config: field 'landau.half_width' must be positive");
    if (!(cfg.landau.h > 0.0))
      throw config_error("config: field 'landau.h' must be positive");
    if (cfg.landau.m < 1) throw config_error("config: field 'landau.m' must be >= 1");
  }

  if (j.contains("c_mode")) {
    if (!j["c_mode"].is_string())
      throw config_error("config: field 'c_mode' must be a string");
    std::string mode = j["c_mode"].get<std::string>();
    if (mode == "auto")
      cfg.c_mode = CModeConfig::auto_detect;
    else if (mode == "convex")
      cfg.c_mode = CModeConfig::convex;
    else if (mode == "worst_case")
      cfg.c_mode = CModeConfig::worst_case;
    else if (mode == "measured")
      cfg.c_mode = CModeConfig::measured;
    else
      throw config_error("config: field 'c_mode' must be one of "
                         "'auto', 'convex', 'worst_case', 'measured'");
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw config_error("config: field 'output' must be an object");
    auto get_path = [&o](const char* name) -> std::string {
      if (!o.contains(name)) return {};
      if (!o[name].is_string())
        throw config_error(std::string("config: field 'output.") + name +
                           "' must be a string");
      return o[name].get<std::string>();
    };
    cfg.out_geometry = get_path("geometry");
    cfg.out_spectrum = get_path("spectrum");
    cfg.out_report = get_path("report");
    cfg.out_hardy = get_path("hardy");
    cfg.out_landau = get_path("landau");
    cfg.out_asymp = get_path("asymp");
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), "'" + path + "'");
}

}  // namespace heislap
