#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heislap/geometry.hpp"
#include "heislap/hardy.hpp"

namespace heislap {

struct SolverConfig {
  double tol = 1e-8;
  int max_iter = 600;
  std::uint64_t seed = 1234;
};

struct LambdaGridConfig {
  std::optional<double> min;  // default: lambda_1
  std::optional<double> max;  // default: 0.9 * largest computed eigenvalue
  int count = 100;
  bool geometric = true;
};

struct HardyConfig {
  int levels = 3;
  double tol = 1e-8;
  int max_iter = 10000;
};

struct LandauConfig {
  double b_field = 1.0;
  double half_width = 8.0;
  double h = 0.1;
  int m = 4;
};

// "auto" picks convex -> 2 / non-convex -> worst_case from the polygon.
enum class CModeConfig { auto_detect, convex, worst_case, measured };

struct RunConfig {
  std::vector<Point2> polygon;
  double a = 0.0;
  double b = 1.0;
  double h_plane = 0.0;
  double h_axial = 0.0;
  int num_eigenpairs = 1;
  SolverConfig solver;
  LambdaGridConfig lambda_grid;
  HardyConfig hardy;
  LandauConfig landau;
  CModeConfig c_mode = CModeConfig::auto_detect;
  int n_beta = 64;
  double tol_bound = 0.05;

  std::string out_geometry;  // empty -> stdout
  std::string out_spectrum;
  std::string out_report;
  std::string out_hardy;
  std::string out_landau;
  std::string out_asymp;

  Polygon make_polygon() const;  // validates
};

// Parses and validates a config file; config_error names the offending
// field.
RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& text, const std::string& origin);

}  // namespace heislap
