#include "heislap/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "heislap/bounds.hpp"
#include "heislap/errors.hpp"
#include "heislap/hardy.hpp"
#include "heislap/numio.hpp"
#include "heislap/operator.hpp"
#include "heislap/eigensolve.hpp"

namespace heislap {

namespace {

using nlohmann::json;

// All report emission funnels through here: %.17g floats, LF line ends, so a
// parse -> re-emit cycle is byte-identical and reruns are reproducible.
class Output {
 public:
  Output(const std::string& cfg_path, const std::string& flag_path) {
    std::string path = !flag_path.empty() ? flag_path : cfg_path;
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw config_error("cannot open output file '" + path + "'");
      use_file_ = true;
    }
  }
  std::ostream& stream() { return use_file_ ? file_ : std::cout; }

 private:
  std::ofstream file_;
  bool use_file_ = false;
};

void write_json_mirror(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("cannot open json mirror '" + path + "'");
  out << j.dump(2) << '\n';
}

CMode resolve_c_mode(const RunConfig& cfg, const Polygon& poly) {
  switch (cfg.c_mode) {
    case CModeConfig::convex:
      return CMode::convex;
    case CModeConfig::worst_case:
      return CMode::worst_case;
    case CModeConfig::measured:
      return CMode::measured;
    case CModeConfig::auto_detect:
      return poly.convex() ? CMode::convex : CMode::worst_case;
  }
  throw config_error("config: unknown c_mode");
}

Spectrum compute_spectrum(const RunConfig& cfg, const Polygon& poly,
                          bool keep_vectors, const std::string& dump_matrix) {
  Grid3D grid = build_grid(poly, cfg.a, cfg.b, cfg.h_plane, cfg.h_axial);
  HeisenbergForm form = assemble_heisenberg(grid);
  if (!dump_matrix.empty()) {
    std::ofstream mm(dump_matrix, std::ios::binary | std::ios::trunc);
    if (!mm) throw config_error("cannot open matrix dump '" + dump_matrix + "'");
    write_matrix_market(form.matrix, mm);
  }
  return lobpcg_smallest(form.matrix, cfg.num_eigenpairs, cfg.solver.tol,
                         cfg.solver.max_iter, cfg.solver.seed, keep_vectors);
}

void emit_spectrum_csv(const Spectrum& spec, std::ostream& os) {
  os << "index,eigenvalue,residual\n";
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
    os << i + 1 << ',' << fp17(spec.eigenvalues[i]) << ','
       << fp17(spec.residuals[i]) << '\n';
}

Spectrum parse_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open spectrum file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || csv_split(line) !=
      std::vector<std::string>{"index", "eigenvalue", "residual"})
    throw config_error("spectrum file '" + path + "': bad header");
  Spectrum spec;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv_split(line);
    if (fields.size() != 3)
      throw config_error("spectrum file '" + path + "': malformed row '" + line + "'");
    spec.eigenvalues.push_back(parse_double(fields[1], "eigenvalue"));
    spec.residuals.push_back(parse_double(fields[2], "residual"));
    spec.converged.push_back(1);
  }
  if (spec.eigenvalues.empty())
    throw config_error("spectrum file '" + path + "': no eigenvalues");
  for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues[i] < spec.eigenvalues[i - 1])
      throw config_error("spectrum file '" + path + "': eigenvalues not ascending");
  return spec;
}

std::vector<double> resolve_lambda_grid(const RunConfig& cfg, const Spectrum& spec) {
  double lo = cfg.lambda_grid.min.value_or(spec.eigenvalues.front());
  double hi = cfg.lambda_grid.max.value_or(0.9 * spec.max_eigenvalue());
  return make_lambda_grid(lo, hi, cfg.lambda_grid.count, cfg.lambda_grid.geometric);
}

json geometry_json(const GeometrySummary& g) {
  return json{{"area", g.area_omega},       {"inradius", g.inradius},
              {"l_omega", g.l_omega},       {"height", g.height},
              {"volume", g.volume_Omega},   {"beta_star", g.beta_star}};
}

}  // namespace

int run_geom(const RunConfig& cfg, const RunPaths& paths) {
  Polygon poly = cfg.make_polygon();
  DistanceField field(poly, cfg.h_plane);
  GeometrySummary s = summarize_geometry(field, cfg.b - cfg.a, cfg.n_beta);
  Output out(cfg.out_geometry, paths.output);
  out.stream() << "area,inradius,l_omega,height,volume\n"
               << fp17(s.area_omega) << ',' << fp17(s.inradius) << ','
               << fp17(s.l_omega) << ',' << fp17(s.height) << ','
               << fp17(s.volume_Omega) << '\n';
  write_json_mirror(paths.json_mirror, geometry_json(s));
  return kExitOk;
}

int run_hardy(const RunConfig& cfg, const RunPaths& paths) {
  Polygon poly = cfg.make_polygon();
  Output out(cfg.out_hardy, paths.output);
  out.stream() << "h,c_est,residual\n";
  HardyEstimate est;
  double h = cfg.h_plane;
  for (int level = 0; level < cfg.hardy.levels; ++level, h *= 0.5) {
    DistanceField field(poly, h);
    est = estimate_hardy_constant(field, cfg.hardy.tol, cfg.hardy.max_iter);
    out.stream() << fp17(h) << ',' << fp17(est.c_est) << ','
                 << fp17(est.rayleigh_residual) << '\n';
  }
  json mirror{{"c_est", est.c_est},
              {"mesh", est.mesh},
              {"residual", est.rayleigh_residual},
              {"note", "c_est is a discrete lower estimate of c; "
                       "it certifies no upper bound"}};
  write_json_mirror(paths.json_mirror, mirror);
  return kExitOk;
}

int run_spectrum(const RunConfig& cfg, const RunPaths& paths) {
  Polygon poly = cfg.make_polygon();
  Spectrum spec = compute_spectrum(cfg, poly, false, paths.dump_matrix);
  Output out(cfg.out_spectrum, paths.output);
  emit_spectrum_csv(spec, out.stream());
  json mirror{{"eigenvalues", spec.eigenvalues},
              {"residuals", spec.residuals},
              {"iterations", spec.iterations},
              {"seed", spec.seed},
              {"converged", spec.all_converged()}};
  write_json_mirror(paths.json_mirror, mirror);
  if (!spec.all_converged()) {
    std::cerr << "spectrum: unconverged pairs after " << spec.iterations
              << " iterations\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

int run_check(const RunConfig& cfg, const RunPaths& paths) {
  Polygon poly = cfg.make_polygon();
  Spectrum spec;
  if (!paths.spectrum_in.empty()) {
    spec = parse_spectrum_csv(paths.spectrum_in);
  } else {
    spec = compute_spectrum(cfg, poly, false, {});
    if (!spec.all_converged()) {
      std::cerr << "check: spectrum did not converge\n";
      return kExitUnconverged;
    }
  }

  DistanceField field(poly, cfg.h_plane);
  GeometrySummary geom = summarize_geometry(field, cfg.b - cfg.a, cfg.n_beta);
  CMode mode = resolve_c_mode(cfg, poly);
  double c_used;
  if (mode == CMode::measured) {
    HardyEstimate est = estimate_hardy_constant(field, cfg.hardy.tol,
                                                cfg.hardy.max_iter);
    c_used = hardy_bound_used(est, mode);
    std::cerr << "check: c_mode 'measured' is a heuristic (c_est is a lower "
                 "estimate of c); c_used = " << fp17(c_used) << '\n';
  } else {
    c_used = (mode == CMode::convex) ? 2.0 : 4.0;
  }

  std::vector<double> grid = resolve_lambda_grid(cfg, spec);
  BoundReport report =
      check_bounds(spec, geom, c_used, grid, poly.convex(), cfg.tol_bound);

  Output out(cfg.out_report, paths.output);
  out.stream() << "lambda,lhs,rhs_berezin,rhs_theorem,rhs_corollary,"
                  "margin_berezin,margin_theorem,c_used,beta_star,truncated\n";
  for (const BoundRow& row : report.rows) {
    out.stream() << fp17(row.lambda) << ',' << fp17(row.lhs) << ','
                 << fp17(row.rhs_berezin) << ',' << fp17(row.rhs_theorem) << ','
                 << (row.rhs_corollary ? fp17(*row.rhs_corollary) : std::string())
                 << ',' << fp17(row.margin_berezin) << ','
                 << fp17(row.margin_theorem) << ',' << fp17(report.c_used) << ','
                 << fp17(report.geometry.beta_star) << ','
                 << (row.truncated ? '1' : '0') << '\n';
  }
  json mirror{{"geometry", geometry_json(geom)},
              {"c_used", report.c_used},
              {"c_mode_measured_heuristic", mode == CMode::measured},
              {"tol_bound", report.tol_bound},
              {"lambda_max_computed", report.lambda_max_computed},
              {"rows", report.rows.size()},
              {"failures", report.any_failure}};
  write_json_mirror(paths.json_mirror, mirror);
  if (report.any_failure) {
    std::cerr << "check: bound violation beyond the " << fp17(cfg.tol_bound)
              << " slack\n";
    return kExitBoundViolated;
  }
  return kExitOk;
}

int run_landau(const RunConfig& cfg, const RunPaths& paths) {
  SparseSymMatrix a = assemble_magnetic2d(cfg.landau.b_field, cfg.landau.half_width,
                                          cfg.landau.h);
  Spectrum spec = lobpcg_smallest(a, cfg.landau.m, cfg.solver.tol,
                                  cfg.solver.max_iter, cfg.solver.seed, false);
  Output out(cfg.out_landau, paths.output);
  emit_spectrum_csv(spec, out.stream());
  json mirror{{"b_field", cfg.landau.b_field},
              {"half_width", cfg.landau.half_width},
              {"h", cfg.landau.h},
              {"eigenvalues", spec.eigenvalues},
              {"converged", spec.all_converged()}};
  write_json_mirror(paths.json_mirror, mirror);
  if (!spec.all_converged()) {
    std::cerr << "landau: unconverged pairs\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

int run_asymp(const RunConfig& cfg, const RunPaths& paths) {
  Polygon poly = cfg.make_polygon();
  Spectrum spec;
  if (!paths.spectrum_in.empty()) {
    spec = parse_spectrum_csv(paths.spectrum_in);
  } else {
    spec = compute_spectrum(cfg, poly, false, {});
    if (!spec.all_converged()) {
      std::cerr << "asymp: spectrum did not converge\n";
      return kExitUnconverged;
    }
  }
  DistanceField field(poly, cfg.h_plane);
  const double volume = poly.area() * (cfg.b - cfg.a);
  std::vector<double> grid = resolve_lambda_grid(cfg, spec);
  double fit = remainder_exponent_fit(spec, volume, grid);

  Output out(cfg.out_asymp, paths.output);
  out.stream() << "lambda,weyl_ratio,remainder\n";
  for (double lambda : grid) {
    double ratio = weyl_ratio(spec, volume, lambda);
    double remainder = berezin_rhs(volume, lambda) - riesz_mean(spec, lambda);
    out.stream() << fp17(lambda) << ',' << fp17(ratio) << ',' << fp17(remainder)
                 << '\n';
  }
  std::cerr << "asymp: empirical remainder exponent " << fp17(fit)
            << " (diagnostic only; the true second-term order is open)\n";
  json mirror{{"volume", volume},
              {"remainder_exponent_fit", fit},
              {"lambda_count", grid.size()}};
  write_json_mirror(paths.json_mirror, mirror);
  return kExitOk;
}

int run_subcommand(const std::string& name, const std::string& config_path,
                   const RunPaths& paths) {
  try {
    RunConfig cfg = load_config(config_path);
    if (name == "geom") return run_geom(cfg, paths);
    if (name == "hardy") return run_hardy(cfg, paths);
    if (name == "spectrum") return run_spectrum(cfg, paths);
    if (name == "check") return run_check(cfg, paths);
    if (name == "landau") return run_landau(cfg, paths);
    if (name == "asymp") return run_asymp(cfg, paths);
    std::cerr << "unknown subcommand '" << name << "'\n";
    return kExitConfig;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnconverged;
  }
}

}  // namespace heislap
