#include <string>

#include <CLI11.hpp>

#include "heislap/runner.hpp"

// Subcommands: geom, hardy, spectrum, check, landau, asymp. One JSON config
// drives each run; flags only select outputs. Exit codes: 0 success,
// 1 invalid config, 2 solver non-convergence, 3 bound violation.
int main(int argc, char** argv) {
  CLI::App app{"Dirichlet Heisenberg Laplacian on cylinders: spectra, geometric "
               "functionals, Hardy constant and eigenvalue-sum bound reports"};
  app.require_subcommand(1);

  std::string config_path;
  heislap::RunPaths paths;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("-o,--output", paths.output,
                    "output CSV path ('-' or empty = stdout)");
    sub->add_option("--json", paths.json_mirror, "JSON mirror of the report");
    return sub;
  };

  add_common(app.add_subcommand("geom", "geometry summary of the cross-section"));
  add_common(app.add_subcommand("hardy", "Hardy-constant refinement sweep"));
  auto* spectrum =
      add_common(app.add_subcommand("spectrum", "lowest eigenpairs of the cylinder"));
  spectrum->add_option("--dump-matrix", paths.dump_matrix,
                       "write the assembled operator in Matrix Market format");
  auto* check =
      add_common(app.add_subcommand("check", "bound report over a lambda grid"));
  check->add_option("--spectrum", paths.spectrum_in,
                    "reuse a previously computed spectrum CSV");
  add_common(app.add_subcommand("landau", "2D magnetic (Landau) spectrum"));
  auto* asymp = add_common(
      app.add_subcommand("asymp", "Weyl ratio and remainder-exponent diagnostic"));
  asymp->add_option("--spectrum", paths.spectrum_in,
                    "reuse a previously computed spectrum CSV");

  CLI11_PARSE(app, argc, argv);

  return heislap::run_subcommand(app.get_subcommands().front()->get_name(),
                                 config_path, paths);
}
