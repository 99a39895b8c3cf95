#pragma once

#include <string>

#include "heislap/config.hpp"

namespace heislap {

// Exit codes shared by the library-level runners and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;        // invalid config / input
inline constexpr int kExitUnconverged = 2;   // solver did not converge
inline constexpr int kExitBoundViolated = 3; // a bound row failed

struct RunPaths {
  std::string output;       // overrides the config's output path; "-" = stdout
  std::string spectrum_in;  // `check`/`asymp`: precomputed spectrum CSV
  std::string json_mirror;  // optional JSON mirror of the report
  std::string dump_matrix;  // optional Matrix Market dump (spectrum)
};

int run_geom(const RunConfig& cfg, const RunPaths& paths);
int run_hardy(const RunConfig& cfg, const RunPaths& paths);
int run_spectrum(const RunConfig& cfg, const RunPaths& paths);
int run_check(const RunConfig& cfg, const RunPaths& paths);
int run_landau(const RunConfig& cfg, const RunPaths& paths);
int run_asymp(const RunConfig& cfg, const RunPaths& paths);

// Loads the config and dispatches; maps config_error -> 1 and
// convergence_error -> 2, printing the diagnostic to stderr.
int run_subcommand(const std::string& name, const std::string& config_path,
                   const RunPaths& paths);

}  // namespace heislap
