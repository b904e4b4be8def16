#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "monodromy/lie_context.hpp"

namespace monodromy {

//------------------------------------------------------------------------------
// ExperimentConfig: everything a suite run depends on. The file format is flat
// key=value text ('#' comments, blank lines ignored); a JSON object with the
// same keys can be layered on top as an override. Keys:
//   n, a0 (comma-separated complex entries, e.g. "1,-1" or "0,1,1+1i"),
//   base_dir (radians), samples, seed, xnorm, ode_rtol, ode_atol, fd_step,
//   series_order, workers, diagonal_only, checks (comma-separated subset of
//   the check names below; empty = all), out, format (json|csv), plot,
//   tol.<name> (per-residual tolerance override).
//------------------------------------------------------------------------------
struct ExperimentConfig {
  int n = 2;
  std::vector<cplx> a0 = {cplx{1.0, 0.0}, cplx{-1.0, 0.0}};
  double base_direction = kPi / 2.0;
  int samples = 20;
  std::uint64_t seed = 1;
  double xnorm = 0.35;          // norm bound for the sampled residues
  double ode_rtol = 1e-12;
  double ode_atol = 1e-14;
  double fd_step = 1e-4;
  int series_order = 40;        // cap on the divergent-series truncation order
  int workers = 0;              // 0 = available parallelism
  bool diagonal_only = false;   // restrict the x samples to the Cartan
  std::vector<std::string> checks;  // empty = every registered check
  std::map<std::string, double> tolerances;  // overrides by residual name
  std::string out_path;
  std::string format = "json";  // json | csv
  std::string plot_path;        // optional ray-diagram SVG output
};

// Names of the registered suite checks, in canonical run order.
const std::vector<std::string>& all_check_names();

// Names of every tested residual (the valid targets of tol.<name> overrides).
std::vector<std::string> all_residual_names();

// Default tolerance for a residual name (ConfigError for unknown names).
double default_tolerance(const std::string& residual_name);
// Configured tolerance: override if present, default otherwise.
double tolerance_for(const ExperimentConfig& cfg, const std::string& residual_name);

// Diagonal A0 matrix built from the configured entries.
Mat a0_matrix(const ExperimentConfig& cfg);

// Parse one complex entry: "1", "-2.5", "1i", "1+1i", "0.5-2i".
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

// key=value text -> config (starting from defaults). ConfigError on unknown
// keys or malformed values.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Layer a JSON object (same keys, "tol.<name>" or a nested "tol" object) over
// an existing config.
void apply_json_overrides(ExperimentConfig& cfg, const std::string& json_text);

// Invariant check: n matches a0, A0 regular (distinct entries), base direction
// off the rays, tolerances positive, sane numeric ranges. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

}  // namespace monodromy
