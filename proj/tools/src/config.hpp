#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "expwave/domain.hpp"
#include "expwave/initial_data.hpp"
#include "expwave/quadrature.hpp"
#include "expwave/spectral.hpp"

namespace expwave::cli {

// exit(2): bad flag/config values, malformed problem descriptions
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// exit(3): filesystem trouble, unreadable or unwritable paths
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One flat key set shared by every subcommand; each key is both a JSON config
// entry and a --flag of the same name (flags win over the file).
struct RunConfig {
  double ell = 0.5;
  double t0 = 2.0;
  int n_modes = 16;           // series truncation and synthesis order
  int panels = 16;
  int nodes = 8;
  int samples_per_period = 4096;
  std::string endpoint = "fixed";  // fixed | moving
  double window = 0.0;             // observation/control length; 0 = use multiplier
  double window_multiplier = 1.0;  // times the critical time;
  std::string data_kind = "bump";  // bump | modes | coeff_csv | sampled_csv | zero
  double bump_center = 0.5;        // fraction of ell*t0
  double bump_halfwidth = 0.25;    // fraction of ell*t0
  double bump_amplitude = 1.0;
  int band = 8;                    // mode count of random band-limited draws
  double amplitude = 0.5;          // coefficient scale of the draws
  std::uint64_t seed = 2026;
  std::string coeff_csv;
  std::string disp_csv;
  std::string vel_csv;
  double tolerance = 1e-8;          // identity suite
  double control_tolerance = 1e-6;  // terminal energy ratio
  double delta = 0.1;               // sharpness scenario offset
  int ensemble = 20;                // observability draws
  int grid_x = 33;
  int grid_t = 17;
  bool oracle = false;  // solve: also write the characteristics comparison
  std::string output_dir;  // empty: $EXPWAVE_OUT or "."
};

// throws ConfigError on anything make_domain or the commands would choke on
void validate(const RunConfig& cfg);

Endpoint parse_endpoint(const RunConfig& cfg);
MovingDomain domain_of(const RunConfig& cfg);
QuadratureRule rule_of(const RunConfig& cfg);
// window length: explicit wins, else multiplier * critical time
double window_of(const RunConfig& cfg, const MovingDomain& d);

// resolved output directory (created if absent) joined with the file name
std::string out_path(const RunConfig& cfg, const std::string& name);

struct Problem {
  MovingDomain domain;
  InitialData data;
  // present when the data is exactly band-limited (modes/coeff_csv/zero)
  std::optional<SpectralSolution> exact;
};

Problem build_problem(const RunConfig& cfg);

// exact coefficients when available, otherwise the projection at n_modes
SpectralSolution solution_of(const RunConfig& cfg, const Problem& p);

}  // namespace expwave::cli
