#include "config.hpp"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <set>

namespace expwave::cli {

void validate(const RunConfig& cfg) {
  if (!(cfg.ell > 0.0 && cfg.ell < 1.0))
    throw ConfigError("ell must lie in (0,1)");
  if (!(cfg.t0 > 0.0)) throw ConfigError("t0 must be positive");
  if (cfg.n_modes < 1) throw ConfigError("n_modes must be >= 1");
  if (cfg.panels < 1 || cfg.nodes < 2)
    throw ConfigError("quadrature needs panels >= 1, nodes >= 2");
  if (cfg.samples_per_period < 16)
    throw ConfigError("samples_per_period must be >= 16");
  if (cfg.endpoint != "fixed" && cfg.endpoint != "moving")
    throw ConfigError("endpoint must be 'fixed' or 'moving'");
  if (cfg.window < 0.0) throw ConfigError("window must be >= 0");
  if (!(cfg.window_multiplier > 0.0))
    throw ConfigError("window_multiplier must be positive");
  static const std::set<std::string> kinds = {"bump", "modes", "coeff_csv",
                                              "sampled_csv", "zero"};
  if (!kinds.count(cfg.data_kind))
    throw ConfigError("data_kind must be one of bump|modes|coeff_csv|sampled_csv|zero");
  if (cfg.data_kind == "coeff_csv" && cfg.coeff_csv.empty())
    throw ConfigError("data_kind coeff_csv requires --coeff_csv");
  if (cfg.data_kind == "sampled_csv" && cfg.disp_csv.empty())
    throw ConfigError("data_kind sampled_csv requires --disp_csv");
  if (!(cfg.bump_halfwidth > 0.0)) throw ConfigError("bump_halfwidth must be positive");
  if (cfg.band < 1) throw ConfigError("band must be >= 1");
  if (!(cfg.tolerance > 0.0) || !(cfg.control_tolerance > 0.0))
    throw ConfigError("tolerances must be positive");
  if (!(cfg.delta > 0.0)) throw ConfigError("delta must be positive");
  if (cfg.ensemble < 1) throw ConfigError("ensemble must be >= 1");
  if (cfg.grid_x < 2 || cfg.grid_t < 2) throw ConfigError("grids need >= 2 points");
}

Endpoint parse_endpoint(const RunConfig& cfg) {
  return cfg.endpoint == "moving" ? Endpoint::moving : Endpoint::fixed;
}

MovingDomain domain_of(const RunConfig& cfg) {
  return make_domain(cfg.ell, cfg.t0);
}

QuadratureRule rule_of(const RunConfig& cfg) {
  return QuadratureRule{cfg.panels, cfg.nodes};
}

double window_of(const RunConfig& cfg, const MovingDomain& d) {
  return cfg.window > 0.0 ? cfg.window
                          : cfg.window_multiplier * d.critical_time;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::string dir = cfg.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv("EXPWAVE_OUT");
    dir = (env && *env) ? env : ".";
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return (std::filesystem::path(dir) / name).string();
}

Problem build_problem(const RunConfig& cfg) {
  const MovingDomain d = domain_of(cfg);
  const double L = d.ell * d.t0;

  if (cfg.data_kind == "zero") {
    std::vector<std::complex<double>> c(3, 0.0);
    SpectralSolution zero(d, std::move(c));
    auto p = std::make_shared<ZeroProfile>();
    return Problem{d, InitialData(d, p, p), zero};
  }
  if (cfg.data_kind == "bump") {
    auto disp = bump_profile(cfg.bump_center * L, cfg.bump_halfwidth * L,
                             cfg.bump_amplitude, L);
    return Problem{d, InitialData(d, disp, std::make_shared<ZeroProfile>()),
                   std::nullopt};
  }
  if (cfg.data_kind == "modes") {
    SpectralSolution sol = random_band_limited(d, cfg.band, cfg.seed, cfg.amplitude);
    InitialData data = synthesized_data(sol);
    return Problem{d, std::move(data), std::move(sol)};
  }
  if (cfg.data_kind == "coeff_csv") {
    SpectralSolution sol = [&] {
      try {
        return SpectralSolution::read_csv(d, cfg.coeff_csv);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      } catch (const std::runtime_error& e) {
        throw IoError(e.what());
      }
    }();
    InitialData data = synthesized_data(sol);
    return Problem{d, std::move(data), std::move(sol)};
  }
  // sampled_csv
  std::shared_ptr<const Profile> disp, vel;
  try {
    disp = sampled_profile_from_csv(cfg.disp_csv);
    vel = cfg.vel_csv.empty()
              ? std::shared_ptr<const Profile>(std::make_shared<ZeroProfile>())
              : sampled_profile_from_csv(cfg.vel_csv);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  return Problem{d, InitialData(d, disp, vel), std::nullopt};
}

SpectralSolution solution_of(const RunConfig& cfg, const Problem& p) {
  if (p.exact) return *p.exact;
  return compute_coefficients(p.data, cfg.n_modes, rule_of(cfg));
}

}  // namespace expwave::cli
