#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using expwave::cli::ConfigError;
using expwave::cli::IoError;
using expwave::cli::RunConfig;

struct Command {
  CLI::App* app = nullptr;
  RunConfig cfg;
  std::string config_path;
  // flag name -> option, to let explicit flags win over the JSON file
  std::map<std::string, CLI::Option*> options;
  std::function<int(const RunConfig&)> run;
};

void add_common_options(Command& c) {
  auto opt = [&](const std::string& name, auto& field, const char* help) {
    c.options[name] = c.app->add_option("--" + name, field, help);
  };
  opt("ell", c.cfg.ell, "expansion speed of the right endpoint, in (0,1)");
  opt("t0", c.cfg.t0, "initial time (> 0)");
  opt("n_modes", c.cfg.n_modes, "series truncation / synthesis order");
  opt("panels", c.cfg.panels, "quadrature panels");
  opt("nodes", c.cfg.nodes, "Gauss-Legendre nodes per panel");
  opt("samples_per_period", c.cfg.samples_per_period,
      "characteristics samples per log-period");
  opt("endpoint", c.cfg.endpoint, "fixed | moving");
  opt("window", c.cfg.window, "observation/control length (0: use multiplier)");
  opt("window_multiplier", c.cfg.window_multiplier,
      "window as a multiple of the critical time");
  opt("data_kind", c.cfg.data_kind, "bump|modes|coeff_csv|sampled_csv|zero");
  opt("bump_center", c.cfg.bump_center, "bump center as a fraction of ell*t0");
  opt("bump_halfwidth", c.cfg.bump_halfwidth,
      "bump halfwidth as a fraction of ell*t0");
  opt("bump_amplitude", c.cfg.bump_amplitude, "bump amplitude");
  opt("band", c.cfg.band, "mode count of random band-limited data");
  opt("amplitude", c.cfg.amplitude, "coefficient scale of random data");
  opt("seed", c.cfg.seed, "random seed");
  opt("coeff_csv", c.cfg.coeff_csv, "coefficient CSV (data_kind coeff_csv)");
  opt("disp_csv", c.cfg.disp_csv, "displacement CSV (data_kind sampled_csv)");
  opt("vel_csv", c.cfg.vel_csv, "velocity CSV (optional)");
  opt("tolerance", c.cfg.tolerance, "identity suite tolerance");
  opt("control_tolerance", c.cfg.control_tolerance,
      "terminal energy ratio tolerance");
  opt("delta", c.cfg.delta, "sharpness scenario offset");
  opt("ensemble", c.cfg.ensemble, "observability ensemble size");
  opt("grid_x", c.cfg.grid_x, "spatial grid points for solve");
  opt("grid_t", c.cfg.grid_t, "time grid points for solve");
  c.options["oracle"] =
      c.app->add_flag("--oracle", c.cfg.oracle,
                      "solve: also write the characteristics comparison");
  opt("output_dir", c.cfg.output_dir, "output directory ($EXPWAVE_OUT, then .)");
  c.app->add_option("--config", c.config_path,
                    "JSON config; explicit flags override its keys");
}

// fail-closed merge: unknown keys are errors, types must match the flag
void merge_config_file(Command& c) {
  if (c.config_path.empty()) return;
  std::ifstream in(c.config_path);
  if (!in) throw IoError("cannot open config: " + c.config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig& cfg = c.cfg;
  using Setter = std::function<void(const nlohmann::json&)>;
  auto num = [](double& f) {
    return Setter([&f](const nlohmann::json& v) {
      if (!v.is_number()) throw ConfigError("expected a number");
      f = v.get<double>();
    });
  };
  auto integer = [](int& f) {
    return Setter([&f](const nlohmann::json& v) {
      if (!v.is_number_integer()) throw ConfigError("expected an integer");
      f = v.get<int>();
    });
  };
  auto str = [](std::string& f) {
    return Setter([&f](const nlohmann::json& v) {
      if (!v.is_string()) throw ConfigError("expected a string");
      f = v.get<std::string>();
    });
  };
  const std::map<std::string, Setter> setters = {
      {"ell", num(cfg.ell)},
      {"t0", num(cfg.t0)},
      {"n_modes", integer(cfg.n_modes)},
      {"panels", integer(cfg.panels)},
      {"nodes", integer(cfg.nodes)},
      {"samples_per_period", integer(cfg.samples_per_period)},
      {"endpoint", str(cfg.endpoint)},
      {"window", num(cfg.window)},
      {"window_multiplier", num(cfg.window_multiplier)},
      {"data_kind", str(cfg.data_kind)},
      {"bump_center", num(cfg.bump_center)},
      {"bump_halfwidth", num(cfg.bump_halfwidth)},
      {"bump_amplitude", num(cfg.bump_amplitude)},
      {"band", integer(cfg.band)},
      {"amplitude", num(cfg.amplitude)},
      {"seed", Setter([&cfg](const nlohmann::json& v) {
         if (!v.is_number_unsigned() && !v.is_number_integer())
           throw ConfigError("expected an integer");
         cfg.seed = v.get<std::uint64_t>();
       })},
      {"coeff_csv", str(cfg.coeff_csv)},
      {"disp_csv", str(cfg.disp_csv)},
      {"vel_csv", str(cfg.vel_csv)},
      {"tolerance", num(cfg.tolerance)},
      {"control_tolerance", num(cfg.control_tolerance)},
      {"delta", num(cfg.delta)},
      {"ensemble", integer(cfg.ensemble)},
      {"grid_x", integer(cfg.grid_x)},
      {"grid_t", integer(cfg.grid_t)},
      {"oracle", Setter([&cfg](const nlohmann::json& v) {
         if (!v.is_boolean()) throw ConfigError("expected a boolean");
         cfg.oracle = v.get<bool>();
       })},
      {"output_dir", str(cfg.output_dir)},
  };

  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key: " + key);
    const auto opt = c.options.find(key);
    if (opt != c.options.end() && opt->second->count() > 0)
      continue;  // explicit flag wins
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized-Fourier wave solver on the expanding domain (0, ell*t)"};
  app.require_subcommand(1);

  Command cmds[5];
  const struct {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  } defs[5] = {
      {"solve", "evaluate the series solution on a space-time grid",
       expwave::cli::cmd_solve},
      {"verify", "run the closed-form identity suite", expwave::cli::cmd_verify},
      {"observe", "ensemble observability ratios and sharpness scenarios",
       expwave::cli::cmd_observe},
      {"control", "synthesize and verify a boundary null control",
       expwave::cli::cmd_control},
      {"literature", "print the sufficient-control-time comparison table",
       expwave::cli::cmd_literature},
  };
  for (int i = 0; i < 5; ++i) {
    cmds[i].app = app.add_subcommand(defs[i].name, defs[i].help);
    cmds[i].run = defs[i].run;
    add_common_options(cmds[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto& c : cmds) {
      if (!c.app->parsed()) continue;
      merge_config_file(c);
      expwave::cli::validate(c.cfg);
      return c.run(c.cfg);
    }
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
