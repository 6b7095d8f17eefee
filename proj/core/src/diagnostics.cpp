#include "expwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "expwave/csv.hpp"

namespace expwave {

namespace {

constexpr double kTiny = 1e-300;

CheckRecord equality(std::string name, std::string where, double lhs, double rhs,
                     double tolerance) {
  CheckRecord r;
  r.name = std::move(name);
  r.where = std::move(where);
  r.kind = CheckRecord::Kind::equality;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.relative = r.residual / std::max({std::abs(lhs), std::abs(rhs), kTiny});
  r.pass = r.relative <= tolerance;
  return r;
}

CheckRecord upper_bound(std::string name, std::string where, double lhs,
                        double rhs, double tolerance) {
  CheckRecord r;
  r.name = std::move(name);
  r.where = std::move(where);
  r.kind = CheckRecord::Kind::upper_bound;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::max(lhs - rhs, 0.0);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), kTiny});
  r.relative = r.residual / scale;
  r.pass = lhs <= rhs + tolerance * scale;
  return r;
}

std::string fmt_where_t(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t=%.6g", t);
  return buf;
}

std::string fmt_where_M(int M) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "M=%d", M);
  return buf;
}

const char* endpoint_name(Endpoint e) {
  return e == Endpoint::fixed ? "fixed" : "moving";
}

nlohmann::ordered_json record_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["where"] = r.where;
  j["kind"] = r.kind == CheckRecord::Kind::equality ? "equality" : "upper_bound";
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["relative"] = r.relative;
  j["pass"] = r.pass;
  return j;
}

}  // namespace

double energy(const SpectralSolution& sol, double t, QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  return integrate_adaptive(
      [&](double x) {
        const FieldValue f = sol.evaluate(x, t);
        return 0.5 * (f.phi_x * f.phi_x + f.phi_t * f.phi_t);
      },
      0.0, d.ell * t, rule, 1e-11);
}

double data_energy(const InitialData& data, QuadratureRule rule) {
  return integrate_adaptive(
      [&](double x) {
        const double sx = data.displacement_slope(x);
        const double v = data.velocity(x);
        return 0.5 * (sx * sx + v * v);
      },
      0.0, data.half_length(), rule, 1e-11);
}

CheckRecord check_energy_identity(const SpectralSolution& sol, double t,
                                  QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  const double cross = integrate_adaptive(
      [&](double x) {
        const FieldValue f = sol.evaluate(x, t);
        return x * f.phi_x * f.phi_t;
      },
      0.0, d.ell * t, rule, 1e-11);
  const double lhs = t * energy(sol, t, rule) + cross;
  return equality("energy_flux", fmt_where_t(t), lhs, sol.sharp_constant(), 1e-8);
}

namespace {

CheckRecord flux_check(const SpectralSolution& sol, double t, int sign,
                       QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  const double lhs = integrate_adaptive(
      [&](double x) {
        const FieldValue f = sol.evaluate(x, t);
        const double w = f.phi_x + sign * f.phi_t;
        return (t + sign * x) * w * w;
      },
      -d.ell * t, d.ell * t, rule, 1e-11);
  return equality(sign > 0 ? "right_moving_flux" : "left_moving_flux",
                  fmt_where_t(t), lhs, 4.0 * sol.sharp_constant(), 1e-8);
}

}  // namespace

CheckRecord check_right_flux(const SpectralSolution& sol, double t,
                             QuadratureRule rule) {
  return flux_check(sol, t, +1, rule);
}

CheckRecord check_left_flux(const SpectralSolution& sol, double t,
                            QuadratureRule rule) {
  return flux_check(sol, t, -1, rule);
}

std::pair<CheckRecord, CheckRecord> check_energy_envelope(
    const SpectralSolution& sol, double t, QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  const double E = energy(sol, t, rule);
  const double S = sol.sharp_constant();
  CheckRecord lower = upper_bound("energy_envelope_lower", fmt_where_t(t),
                                  S / ((1.0 + d.ell) * t), E, 1e-8);
  CheckRecord upper = upper_bound("energy_envelope_upper", fmt_where_t(t), E,
                                  S / ((1.0 - d.ell) * t), 1e-8);
  return {lower, upper};
}

double trace_integral_window(const SpectralSolution& sol, Endpoint endpoint,
                             double begin, double end, bool weighted,
                             QuadratureRule rule) {
  if (!(end > begin))
    throw std::invalid_argument("trace window must have positive length");
  // u = log t turns the trace into a trigonometric polynomial in u:
  //   int t phi_x^2 dt = int (t phi_x)^2 du,
  //   int   phi_x^2 dt = int (t phi_x)^2 e^{-u} du
  return integrate_adaptive(
      [&](double u) {
        const double t = std::exp(u);
        const FieldValue f = sol.boundary_trace(endpoint, t);
        const double w = t * f.phi_x;
        return weighted ? w * w : w * w / t;
      },
      std::log(begin), std::log(end), rule, 1e-11);
}

double trace_integral(const SpectralSolution& sol, Endpoint endpoint, int periods,
                      bool weighted, QuadratureRule rule) {
  if (periods < 1) throw std::invalid_argument("period count must be >= 1");
  const MovingDomain& d = sol.domain();
  const double end = d.t0 * std::pow(d.lambda, periods);
  return trace_integral_window(sol, endpoint, d.t0, end, weighted, rule);
}

CheckRecord check_trace_identity(const SpectralSolution& sol, Endpoint endpoint,
                                 int periods, QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  const double lhs = trace_integral(sol, endpoint, periods, true, rule);
  const double om = 1.0 - d.ell * d.ell;
  const double rhs = endpoint == Endpoint::fixed
                         ? 4.0 * periods * sol.sharp_constant()
                         : 4.0 * periods * sol.sharp_constant() / (om * om);
  return equality(endpoint == Endpoint::fixed ? "fixed_trace_identity"
                                              : "moving_trace_identity",
                  fmt_where_M(periods), lhs, rhs, 1e-8);
}

std::pair<CheckRecord, CheckRecord> check_trace_bounds(
    const SpectralSolution& sol, Endpoint endpoint, int periods,
    QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  const double I = trace_integral(sol, endpoint, periods, true, rule);
  const double E0 = energy(sol, d.t0, rule);
  const double base = 4.0 * periods * d.t0 * E0;
  double lo, hi;
  if (endpoint == Endpoint::fixed) {
    lo = base * (1.0 - d.ell);
    hi = base * (1.0 + d.ell);
  } else {
    lo = base / ((1.0 + d.ell) * (1.0 + d.ell) * (1.0 - d.ell));
    hi = base / ((1.0 - d.ell) * (1.0 - d.ell) * (1.0 + d.ell));
  }
  const char* name = endpoint == Endpoint::fixed ? "fixed_trace_bounds"
                                                 : "moving_trace_bounds";
  return {upper_bound(std::string(name) + "_lower", fmt_where_M(periods), lo, I, 1e-8),
          upper_bound(std::string(name) + "_upper", fmt_where_M(periods), I, hi, 1e-8)};
}

CheckRecord direct_inequality_check(const SpectralSolution& sol,
                                    Endpoint endpoint, double T,
                                    QuadratureRule rule) {
  const MovingDomain& d = sol.domain();
  if (!(T > d.t0))
    throw std::invalid_argument("direct inequality horizon must exceed t0");
  const int M =
      std::max(1, static_cast<int>(std::ceil(std::log(T / d.t0) / d.log_lambda -
                                             1e-12)));
  const double I = trace_integral_window(sol, endpoint, d.t0, T, false, rule);
  const double E0 = energy(sol, d.t0, rule);
  const double bound =
      endpoint == Endpoint::fixed
          ? 4.0 * M * (1.0 + d.ell) * E0
          : 4.0 * M * E0 / ((1.0 - d.ell) * (1.0 - d.ell) * (1.0 + d.ell));
  char where[64];
  std::snprintf(where, sizeof where, "T=%.6g M=%d", T, M);
  return upper_bound(endpoint == Endpoint::fixed ? "fixed_direct_bound"
                                                 : "moving_direct_bound",
                     where, I, bound, 1e-8);
}

IdentityReport run_identity_suite(const SpectralSolution& sol,
                                  QuadratureRule rule, double tolerance) {
  const MovingDomain& d = sol.domain();
  IdentityReport rep;
  rep.ell = d.ell;
  rep.t0 = d.t0;
  rep.order = sol.order();
  rep.tolerance = tolerance;

  for (int i = 0; i < 5; ++i) {
    const double t = d.t0 * std::pow(d.lambda, i / 4.0);
    rep.records.push_back(check_energy_identity(sol, t, rule));
    rep.records.push_back(check_right_flux(sol, t, rule));
    rep.records.push_back(check_left_flux(sol, t, rule));
    auto [lo, hi] = check_energy_envelope(sol, t, rule);
    rep.records.push_back(lo);
    rep.records.push_back(hi);
  }
  for (int M = 1; M <= 3; ++M) {
    for (Endpoint e : {Endpoint::fixed, Endpoint::moving}) {
      rep.records.push_back(check_trace_identity(sol, e, M, rule));
      auto [lo, hi] = check_trace_bounds(sol, e, M, rule);
      rep.records.push_back(lo);
      rep.records.push_back(hi);
    }
  }
  for (Endpoint e : {Endpoint::fixed, Endpoint::moving}) {
    rep.records.push_back(direct_inequality_check(sol, e, d.lambda * d.t0, rule));
    rep.records.push_back(
        direct_inequality_check(sol, e, 1.5 * d.lambda * d.t0, rule));
  }

  rep.pass = true;
  for (CheckRecord& r : rep.records) {
    // re-judge equalities against the report tolerance
    if (r.kind == CheckRecord::Kind::equality) r.pass = r.relative <= tolerance;
    rep.pass = rep.pass && r.pass;
  }
  return rep;
}

ObservabilityReport observability_report(const SpectralSolution& sol,
                                         Endpoint endpoint, double window,
                                         QuadratureRule rule) {
  if (!(window > 0.0))
    throw std::invalid_argument("observation window must be positive");
  const MovingDomain& d = sol.domain();
  ObservabilityReport rep;
  rep.endpoint = endpoint;
  rep.t0 = d.t0;
  rep.window = window;
  rep.critical_time = d.critical_time;
  rep.sharp_window = window >= d.critical_time * (1.0 - 1e-12);
  rep.energy_t0 = energy(sol, d.t0, rule);
  rep.trace_gradient =
      trace_integral_window(sol, endpoint, d.t0, d.t0 + window, false, rule);
  rep.trace_full = endpoint == Endpoint::fixed
                       ? rep.trace_gradient
                       : (1.0 + d.ell * d.ell) * rep.trace_gradient;
  rep.ratio = rep.trace_gradient > kTiny
                  ? rep.energy_t0 / rep.trace_gradient
                  : std::numeric_limits<double>::infinity();
  rep.constant = endpoint == Endpoint::fixed
                     ? (1.0 + d.ell) / (4.0 * (1.0 - d.ell) * (1.0 - d.ell))
                     : std::pow(1.0 + d.ell, 3) / 4.0;
  rep.margin = rep.constant - rep.ratio;
  rep.observable = rep.ratio <= rep.constant * (1.0 + 1e-10);
  return rep;
}

SharpnessReport sharpness_check(const SharpnessScenario& scenario,
                                int samples_per_period, QuadratureRule rule) {
  const MovingDomain& d = scenario.data.domain();
  const CharacteristicProfile profile =
      build_profile(scenario.data, samples_per_period);

  auto trace = [&](double t) {
    if (scenario.endpoint == Endpoint::fixed) return 2.0 * profile.derivative(t);
    return profile.derivative((1.0 + d.ell) * t) +
           profile.derivative((1.0 - d.ell) * t);
  };

  SharpnessReport rep;
  rep.endpoint = scenario.endpoint;
  rep.delta = scenario.delta;
  rep.data_time = scenario.data.data_time();
  rep.quiet_begin = scenario.quiet_begin;
  rep.quiet_end = scenario.quiet_end;
  rep.horizon = scenario.horizon;
  rule.panels = std::max(rule.panels, 256);
  rep.trace_integral = integrate(
      [&](double t) {
        const double v = trace(t);
        return v * v;
      },
      scenario.quiet_begin, scenario.quiet_end, rule);
  rep.energy_t0 = state_energy(profile, d.t0, rule);
  rep.sup_norm = std::max(scenario.data.displacement_sup(),
                          scenario.data.velocity_sup());
  rep.bound = 1e-12 * rep.sup_norm * rep.sup_norm;
  rep.pass = rep.trace_integral <= rep.bound && rep.energy_t0 > 0.0;
  return rep;
}

void write_energy_csv(const SpectralSolution& sol, const std::string& path,
                      double begin, double end, int points,
                      QuadratureRule rule) {
  if (points < 2) throw std::invalid_argument("energy CSV needs >= 2 points");
  if (!(end > begin) || !(begin > 0.0))
    throw std::invalid_argument("energy CSV needs 0 < begin < end");
  const MovingDomain& d = sol.domain();
  const double S = sol.sharp_constant();
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = begin * std::pow(end / begin,
                                      static_cast<double>(i) / (points - 1));
    rows.push_back({t, energy(sol, t, rule), S / ((1.0 + d.ell) * t),
                    S / ((1.0 - d.ell) * t)});
  }
  write_csv(path, "t,E,lower,upper", rows);
}

std::string IdentityReport::to_text() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "identity suite: ell=%g t0=%g N=%d tol=%g\n",
                ell, t0, order, tolerance);
  os << line;
  std::snprintf(line, sizeof line, "%-28s %-14s %6s %14s %14s %10s\n", "check",
                "where", "pass", "lhs", "rhs", "relative");
  os << line;
  for (const CheckRecord& r : records) {
    std::snprintf(line, sizeof line, "%-28s %-14s %6s %14.6e %14.6e %10.2e\n",
                  r.name.c_str(), r.where.c_str(), r.pass ? "ok" : "FAIL", r.lhs,
                  r.rhs, r.relative);
    os << line;
  }
  os << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string IdentityReport::to_json() const {
  nlohmann::ordered_json j;
  j["ell"] = ell;
  j["t0"] = t0;
  j["order"] = order;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  j["records"] = nlohmann::ordered_json::array();
  for (const CheckRecord& r : records) j["records"].push_back(record_json(r));
  return j.dump(2) + "\n";
}

std::string ObservabilityReport::to_text() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line,
                "observability at the %s endpoint: window=%.6g (T*=%.6g, %s)\n",
                endpoint_name(endpoint), window, critical_time,
                sharp_window ? "sharp" : "below sharp time");
  os << line;
  std::snprintf(line, sizeof line,
                "  E(t0)=%.10e  trace=%.10e  full=%.10e\n", energy_t0,
                trace_gradient, trace_full);
  os << line;
  std::snprintf(line, sizeof line,
                "  ratio=%.10e  constant=%.10e  margin=%.3e  %s\n", ratio,
                constant, margin, observable ? "observable" : "not observable");
  os << line;
  return os.str();
}

std::string ObservabilityReport::to_json() const {
  nlohmann::ordered_json j;
  j["endpoint"] = endpoint_name(endpoint);
  j["t0"] = t0;
  j["window"] = window;
  j["critical_time"] = critical_time;
  j["sharp_window"] = sharp_window;
  j["energy_t0"] = energy_t0;
  j["trace_gradient"] = trace_gradient;
  j["trace_full"] = trace_full;
  j["ratio"] = ratio;
  j["constant"] = constant;
  j["margin"] = margin;
  j["observable"] = observable;
  return j.dump(2) + "\n";
}

std::string SharpnessReport::to_text() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line,
                "sharpness scenario at the %s endpoint: delta=%g s=%.6g\n",
                endpoint_name(endpoint), delta, data_time);
  os << line;
  std::snprintf(line, sizeof line,
                "  quiet window (%.6g, %.6g), horizon %.6g\n", quiet_begin,
                quiet_end, horizon);
  os << line;
  std::snprintf(line, sizeof line,
                "  quiet trace integral=%.3e bound=%.3e E(t0)=%.6e  %s\n",
                trace_integral, bound, energy_t0, pass ? "quiet" : "NOT QUIET");
  os << line;
  return os.str();
}

std::string SharpnessReport::to_json() const {
  nlohmann::ordered_json j;
  j["endpoint"] = endpoint_name(endpoint);
  j["delta"] = delta;
  j["data_time"] = data_time;
  j["quiet_begin"] = quiet_begin;
  j["quiet_end"] = quiet_end;
  j["horizon"] = horizon;
  j["trace_integral"] = trace_integral;
  j["energy_t0"] = energy_t0;
  j["sup_norm"] = sup_norm;
  j["bound"] = bound;
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

}  // namespace expwave
