#pragma once

#include <string>
#include <utility>
#include <vector>

#include "expwave/characteristics.hpp"
#include "expwave/domain.hpp"
#include "expwave/initial_data.hpp"
#include "expwave/quadrature.hpp"
#include "expwave/spectral.hpp"

namespace expwave {

// One checked statement: either an equality lhs == rhs or a bound lhs <= rhs.
// For equalities `residual` is |lhs - rhs| and `relative` divides by the
// larger magnitude; for bounds `residual` is the violation max(lhs - rhs, 0)
// and the slack rhs - lhs is recoverable from the stored sides.
struct CheckRecord {
  enum class Kind { equality, upper_bound };
  std::string name;
  std::string where;
  Kind kind = Kind::equality;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double relative = 0.0;
  bool pass = false;
};

struct IdentityReport {
  double ell = 0.0, t0 = 0.0;
  int order = 0;
  double tolerance = 0.0;
  std::vector<CheckRecord> records;
  bool pass = false;

  std::string to_text() const;
  std::string to_json() const;
};

struct ObservabilityReport {
  Endpoint endpoint = Endpoint::fixed;
  double t0 = 0.0;
  double window = 0.0;          // T0, the observation length
  double critical_time = 0.0;   // T* = 2 ell t0 / (1 - ell)
  bool sharp_window = false;    // window >= T*
  double energy_t0 = 0.0;
  double trace_gradient = 0.0;  // int phi_x^2 over [t0, t0 + window]
  double trace_full = 0.0;      // int (phi_x^2 + phi_t^2); = (1+ell^2) x gradient when moving
  double ratio = 0.0;           // energy_t0 / trace_gradient
  double constant = 0.0;        // (1+ell)/(4(1-ell)^2) fixed, (1+ell)^3/4 moving
  double margin = 0.0;          // constant - ratio
  bool observable = false;

  std::string to_text() const;
  std::string to_json() const;
};

struct SharpnessReport {
  Endpoint endpoint = Endpoint::fixed;
  double delta = 0.0;
  double data_time = 0.0;
  double quiet_begin = 0.0, quiet_end = 0.0;
  double horizon = 0.0;
  double trace_integral = 0.0;  // int of the endpoint trace^2 over the quiet window
  double energy_t0 = 0.0;
  double sup_norm = 0.0;
  double bound = 0.0;           // 1e-12 * sup_norm^2
  bool pass = false;            // trace_integral <= bound and energy_t0 > 0

  std::string to_text() const;
  std::string to_json() const;
};

double energy(const SpectralSolution& sol, double t, QuadratureRule rule = {});

// energy carried by the data profiles themselves at their own time
double data_energy(const InitialData& data, QuadratureRule rule = {});

// t E(t) + int_0^{ell t} x phi_x phi_t dx == S
CheckRecord check_energy_identity(const SpectralSolution& sol, double t,
                                  QuadratureRule rule = {});

// int_{-ell t}^{ell t} (t + x)(phi_x + phi_t)^2 dx == 4S and the mirrored form
CheckRecord check_right_flux(const SpectralSolution& sol, double t,
                             QuadratureRule rule = {});
CheckRecord check_left_flux(const SpectralSolution& sol, double t,
                            QuadratureRule rule = {});

// S/((1+ell) t) <= E(t) <= S/((1-ell) t), returned as {lower, upper} records
std::pair<CheckRecord, CheckRecord> check_energy_envelope(
    const SpectralSolution& sol, double t, QuadratureRule rule = {});

// int over [t0, lambda^M t0] of the endpoint trace, weighted by t or not
double trace_integral(const SpectralSolution& sol, Endpoint endpoint, int periods,
                      bool weighted, QuadratureRule rule = {});
double trace_integral_window(const SpectralSolution& sol, Endpoint endpoint,
                             double begin, double end, bool weighted,
                             QuadratureRule rule = {});

// weighted trace over M periods == 4MS (fixed) or 4MS/(1-ell^2)^2 (moving)
CheckRecord check_trace_identity(const SpectralSolution& sol, Endpoint endpoint,
                                 int periods, QuadratureRule rule = {});

// two-sided energy bracket of the weighted trace, {lower, upper}
std::pair<CheckRecord, CheckRecord> check_trace_bounds(
    const SpectralSolution& sol, Endpoint endpoint, int periods,
    QuadratureRule rule = {});

// unweighted trace over [t0, T] <= 4M(1+ell)E(t0) at the fixed endpoint or
// 4M E(t0)/((1-ell)^2(1+ell)) at the moving one, M the smallest period count
// covering T.  (The fixed-endpoint constant is the one the weighted identity
// actually implies; the smaller constant sometimes quoted fails on a
// one-mode example.)
CheckRecord direct_inequality_check(const SpectralSolution& sol,
                                    Endpoint endpoint, double T,
                                    QuadratureRule rule = {});

IdentityReport run_identity_suite(const SpectralSolution& sol,
                                  QuadratureRule rule = {},
                                  double tolerance = 1e-8);

ObservabilityReport observability_report(const SpectralSolution& sol,
                                         Endpoint endpoint, double window,
                                         QuadratureRule rule = {});

SharpnessReport sharpness_check(const SharpnessScenario& scenario,
                                int samples_per_period = 4096,
                                QuadratureRule rule = {});

// columns t, E, lower, upper on a log-spaced time grid
void write_energy_csv(const SpectralSolution& sol, const std::string& path,
                      double begin, double end, int points,
                      QuadratureRule rule = {});

}  // namespace expwave
