#pragma once

#include <complex>
#include <vector>

#include "expwave/characteristics.hpp"
#include "expwave/control.hpp"
#include "expwave/domain.hpp"
#include "expwave/initial_data.hpp"
#include "expwave/quadrature.hpp"

namespace expwave {

// Gramian of the unit-coefficient adjoint endpoint traces
//   g_n(t) = 2 pi alpha i n mu_n t^{i n pi alpha - 1},
//   mu_n = 1 (fixed) or (1+ell)^{i n pi alpha} / (1-ell^2) (moving)
// over [t0, T] for modes n in [-N..N] \ {0}: G_{mn} = int g_n conj(g_m) dt.
// Positive definiteness over a window certifies observability there.
struct HumGramian {
  Endpoint endpoint = Endpoint::fixed;
  double t0 = 0.0, T = 0.0;
  int order = 0;  // N
  std::vector<std::complex<double>> entries;  // row-major, size (2N)^2
  double hermiticity_residual = 0.0;          // relative, before symmetrizing
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double condition = 0.0;

  int size() const { return 2 * order; }
  int index_of(int mode) const;                       // mode in [-N..N]\{0}
  std::complex<double> entry(int m, int n) const;     // by mode numbers
};

// closed-form assembly (exact antiderivatives of t^{i(n-m) pi alpha - 2})
HumGramian build_gramian(const MovingDomain& domain, Endpoint endpoint, double T,
                         int order);
// independent numerical quadrature of the same integrals, for cross-checking
HumGramian build_gramian_quadrature(const MovingDomain& domain, Endpoint endpoint,
                                    double T, int order,
                                    QuadratureRule rule = {});

// duality pairing of a state with the adjoint modes:
//   P_n = int_0^{ell t} [ y_t e_n - y d_t e_n ] dx,  e_n the unit mode
// evaluated from initial data at its own time, or from a marched state at t
std::vector<std::complex<double>> pairing_vector(const InitialData& data,
                                                 int order,
                                                 QuadratureRule rule = {});
std::vector<std::complex<double>> pairing_vector_at(const ControlledWave& wave,
                                                    double t, int order,
                                                    QuadratureRule rule = {});

// the constant kappa in dP_n/dt = kappa v(t) g_n(t): +1 at the fixed
// endpoint, -(1-ell^2) at the moving one (the moving-domain boundary terms
// contribute the extra factor; calibrate_duality measures the same constant
// from marched probes and the tests require the two to agree)
double duality_constant(const MovingDomain& domain, Endpoint endpoint);

struct DualityCalibration {
  double kappa = 0.0;
  double spread = 0.0;  // max relative disagreement across probes
  int probes = 0;
};

// measures kappa empirically: three distinct probe controls from zero data,
// each compared against the boundary integral int v g_n dt; throws if the
// probes disagree beyond 1e-4 relative (that would mean a marching bug)
DualityCalibration calibrate_duality(const MovingDomain& domain,
                                     Endpoint endpoint, double T,
                                     int samples_per_period = 4096,
                                     QuadratureRule rule = {});

struct ControlSynthesis {
  BoundaryControl control;
  double kappa = 0.0;
  double condition = 0.0;               // of the constraint matrix
  double solve_residual = 0.0;          // |A c + b/kappa| / |b/kappa|
  double symmetrization_residual = 0.0; // conjugate-symmetry defect of c
  bool below_critical = false;          // window shorter than T*
  HumGramian gramian;                   // certificate for the same window
};

// Null control over [t0, T] in the log-harmonic family
//   v(t) = Re sum_{|k|<=band} c_k t^{i k pi alpha}:
// the terminal pairing P_n(T) = b_n + kappa int v g_n dt must vanish for all
// constraint modes |n| <= order, which is the linear system A c = -b/kappa
// solved here in the least-squares sense.  For data band-limited within the
// basis and a whole number of log-periods the system is consistent and the
// control is exactly null on the resolved modes.  Below-critical windows are
// allowed through (flagged) so non-controllability stays demonstrable.
ControlSynthesis synthesize_null_control(const InitialData& data,
                                         Endpoint endpoint, double T, int order,
                                         int band, QuadratureRule rule = {},
                                         double kappa = 0.0);

struct ControlVerification {
  double energy_t0 = 0.0;
  double energy_T = 0.0;
  double terminal_ratio = 0.0;  // energy_T / energy_t0
  double cost = 0.0;            // int v^2 dt
  double bound_constant = 0.0;  // cost / energy_t0
};

// end-to-end check through the independent characteristics marcher
ControlVerification verify_control(const InitialData& data,
                                   const BoundaryControl& control,
                                   int samples_per_period = 4096,
                                   QuadratureRule rule = {});

}  // namespace expwave
