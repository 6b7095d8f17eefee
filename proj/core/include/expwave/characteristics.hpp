#pragma once

#include <string>
#include <vector>

#include "expwave/control.hpp"
#include "expwave/domain.hpp"
#include "expwave/initial_data.hpp"
#include "expwave/interpolation.hpp"
#include "expwave/quadrature.hpp"
#include "expwave/spectral.hpp"

namespace expwave {

// d'Alembert representation of the homogeneous problem: phi = F(t+x) - F(t-x)
// with F log-periodic, F(lambda u) = F(u).  One period of F is stored on a
// log-uniform grid over [s_min, lambda*s_min) with periodic cubic
// interpolation; the additive constant is fixed by F(s_min) = 0, which no
// observable depends on.  This is the verification oracle for the series
// solution: it shares no formulas with it beyond the wave equation itself.
class CharacteristicProfile {
 public:
  CharacteristicProfile(const MovingDomain& domain, double s_min,
                        std::vector<double> samples);

  const MovingDomain& domain() const { return domain_; }
  double s_min() const { return s_min_; }
  int samples_per_period() const { return static_cast<int>(interp_.size()); }

  double value(double u) const;       // F(u), any u > 0 via periodic reduction
  double derivative(double u) const;  // F'(u)
  FieldValue evaluate(double x, double t) const;

  // F + c; observables must not change (tested)
  CharacteristicProfile shifted(double c) const;

 private:
  MovingDomain domain_;
  double s_min_;
  UniformCubic interp_;
};

struct SeamMismatch {
  double value = 0.0;  // jump of F across the period seam and interior seam
  double slope = 0.0;  // jump of F'
};

// Split data at time s = data.data_time() into the profile
//   F(s + x) =  phi0(x)/2 + Psi(x)/2 + c,   x in [0, ell*s)
//   F(s - x) = -phi0(x)/2 + Psi(x)/2 + c,   Psi(x) = int_0^x phi1
// (Psi is even because phi1 extends oddly, so the two branches agree where
// they meet; c anchors F(s_min) = 0.)
CharacteristicProfile build_profile(const InitialData& data,
                                    int samples_per_period = 4096);

// |phi0| at the endpoints and |phi1(ell*s)|: the data inconsistencies that
// would make the two branches of F disagree in value or slope
SeamMismatch seam_mismatch(const InitialData& data);

double state_energy(const CharacteristicProfile& profile, double t,
                    QuadratureRule rule = {});

// Counterexample data for windows shorter than the critical time: a bump
// placed so that, by finite propagation speed, the chosen endpoint's trace
// vanishes on (t0 + delta, horizon - delta) while the energy does not.
struct SharpnessScenario {
  InitialData data;          // given at data.data_time()
  Endpoint endpoint;
  double delta = 0.0;
  double quiet_begin = 0.0;  // t0 + delta
  double quiet_end = 0.0;    // horizon - delta
  double horizon = 0.0;      // ((1+ell) t0 - 2 delta) / (1 - ell)
};

SharpnessScenario sharpness_scenario(const MovingDomain& domain, double delta,
                                     Endpoint endpoint);

// Controlled problem marched along characteristics: y = G(t+x) - H(t-x).
// G and H are stored as smooth pieces split at breakpoints (images of t0 and
// of the control-window edges under the reflection maps), so jumps injected
// by incompatible controls stay exactly on piece boundaries.
class ControlledWave {
 public:
  struct Piece {
    double begin, end;
    LocalCubic interp;
  };
  struct Curve {
    std::vector<Piece> pieces;
    double covered() const;
    const Piece& find(double u) const;
  };

  FieldValue evaluate(double x, double t) const;
  double reached_time() const { return reached_; }
  const MovingDomain& domain() const { return domain_; }

  double forward_value(double u) const;    // G(u)
  double backward_value(double u) const;   // H(u)
  double forward_slope(double u) const;    // G'(u)
  double backward_slope(double u) const;   // H'(u)

  // piece edges of the two curves, for quadrature that must not straddle jumps
  std::vector<double> forward_breaks() const;
  std::vector<double> backward_breaks() const;

 private:
  friend ControlledWave solve_controlled(const InitialData&, const BoundaryControl&,
                                         double, int);

  MovingDomain domain_;
  double reached_ = 0.0;
  Curve g_, h_;
};

// Marches the controlled problem from data at t0 up to time T:
//   fixed endpoint:  y(0,t) = v(t)     -> H(u) = G(u) - v(u)
//   moving endpoint: y(ell t, t) = v(t) -> G((1+ell) u) = H((1-ell) u) + v(u)
// with the homogeneous reflection at the other endpoint.
ControlledWave solve_controlled(const InitialData& data,
                                const BoundaryControl& control, double T,
                                int samples_per_period = 4096);

double state_energy(const ControlledWave& wave, double t,
                    QuadratureRule rule = {});

}  // namespace expwave
