#pragma once

namespace expwave {

/// Which end of the interval an observation or control acts on.
enum class Endpoint { fixed, moving };

/// The linearly expanding interval (0, ell*t) for t >= t0, with 0 < ell < 1.
///
/// Two derived constants drive everything downstream:
///   lambda = (1+ell)/(1-ell)   ratio after one reflection cycle
///   alpha  = 2/log(lambda)     so that alpha*log(lambda) == 2
/// The sharp observation/control window is critical_time = 2*ell*t0/(1-ell),
/// and t0 + critical_time == lambda*t0: one full log-period.
struct MovingDomain {
  double ell = 0.0;
  double t0 = 0.0;
  double lambda = 0.0;
  double log_lambda = 0.0;
  double alpha = 0.0;
  double critical_time = 0.0;
  // Set when ell is outside [1e-6, 1-1e-6]; alpha and lambda lose relative
  // accuracy near the ends of (0,1) and reports should say so.
  bool poorly_conditioned = false;

  double length(double t) const { return ell * t; }
  double endpoint_position(Endpoint e, double t) const {
    return e == Endpoint::fixed ? 0.0 : ell * t;
  }
};

/// Validates 0 < ell < 1 and t0 > 0 (distinct diagnostics per violation) and
/// fills in the derived constants.
MovingDomain make_domain(double ell, double t0);

/// z = alpha * log((t+x) / ((1-ell)*t)); maps x in [-ell*t, ell*t] onto [0, 2].
double log_coordinate(const MovingDomain& d, double x, double t);

/// Sufficient control times from the comparison table, normalized so that the
/// interval has unit length at the initial time (ell*t0 = 1).
struct LiteratureTimes {
  double T0;  // sharp time 2/(1-ell)
  double T1;  // (exp(2*ell*(1+ell)/(1-ell)^3) - 1)/ell
  double T2;  // 2/(1-ell)
  double T3;  // (exp(2*ell*(1+ell)/(1-ell)) - 1)/ell
};

/// pre: 0 < ell < 1.  T1 overflows to +inf for ell close to 1; the ordering
/// T1 >= T3 >= T2 >= T0 still holds in IEEE arithmetic.
LiteratureTimes literature_times(double ell);

}  // namespace expwave
