#include "expwave/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace expwave {

MovingDomain make_domain(double ell, double t0) {
  if (!std::isfinite(ell) || !std::isfinite(t0))
    throw std::invalid_argument("speed and initial time must be finite");
  if (ell <= 0.0) throw std::invalid_argument("speed must be > 0");
  if (ell >= 1.0) throw std::invalid_argument("speed must be < 1");
  if (t0 <= 0.0) throw std::invalid_argument("initial time must be > 0");

  MovingDomain d;
  d.ell = ell;
  d.t0 = t0;
  d.lambda = (1.0 + ell) / (1.0 - ell);
  // log1p keeps full relative accuracy for small ell.
  d.log_lambda = std::log1p(ell) - std::log1p(-ell);
  d.alpha = 2.0 / d.log_lambda;
  d.critical_time = 2.0 * ell * t0 / (1.0 - ell);
  d.poorly_conditioned = (ell < 1e-6) || (ell > 1.0 - 1e-6);
  return d;
}

double log_coordinate(const MovingDomain& d, double x, double t) {
  if (t < d.t0 * (1.0 - 1e-12))
    throw std::domain_error("log_coordinate: t must be >= t0");
  if (t + x <= 0.0)
    throw std::domain_error("log_coordinate: t + x must be positive");
  return d.alpha * std::log((t + x) / ((1.0 - d.ell) * t));
}

LiteratureTimes literature_times(double ell) {
  if (!(ell > 0.0) || !(ell < 1.0))
    throw std::invalid_argument("literature_times: ell must lie in (0,1)");
  LiteratureTimes lt;
  const double om = 1.0 - ell;
  lt.T0 = 2.0 / om;
  lt.T2 = 2.0 / om;
  // expm1 keeps the ell -> 0 limit accurate (both tend to 2).
  lt.T1 = std::expm1(2.0 * ell * (1.0 + ell) / (om * om * om)) / ell;
  lt.T3 = std::expm1(2.0 * ell * (1.0 + ell) / om) / ell;
  return lt;
}

}  // namespace expwave
