#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "expwave/domain.hpp"
#include "expwave/interpolation.hpp"
#include "expwave/quadrature.hpp"

namespace expwave {

// Scalar boundary control v(t) acting at one endpoint over a time window
// [begin, end].  Two representations:
//   - analytic: v(t) = Re sum_{|k|<=K} c_k t^{i k pi alpha}  (log-harmonic),
//     the form produced by control synthesis; evaluation is exact.
//   - sampled: values on a log-uniform grid over the window, interpolated
//     cubically in log t (controls read back from CSV).
// Outside the window v is identically zero; a nonzero value at the window
// edge is a genuine jump and consumers must treat the edges as breakpoints.
class BoundaryControl {
 public:
  // analytic form; coeffs holds c_k for k = -K..K (odd size)
  BoundaryControl(const MovingDomain& domain, Endpoint endpoint, double begin,
                  double end, std::vector<std::complex<double>> coeffs);
  // sampled form; samples live on the log-uniform grid over [begin, end]
  BoundaryControl(const MovingDomain& domain, Endpoint endpoint, double begin,
                  double end, std::vector<double> samples);
  static BoundaryControl zero(const MovingDomain& domain, Endpoint endpoint,
                              double begin, double end);

  const MovingDomain& domain() const { return domain_; }
  Endpoint endpoint() const { return endpoint_; }
  double window_begin() const { return begin_; }
  double window_end() const { return end_; }
  bool analytic() const { return !coeffs_.empty(); }
  int band() const;  // K for the analytic form, 0 otherwise
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

  // v(t); exactly 0 outside [begin, end]
  double value(double t) const;

  // int_begin^end v(t)^2 dt; closed form for the analytic representation,
  // quadrature in log t otherwise
  double cost(QuadratureRule rule = {}) const;

  double sup_abs() const;  // max |v| over the sample grid

  // columns t,v on the sample grid (points overrides the grid size if > 0)
  void write_csv(const std::string& path, int points = 0) const;
  static BoundaryControl read_csv(const MovingDomain& domain, Endpoint endpoint,
                                  const std::string& path);

 private:
  void build_samples(int points);

  MovingDomain domain_;
  Endpoint endpoint_;
  double begin_ = 0.0;
  double end_ = 0.0;
  std::vector<std::complex<double>> coeffs_;
  std::vector<double> ts_, vs_;
  std::optional<LocalCubic> interp_;  // in log t over the window
};

}  // namespace expwave
