#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "expwave/domain.hpp"
#include "expwave/initial_data.hpp"
#include "expwave/quadrature.hpp"

namespace expwave {

struct FieldValue {
  double phi;
  double phi_x;
  double phi_t;
};

/// Truncated series solution
///   phi(x,t) = sum_{0<|n|<=N} C_n (e^{i n pi alpha log(t+x)} - e^{i n pi alpha log(t-x)})
/// on |x| <= ell*t, t >= t0.  C_0 is identically zero (the constant mode
/// cancels in the difference).
class SpectralSolution {
 public:
  /// coeffs holds n = -N..N (2N+1 entries, C_0 in the middle).
  SpectralSolution(const MovingDomain& domain,
                   std::vector<std::complex<double>> coeffs);

  const MovingDomain& domain() const { return domain_; }
  int order() const { return order_; }
  std::complex<double> coefficient(int n) const;
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

  /// True when C_{-n} == conj(C_n) to 1e-8 relative; real fields then carry an
  /// exactly-cancelling imaginary part (asserted to 1e-10 of the mode scale).
  bool conjugate_symmetric() const { return symmetric_; }

  /// S = 2 pi^2 alpha sum |n C_n|^2 (cached at construction).
  double sharp_constant() const { return sharp_; }
  double recompute_sharp_constant() const;

  /// pre: t >= t0, |x| <= ell*t (closed extended interval).
  FieldValue evaluate(double x, double t) const;

  /// Closed-form endpoint traces; phi is exactly 0 and at the moving end
  /// phi_t = -ell*phi_x.
  FieldValue boundary_trace(Endpoint e, double t) const;

  /// Coefficient CSV: columns n,re,im; all modes -N..N including the zero row.
  void write_csv(const std::string& path) const;
  static SpectralSolution read_csv(const MovingDomain& domain, const std::string& path);

 private:
  MovingDomain domain_;
  int order_;
  std::vector<std::complex<double>> coeffs_;
  bool symmetric_;
  double sharp_;
  double mode_scale_;  // sum |C_n|, for imaginary-residue asserts
};

/// Projects the data pair onto the mode coefficients,
///   C_n = (1/(4 n pi i)) \int_{-L}^{L} (phi0' + phi1)(x) e^{-i n pi alpha log(t0+x)} dx,
/// with the odd extension supplying x < 0.  Quadrature starts at
/// max(rule.panels, 4*order) panels and doubles until the coefficient vector
/// settles to 1e-12 relative.  pre: data is given at t0.
SpectralSolution compute_coefficients(const InitialData& data, int order,
                                      QuadratureRule rule = {});

/// The band-limited data pair realized by a coefficient family: profiles are
/// the series and its derivatives evaluated at t0.
InitialData synthesized_data(const SpectralSolution& sol);

/// Deterministic conjugate-symmetric coefficient draw: C_n uniform in the
/// complex square of side 2*amplitude/n^2 for 1 <= n <= band.
SpectralSolution random_band_limited(const MovingDomain& domain, int band,
                                     std::uint64_t seed, double amplitude = 1.0);

}  // namespace expwave
