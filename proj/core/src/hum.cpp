#include "expwave/hum.hpp"

#include "expwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace expwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;

// modes run -N..-1, 1..N in this fixed order everywhere below
int flat_index(int mode, int order) {
  return mode < 0 ? mode + order : order + mode - 1;
}

std::complex<double> mode_weight(const MovingDomain& d, Endpoint e, int n) {
  if (e == Endpoint::fixed) return 1.0;
  const std::complex<double> p(0.0, n * kPi * d.alpha);
  return std::exp(p * std::log1p(d.ell)) / (1.0 - d.ell * d.ell);
}

// adjoint endpoint trace g_n(t) = 2 pi alpha i n mu_n t^{i n pi alpha - 1}
std::complex<double> adjoint_trace(const MovingDomain& d, Endpoint e, int n,
                                   double t) {
  const std::complex<double> expo(-1.0, n * kPi * d.alpha);
  return 2.0 * kPi * d.alpha * std::complex<double>(0.0, n) *
         mode_weight(d, e, n) * std::exp(expo * std::log(t));
}

// unit-coefficient mode e_n and its time derivative
struct ModeValue {
  std::complex<double> e;
  std::complex<double> et;
};

ModeValue mode_value(const MovingDomain& d, int n, double x, double t) {
  const double w = n * kPi * d.alpha;
  const std::complex<double> A = std::polar(1.0, w * std::log(t + x));
  const std::complex<double> B = std::polar(1.0, w * std::log(t - x));
  const std::complex<double> iw(0.0, w);
  return {A - B, iw * (A / (t + x) - B / (t - x))};
}

void attach_certificates(HumGramian& g) {
  const int n = g.size();
  Eigen::MatrixXcd M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      M(r, c) = g.entries[static_cast<std::size_t>(r * n + c)];

  const double scale = std::max(M.cwiseAbs().maxCoeff(), kTiny);
  g.hermiticity_residual = (M - M.adjoint()).cwiseAbs().maxCoeff() / scale;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      (0.5 * (M + M.adjoint())).eval());
  g.min_eigenvalue = es.eigenvalues().minCoeff();
  g.max_eigenvalue = es.eigenvalues().maxCoeff();
  const double lo = es.eigenvalues().cwiseAbs().minCoeff();
  g.condition = es.eigenvalues().cwiseAbs().maxCoeff() / std::max(lo, kTiny);
}

}  // namespace

int HumGramian::index_of(int mode) const {
  if (mode == 0 || std::abs(mode) > order)
    throw std::invalid_argument("gramian mode index out of range");
  return flat_index(mode, order);
}

std::complex<double> HumGramian::entry(int m, int n) const {
  return entries[static_cast<std::size_t>(index_of(m) * size() + index_of(n))];
}

HumGramian build_gramian(const MovingDomain& domain, Endpoint endpoint, double T,
                         int order) {
  if (order < 1) throw std::invalid_argument("gramian order must be >= 1");
  if (!(T > domain.t0))
    throw std::invalid_argument("gramian window must extend past t0");

  HumGramian g;
  g.endpoint = endpoint;
  g.t0 = domain.t0;
  g.T = T;
  g.order = order;
  const int n2 = g.size();
  g.entries.assign(static_cast<std::size_t>(n2) * n2, 0.0);

  const double pa = kPi * domain.alpha;
  const double logT = std::log(T), log0 = std::log(domain.t0);
  std::vector<int> modes;
  for (int n = -order; n <= order; ++n)
    if (n != 0) modes.push_back(n);

  for (int m : modes)
    for (int n : modes) {
      // int_{t0}^{T} t^{i(n-m) pi alpha - 2} dt = (T^p - t0^p)/p, p below
      const std::complex<double> p(-1.0, (n - m) * pa);
      const std::complex<double> integral =
          (std::exp(p * logT) - std::exp(p * log0)) / p;
      const std::complex<double> val =
          (2.0 * kPi * domain.alpha) * (2.0 * kPi * domain.alpha) *
          static_cast<double>(n) * static_cast<double>(m) *
          mode_weight(domain, endpoint, n) *
          std::conj(mode_weight(domain, endpoint, m)) * integral;
      g.entries[static_cast<std::size_t>(flat_index(m, order) * n2 +
                                         flat_index(n, order))] = val;
    }
  attach_certificates(g);
  return g;
}

HumGramian build_gramian_quadrature(const MovingDomain& domain, Endpoint endpoint,
                                    double T, int order, QuadratureRule rule) {
  if (order < 1) throw std::invalid_argument("gramian order must be >= 1");
  if (!(T > domain.t0))
    throw std::invalid_argument("gramian window must extend past t0");

  HumGramian g;
  g.endpoint = endpoint;
  g.t0 = domain.t0;
  g.T = T;
  g.order = order;
  const int n2 = g.size();
  g.entries.assign(static_cast<std::size_t>(n2) * n2, 0.0);

  std::vector<int> modes;
  for (int n = -order; n <= order; ++n)
    if (n != 0) modes.push_back(n);

  for (int m : modes)
    for (int n : modes) {
      const std::complex<double> val = integrate_adaptive(
          [&](double u) {
            const double t = std::exp(u);
            return adjoint_trace(domain, endpoint, n, t) *
                   std::conj(adjoint_trace(domain, endpoint, m, t)) * t;
          },
          std::log(domain.t0), std::log(T), rule, 1e-12);
      g.entries[static_cast<std::size_t>(flat_index(m, order) * n2 +
                                         flat_index(n, order))] = val;
    }
  attach_certificates(g);
  return g;
}

std::vector<std::complex<double>> pairing_vector(const InitialData& data,
                                                 int order,
                                                 QuadratureRule rule) {
  if (order < 1) throw std::invalid_argument("pairing order must be >= 1");
  const MovingDomain& d = data.domain();
  const double t = data.data_time();
  std::vector<std::complex<double>> b(static_cast<std::size_t>(2 * order));
  const double L = d.ell * t;
  for (int n = -order; n <= order; ++n) {
    if (n == 0) continue;
    // modes outside the data band pair to exactly zero, so give the adaptive
    // loop an absolute floor scaled by a sup bound of the integrand
    const double w = std::abs(n) * kPi * d.alpha;
    const double bound = 2.0 * data.velocity_sup() +
                         2.0 * w / (t - L) * data.displacement_sup();
    b[static_cast<std::size_t>(flat_index(n, order))] = integrate_adaptive(
        [&](double x) {
          const ModeValue m = mode_value(d, n, x, t);
          return data.velocity(x) * m.e - data.displacement(x) * m.et;
        },
        0.0, L, rule, 1e-11, 1e-13 * L * bound);
  }
  return b;
}

std::vector<std::complex<double>> pairing_vector_at(const ControlledWave& wave,
                                                    double t, int order,
                                                    QuadratureRule rule) {
  if (order < 1) throw std::invalid_argument("pairing order must be >= 1");
  const MovingDomain& d = wave.domain();
  rule.panels = std::max(rule.panels, 512);
  std::vector<std::complex<double>> b(static_cast<std::size_t>(2 * order));
  for (int n = -order; n <= order; ++n) {
    if (n == 0) continue;
    b[static_cast<std::size_t>(flat_index(n, order))] = integrate(
        [&](double x) {
          const FieldValue f = wave.evaluate(x, t);
          const ModeValue m = mode_value(d, n, x, t);
          return f.phi_t * m.e - f.phi * m.et;
        },
        0.0, d.ell * t, rule);
  }
  return b;
}

double duality_constant(const MovingDomain& domain, Endpoint endpoint) {
  return endpoint == Endpoint::fixed ? 1.0
                                     : -(1.0 - domain.ell * domain.ell);
}

DualityCalibration calibrate_duality(const MovingDomain& domain,
                                     Endpoint endpoint, double T,
                                     int samples_per_period,
                                     QuadratureRule rule) {
  if (!(T > domain.t0))
    throw std::invalid_argument("calibration window must extend past t0");

  auto zero = std::make_shared<ZeroProfile>();
  const InitialData quiescent(domain, zero, zero, domain.t0);

  struct Probe {
    double center_frac, half_frac;
    int mode;
  };
  const Probe probes[] = {{0.30, 0.14, 1}, {0.55, 0.20, 2}, {0.72, 0.10, 1}};
  const double span = std::log(T / domain.t0);

  std::vector<double> kappas;
  for (const Probe& pr : probes) {
    const double a = domain.t0 * std::exp((pr.center_frac - pr.half_frac) * span);
    const double b = domain.t0 * std::exp((pr.center_frac + pr.half_frac) * span);
    const double center = 0.5 * (a + b), half = 0.5 * (b - a);

    const int nsamp = 512;
    std::vector<double> samples(nsamp);
    for (int i = 0; i < nsamp; ++i) {
      const double t =
          a * std::pow(b / a, static_cast<double>(i) / (nsamp - 1));
      const double r = (t - center) / half;
      const double q = std::max(1.0 - r * r, 0.0);
      samples[static_cast<std::size_t>(i)] = q * q * q;
    }
    const BoundaryControl probe(domain, endpoint, a, b, std::move(samples));

    const ControlledWave wave =
        solve_controlled(quiescent, probe, T, samples_per_period);
    const auto P = pairing_vector_at(wave, T, pr.mode, rule);
    const std::complex<double> lhs =
        P[static_cast<std::size_t>(flat_index(pr.mode, pr.mode))];

    const std::complex<double> rhs = integrate_adaptive(
        [&](double u) {
          const double t = std::exp(u);
          return probe.value(t) *
                 adjoint_trace(domain, endpoint, pr.mode, t) * t;
        },
        std::log(a), std::log(b), rule, 1e-12);

    const std::complex<double> ratio = lhs / rhs;
    if (std::abs(ratio.imag()) > 1e-4 * std::abs(ratio))
      throw std::runtime_error("duality calibration produced a complex ratio");
    kappas.push_back(ratio.real());
  }

  DualityCalibration cal;
  cal.probes = static_cast<int>(kappas.size());
  cal.kappa = 0.0;
  for (double k : kappas) cal.kappa += k;
  cal.kappa /= cal.probes;
  cal.spread = 0.0;
  for (double k : kappas)
    cal.spread = std::max(cal.spread,
                          std::abs(k - cal.kappa) / std::abs(cal.kappa));
  if (cal.spread > 1e-4)
    throw std::runtime_error("duality calibration probes disagree");
  return cal;
}

ControlSynthesis synthesize_null_control(const InitialData& data,
                                         Endpoint endpoint, double T, int order,
                                         int band, QuadratureRule rule,
                                         double kappa) {
  const MovingDomain& d = data.domain();
  if (order < 1 || band < 1)
    throw std::invalid_argument("control synthesis needs order >= 1, band >= 1");
  if (std::abs(data.data_time() - d.t0) > 1e-12 * d.t0)
    throw std::invalid_argument("control synthesis requires data at t0");
  if (!(T > d.t0))
    throw std::invalid_argument("control horizon must exceed t0");
  if (kappa == 0.0) kappa = duality_constant(d, endpoint);

  const auto b = pairing_vector(data, order, rule);
  const double pa = kPi * d.alpha;
  const double logT = std::log(T), log0 = std::log(d.t0);

  // A_{nk} = int_{t0}^{T} t^{ik pi alpha} g_n(t) dt
  //        = 2 i n pi alpha mu_n int t^{i(n+k) pi alpha - 1} dt
  const int rows = 2 * order, cols = 2 * band + 1;
  Eigen::MatrixXcd A(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (int n = -order; n <= order; ++n) {
    if (n == 0) continue;
    const int r = flat_index(n, order);
    const std::complex<double> front =
        2.0 * pa * std::complex<double>(0.0, n) * mode_weight(d, endpoint, n);
    for (int k = -band; k <= band; ++k) {
      std::complex<double> integral;
      if (n + k == 0) {
        integral = logT - log0;
      } else {
        const std::complex<double> q(0.0, (n + k) * pa);
        integral = (std::exp(q * logT) - std::exp(q * log0)) / q;
      }
      A(r, band + k) = front * integral;
    }
    rhs(r) = -b[static_cast<std::size_t>(r)] / kappa;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXcd c = svd.solve(rhs);
  const auto& sv = svd.singularValues();

  ControlSynthesis out{
      BoundaryControl::zero(d, endpoint, d.t0, T), kappa, 0.0, 0.0, 0.0,
      T - d.t0 < d.critical_time * (1.0 - 1e-12),
      build_gramian(d, endpoint, T, order)};
  out.condition = sv(0) / std::max(sv(sv.size() - 1), kTiny);
  out.solve_residual =
      (A * c - rhs).norm() / std::max(rhs.norm(), kTiny);

  // enforce conjugate symmetry so v is exactly real
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(cols));
  double defect = 0.0, scale = kTiny;
  for (int k = 0; k <= band; ++k) {
    const std::complex<double> ck = c(band + k), cmk = c(band - k);
    const std::complex<double> sym = 0.5 * (ck + std::conj(cmk));
    coeffs[static_cast<std::size_t>(band + k)] = sym;
    coeffs[static_cast<std::size_t>(band - k)] = std::conj(sym);
    defect = std::max(defect, std::abs(ck - sym));
    scale = std::max(scale, std::abs(ck));
  }
  coeffs[static_cast<std::size_t>(band)] =
      std::complex<double>(coeffs[static_cast<std::size_t>(band)].real(), 0.0);
  out.symmetrization_residual = defect / scale;
  out.control = BoundaryControl(d, endpoint, d.t0, T, std::move(coeffs));
  return out;
}

ControlVerification verify_control(const InitialData& data,
                                   const BoundaryControl& control,
                                   int samples_per_period,
                                   QuadratureRule rule) {
  const double T = control.window_end();
  const ControlledWave wave =
      solve_controlled(data, control, T, samples_per_period);

  ControlVerification v;
  v.energy_t0 = data_energy(data, rule);
  v.energy_T = state_energy(wave, T, rule);
  v.terminal_ratio = v.energy_T / std::max(v.energy_t0, kTiny);
  v.cost = control.cost(rule);
  v.bound_constant = v.cost / std::max(v.energy_t0, kTiny);
  return v;
}

}  // namespace expwave
