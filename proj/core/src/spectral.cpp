#include "expwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "expwave/csv.hpp"

namespace expwave {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t idx_of(int n, int order) { return static_cast<std::size_t>(n + order); }

}  // namespace

SpectralSolution::SpectralSolution(const MovingDomain& domain,
                                   std::vector<std::complex<double>> coeffs)
    : domain_(domain), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() % 2 == 0)
    throw std::invalid_argument("coefficient vector must hold n = -N..N (odd size)");
  order_ = static_cast<int>(coeffs_.size() / 2);

  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  const auto c0 = coeffs_[idx_of(0, order_)];
  if (std::abs(c0) > 1e-12 * std::max(scale, 1e-300))
    throw std::invalid_argument("C0 must be zero");
  coeffs_[idx_of(0, order_)] = 0.0;

  double asym = 0.0;
  for (int n = 1; n <= order_; ++n)
    asym = std::max(asym, std::abs(coeffs_[idx_of(-n, order_)] -
                                   std::conj(coeffs_[idx_of(n, order_)])));
  symmetric_ = asym <= 1e-8 * std::max(scale, 1e-300);

  sharp_ = recompute_sharp_constant();
  mode_scale_ = 0.0;
  for (int n = -order_; n <= order_; ++n)
    mode_scale_ += (1.0 + std::abs(n) * kPi * domain_.alpha) *
                   std::abs(coeffs_[idx_of(n, order_)]);
}

std::complex<double> SpectralSolution::coefficient(int n) const {
  if (std::abs(n) > order_) return 0.0;
  return coeffs_[idx_of(n, order_)];
}

double SpectralSolution::recompute_sharp_constant() const {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * order_));
  for (int n = -order_; n <= order_; ++n) {
    if (n == 0) continue;
    const double m = static_cast<double>(n) * std::abs(coeffs_[idx_of(n, order_)]);
    terms.push_back(m * m);
  }
  return 2.0 * kPi * kPi * domain_.alpha * pairwise_sum(std::move(terms));
}

FieldValue SpectralSolution::evaluate(double x, double t) const {
  if (t < domain_.t0 * (1.0 - 1e-12))
    throw std::domain_error("evaluate: t must be >= t0");
  const double L = domain_.ell * t;
  if (std::abs(x) > L * (1.0 + 1e-12) + 1e-300)
    throw std::domain_error("evaluate: |x| must be <= ell*t");

  const double up = t + x, um = t - x;
  const double lp = std::log(up), lm = std::log(um);
  const double pa = kPi * domain_.alpha;

  const auto count = static_cast<std::size_t>(order_);
  std::vector<std::complex<double>> sp(count), sx(count), st(count);
  for (int j = 1; j <= order_; ++j) {
    const double w = j * pa;
    const std::complex<double> Ap = std::polar(1.0, w * lp);
    const std::complex<double> Bm = std::polar(1.0, w * lm);
    const std::complex<double> cp = coeffs_[idx_of(j, order_)];
    const std::complex<double> cm = coeffs_[idx_of(-j, order_)];
    const std::complex<double> iw(0.0, w);
    // +j and -j terms summed together so conjugate pairs cancel exactly.
    sp[static_cast<std::size_t>(j - 1)] =
        cp * (Ap - Bm) + cm * (std::conj(Ap) - std::conj(Bm));
    sx[static_cast<std::size_t>(j - 1)] =
        iw * (cp * (Ap / up + Bm / um) - cm * (std::conj(Ap) / up + std::conj(Bm) / um));
    st[static_cast<std::size_t>(j - 1)] =
        iw * (cp * (Ap / up - Bm / um) - cm * (std::conj(Ap) / up - std::conj(Bm) / um));
  }
  const std::complex<double> vp = pairwise_sum(std::move(sp));
  const std::complex<double> vx = pairwise_sum(std::move(sx));
  const std::complex<double> vt = pairwise_sum(std::move(st));

  if (symmetric_) {
    const double denom = std::max(std::min(up, um), 1e-300);
    const double scale = 2.0 * mode_scale_ * std::max(1.0, 1.0 / denom) + 1e-300;
    if (std::abs(vp.imag()) > 1e-10 * scale || std::abs(vx.imag()) > 1e-10 * scale ||
        std::abs(vt.imag()) > 1e-10 * scale)
      throw std::logic_error("evaluate: imaginary residue exceeds tolerance");
  }
  return {vp.real(), vx.real(), vt.real()};
}

FieldValue SpectralSolution::boundary_trace(Endpoint e, double t) const {
  if (t < domain_.t0 * (1.0 - 1e-12))
    throw std::domain_error("boundary_trace: t must be >= t0");
  const double pa = kPi * domain_.alpha;
  const double tau = (e == Endpoint::fixed) ? t : (1.0 + domain_.ell) * t;
  const double lt = std::log(tau);

  const auto count = static_cast<std::size_t>(order_);
  std::vector<std::complex<double>> terms(count);
  for (int j = 1; j <= order_; ++j) {
    const std::complex<double> E = std::polar(1.0, j * pa * lt);
    const std::complex<double> ij(0.0, static_cast<double>(j));
    terms[static_cast<std::size_t>(j - 1)] =
        ij * (coeffs_[idx_of(j, order_)] * E -
              coeffs_[idx_of(-j, order_)] * std::conj(E));
  }
  const std::complex<double> s = pairwise_sum(std::move(terms));
  const double factor = (e == Endpoint::fixed)
                            ? 2.0 * kPi * domain_.alpha / t
                            : 2.0 * kPi * domain_.alpha /
                                  ((1.0 - domain_.ell * domain_.ell) * t);
  FieldValue f{};
  f.phi = 0.0;
  f.phi_x = factor * s.real();
  f.phi_t = (e == Endpoint::fixed) ? 0.0 : -domain_.ell * f.phi_x;
  if (symmetric_ && std::abs(s.imag()) > 1e-10 * (mode_scale_ + 1e-300))
    throw std::logic_error("boundary_trace: imaginary residue exceeds tolerance");
  return f;
}

void SpectralSolution::write_csv(const std::string& path) const {
  std::vector<std::vector<double>> rows;
  rows.reserve(coeffs_.size());
  for (int n = -order_; n <= order_; ++n) {
    const auto c = coeffs_[idx_of(n, order_)];
    rows.push_back({static_cast<double>(n), c.real(), c.imag()});
  }
  expwave::write_csv(path, "n,re,im", rows);
}

SpectralSolution SpectralSolution::read_csv(const MovingDomain& domain,
                                            const std::string& path) {
  CsvTable t = expwave::read_csv(path);
  if (t.header.size() != 3)
    throw std::invalid_argument("coefficient CSV must have columns n,re,im: " + path);
  int order = 0;
  for (const auto& row : t.rows) {
    const double nr = row[0];
    if (std::abs(nr - std::round(nr)) > 1e-9)
      throw std::invalid_argument("coefficient CSV: mode index must be an integer");
    order = std::max(order, static_cast<int>(std::abs(std::round(nr))));
  }
  if (order == 0 && t.rows.empty())
    throw std::invalid_argument("coefficient CSV is empty: " + path);
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(2 * order + 1), 0.0);
  std::vector<bool> seen(coeffs.size(), false);
  double scale = 0.0;
  for (const auto& row : t.rows) {
    const int n = static_cast<int>(std::round(row[0]));
    const auto k = idx_of(n, order);
    if (seen[k])
      throw std::invalid_argument("coefficient CSV: duplicate mode index");
    seen[k] = true;
    coeffs[k] = {row[1], row[2]};
    scale = std::max(scale, std::abs(coeffs[k]));
  }
  if (std::abs(coeffs[idx_of(0, order)]) > 1e-12 * std::max(scale, 1e-300))
    throw std::invalid_argument("C0 must be zero");
  return SpectralSolution(domain, std::move(coeffs));
}

SpectralSolution compute_coefficients(const InitialData& data, int order,
                                      QuadratureRule rule) {
  if (order < 1) throw std::invalid_argument("compute_coefficients: order must be >= 1");
  if (std::abs(data.data_time() - data.domain().t0) >
      1e-12 * data.domain().t0)
    throw std::invalid_argument("compute_coefficients: data must be given at t0");

  const MovingDomain& d = data.domain();
  const double L = d.ell * d.t0;
  const double pa = kPi * d.alpha;

  // One pass evaluates the projection integrals for every n at the given
  // panel count; panels are reduced pairwise per mode.
  auto pass = [&](int panels) {
    const auto& xs = gauss_nodes(rule.nodes);
    const auto& ws = gauss_weights(rule.nodes);
    const double h = 2.0 * L / panels;
    const auto nmodes = static_cast<std::size_t>(order);
    std::vector<std::vector<std::complex<double>>> panel_sums(
        nmodes, std::vector<std::complex<double>>(static_cast<std::size_t>(panels)));
    for (int p = 0; p < panels; ++p) {
      const double mid = -L + (p + 0.5) * h;
      std::vector<std::complex<double>> acc(nmodes, 0.0);
      for (int i = 0; i < rule.nodes; ++i) {
        const double x = mid + 0.5 * h * xs[static_cast<std::size_t>(i)];
        const double wgt = ws[static_cast<std::size_t>(i)] * 0.5 * h;
        const double wv = data.displacement_slope(x) + data.velocity(x);
        if (!std::isfinite(wv)) {
          std::ostringstream os;
          os << "coefficient quadrature: non-finite data sample at x=" << x;
          throw std::domain_error(os.str());
        }
        const double theta = pa * std::log(d.t0 + x);
        for (int n = 1; n <= order; ++n)
          acc[static_cast<std::size_t>(n - 1)] +=
              wgt * wv * std::polar(1.0, -n * theta);
      }
      for (std::size_t k = 0; k < nmodes; ++k)
        panel_sums[k][static_cast<std::size_t>(p)] = acc[k];
    }
    std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(2 * order + 1), 0.0);
    for (int n = 1; n <= order; ++n) {
      const std::complex<double> total =
          pairwise_sum(std::move(panel_sums[static_cast<std::size_t>(n - 1)]));
      const std::complex<double> den(0.0, 4.0 * n * kPi);
      coeffs[idx_of(n, order)] = total / den;
      // independent value of the -n projection for the symmetry check below
      coeffs[idx_of(-n, order)] = std::conj(total) / std::conj(den);
    }
    return coeffs;
  };

  int panels = std::max(rule.panels, 4 * order);
  const int cap = 1024;
  std::vector<std::complex<double>> prev = pass(panels);
  std::vector<std::complex<double>> cur;
  bool converged = false;
  while (panels < cap) {
    panels = std::min(2 * panels, cap);
    cur = pass(panels);
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
      scale = std::max(scale, std::abs(cur[k]));
    }
    prev = cur;
    if (diff <= 1e-12 * scale + 1e-300) {
      converged = true;
      break;
    }
  }
  if (!converged && panels >= cap) {
    // final check at the cap against a half-cap pass already stored in prev
    cur = pass(cap);
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
      scale = std::max(scale, std::abs(cur[k]));
    }
    if (diff > 1e-9 * scale + 1e-300)
      throw std::runtime_error(
          "coefficient quadrature did not converge at the panel cap");
    prev = cur;
  }

  // conjugate-symmetry check (real data): C_{-n} vs conj(C_n)
  double asym = 0.0, scale = 0.0;
  for (int n = 1; n <= order; ++n) {
    asym = std::max(asym, std::abs(prev[idx_of(-n, order)] -
                                   std::conj(prev[idx_of(n, order)])));
    scale = std::max(scale, std::abs(prev[idx_of(n, order)]));
  }
  if (asym > 1e-8 * std::max(scale, 1e-300))
    throw std::runtime_error("coefficient symmetrization check failed");
  for (int n = 1; n <= order; ++n) {
    const auto sym = 0.5 * (prev[idx_of(n, order)] +
                            std::conj(prev[idx_of(-n, order)]));
    prev[idx_of(n, order)] = sym;
    prev[idx_of(-n, order)] = std::conj(sym);
  }
  return SpectralSolution(d, std::move(prev));
}

InitialData synthesized_data(const SpectralSolution& sol) {
  auto shared = std::make_shared<SpectralSolution>(sol);
  const MovingDomain& d = shared->domain();
  const double t0 = d.t0;
  const double pa = kPi * d.alpha;

  double sup = 0.0;
  for (int n = -shared->order(); n <= shared->order(); ++n)
    sup += 2.0 * std::abs(shared->coefficient(n));
  double sup_vel = 0.0;
  for (int n = -shared->order(); n <= shared->order(); ++n)
    sup_vel += 2.0 * std::abs(n) * pa * std::abs(shared->coefficient(n)) /
               ((1.0 - d.ell) * t0);

  auto disp = std::make_shared<CallableProfile>(
      [shared, t0](double x) { return shared->evaluate(x, t0).phi; },
      [shared, t0](double x) { return shared->evaluate(x, t0).phi_x; }, sup);

  // velocity slope phi_tx = sum i n pi alpha (i n pi alpha - 1) C_n
  //   (A/(t+x)^2 + B/(t-x)^2); exact, needed by marching-oracle seeds
  auto vel_slope = [shared, t0, pa](double x) {
    const double up = t0 + x, um = t0 - x;
    const double lp = std::log(up), lm = std::log(um);
    std::complex<double> acc = 0.0;
    for (int n = 1; n <= shared->order(); ++n) {
      const double w = n * pa;
      const std::complex<double> iw(0.0, w);
      const std::complex<double> Ap = std::polar(1.0, w * lp);
      const std::complex<double> Bm = std::polar(1.0, w * lm);
      const std::complex<double> cp = shared->coefficient(n);
      const std::complex<double> term =
          iw * (iw - 1.0) * cp * (Ap / (up * up) + Bm / (um * um));
      acc += term + std::conj(term);
    }
    return acc.real();
  };
  auto vel = std::make_shared<CallableProfile>(
      [shared, t0](double x) { return shared->evaluate(x, t0).phi_t; }, vel_slope,
      sup_vel);

  return InitialData(d, disp, vel, t0);
}

SpectralSolution random_band_limited(const MovingDomain& domain, int band,
                                     std::uint64_t seed, double amplitude) {
  if (band < 1) throw std::invalid_argument("random_band_limited: band must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(2 * band + 1), 0.0);
  for (int n = 1; n <= band; ++n) {
    const double re = u(rng), im = u(rng);
    const std::complex<double> c =
        amplitude * std::complex<double>(re, im) / static_cast<double>(n * n);
    coeffs[idx_of(n, band)] = c;
    coeffs[idx_of(-n, band)] = std::conj(c);
  }
  return SpectralSolution(domain, std::move(coeffs));
}

}  // namespace expwave
