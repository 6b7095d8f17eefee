#include "expwave/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "expwave/csv.hpp"

namespace expwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamplesPerPeriod = 4096;

void check_window(const MovingDomain& d, double begin, double end) {
  if (!(begin >= d.t0 * (1.0 - 1e-12)))
    throw std::invalid_argument("control window must start at or after t0");
  if (!(end > begin))
    throw std::invalid_argument("control window must have positive length");
}

}  // namespace

BoundaryControl::BoundaryControl(const MovingDomain& domain, Endpoint endpoint,
                                 double begin, double end,
                                 std::vector<std::complex<double>> coeffs)
    : domain_(domain), endpoint_(endpoint), begin_(begin), end_(end),
      coeffs_(std::move(coeffs)) {
  check_window(domain_, begin_, end_);
  if (coeffs_.empty() || coeffs_.size() % 2 == 0)
    throw std::invalid_argument("control coefficients must hold k = -K..K (odd size)");
  const double periods = std::log(end_ / begin_) / domain_.log_lambda;
  build_samples(std::max(32, static_cast<int>(std::ceil(periods * kSamplesPerPeriod))));
}

BoundaryControl::BoundaryControl(const MovingDomain& domain, Endpoint endpoint,
                                 double begin, double end,
                                 std::vector<double> samples)
    : domain_(domain), endpoint_(endpoint), begin_(begin), end_(end) {
  check_window(domain_, begin_, end_);
  if (samples.size() < 4)
    throw std::invalid_argument("sampled control needs at least 4 samples");
  vs_ = std::move(samples);
  const auto n = vs_.size();
  ts_.resize(n);
  const double la = std::log(begin_), lb = std::log(end_);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = la + (lb - la) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    ts_[i] = std::exp(u);
  }
  std::vector<double> us(n);
  for (std::size_t i = 0; i < n; ++i) us[i] = std::log(ts_[i]);
  interp_.emplace(us, vs_);
}

BoundaryControl BoundaryControl::zero(const MovingDomain& domain, Endpoint endpoint,
                                      double begin, double end) {
  return BoundaryControl(domain, endpoint, begin, end,
                         std::vector<std::complex<double>>{0.0});
}

int BoundaryControl::band() const {
  return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size() / 2);
}

void BoundaryControl::build_samples(int points) {
  const auto n = static_cast<std::size_t>(std::max(points, 4));
  ts_.resize(n);
  vs_.resize(n);
  std::vector<double> us(n);
  const double la = std::log(begin_), lb = std::log(end_);
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1);
    ts_[i] = std::exp(us[i]);
    vs_[i] = value(ts_[i]);
  }
  interp_.emplace(us, vs_);
}

double BoundaryControl::value(double t) const {
  if (t < begin_ || t > end_) return 0.0;
  if (!coeffs_.empty()) {
    const int K = band();
    const double theta = kPi * domain_.alpha * std::log(t);
    std::complex<double> acc = coeffs_[static_cast<std::size_t>(K)];
    for (int k = 1; k <= K; ++k) {
      const std::complex<double> e = std::polar(1.0, k * theta);
      acc += coeffs_[static_cast<std::size_t>(K + k)] * e +
             coeffs_[static_cast<std::size_t>(K - k)] * std::conj(e);
    }
    return acc.real();
  }
  return interp_->value(std::log(t));
}

double BoundaryControl::cost(QuadratureRule rule) const {
  if (!coeffs_.empty()) {
    // with w(t) = sum_k c_k t^{ik pi alpha} and v = Re w:
    //   int v^2 dt = 1/2 int |w|^2 dt + 1/2 Re int w^2 dt
    // both pieces in closed form via I(p) = int t^{ip pi alpha} dt
    const int K = band();
    const double pa = kPi * domain_.alpha;
    auto I = [&](int p) {
      const std::complex<double> q(1.0, p * pa);
      return (std::pow(std::complex<double>(end_, 0.0), q) -
              std::pow(std::complex<double>(begin_, 0.0), q)) / q;
    };
    std::vector<std::complex<double>> terms;
    terms.reserve(2 * static_cast<std::size_t>((2 * K + 1) * (2 * K + 1)));
    for (int k = -K; k <= K; ++k)
      for (int m = -K; m <= K; ++m) {
        const std::complex<double> ck = coeffs_[static_cast<std::size_t>(K + k)];
        const std::complex<double> cm = coeffs_[static_cast<std::size_t>(K + m)];
        terms.push_back(0.5 * ck * std::conj(cm) * I(k - m));
        terms.push_back(0.5 * ck * cm * I(k + m));
      }
    return pairwise_sum(std::move(terms)).real();
  }
  return integrate_adaptive(
      [this](double u) {
        const double v = interp_->value(u);
        return v * v * std::exp(u);
      },
      std::log(begin_), std::log(end_), rule);
}

double BoundaryControl::sup_abs() const {
  double m = 0.0;
  for (double v : vs_) m = std::max(m, std::abs(v));
  return m;
}

void BoundaryControl::write_csv(const std::string& path, int points) const {
  std::vector<std::vector<double>> rows;
  if (points > 0) {
    const double la = std::log(begin_), lb = std::log(end_);
    for (int i = 0; i < points; ++i) {
      const double t =
          std::exp(la + (lb - la) * static_cast<double>(i) / (points - 1));
      rows.push_back({t, value(std::min(t, end_))});
    }
  } else {
    for (std::size_t i = 0; i < ts_.size(); ++i) rows.push_back({ts_[i], vs_[i]});
  }
  expwave::write_csv(path, "t,v", rows);
}

BoundaryControl BoundaryControl::read_csv(const MovingDomain& domain,
                                          Endpoint endpoint,
                                          const std::string& path) {
  CsvTable t = expwave::read_csv(path);
  if (t.header.size() != 2)
    throw std::invalid_argument("control CSV must have columns t,v: " + path);
  if (t.rows.size() < 4)
    throw std::invalid_argument("control CSV needs at least 4 rows: " + path);
  std::vector<double> vs(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) vs[i] = t.rows[i][1];
  const double begin = t.rows.front()[0], end = t.rows.back()[0];
  // samples are taken as log-uniform over [begin, end]; verify the grid
  const auto n = t.rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double expect = std::exp(
        std::log(begin) + (std::log(end) - std::log(begin)) *
                              static_cast<double>(i) / static_cast<double>(n - 1));
    if (std::abs(t.rows[i][0] - expect) > 1e-9 * end)
      throw std::invalid_argument("control CSV grid is not log-uniform: " + path);
  }
  return BoundaryControl(domain, endpoint, begin, end, std::move(vs));
}

}  // namespace expwave
