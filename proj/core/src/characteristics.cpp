#include "expwave/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace expwave {

namespace {

// Psi(x) = int_0^x phi1 at the requested points, computed incrementally over
// the sorted points with one Gauss panel per gap (gaps are grid-sized, so a
// single panel is effectively exact)
std::vector<double> cumulative_velocity_integral(const InitialData& data,
                                                 const std::vector<double>& xs) {
  const auto n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

  const auto& gx = gauss_nodes(8);
  const auto& gw = gauss_weights(8);
  auto panel = [&](double a, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      acc += gw[i] * 0.5 * (b - a) * data.velocity(x);
    }
    return acc;
  };

  std::vector<double> psi(n);
  double prev_x = 0.0, prev_psi = 0.0;
  for (std::size_t k : order) {
    prev_psi += panel(prev_x, xs[k]);
    prev_x = xs[k];
    psi[k] = prev_psi;
  }
  return psi;
}

}  // namespace

CharacteristicProfile::CharacteristicProfile(const MovingDomain& domain,
                                             double s_min,
                                             std::vector<double> samples)
    : domain_(domain), s_min_(s_min),
      interp_(std::move(samples), UniformCubic::Boundary::periodic) {
  if (!(s_min_ > 0.0))
    throw std::invalid_argument("profile base coordinate must be positive");
  if (interp_.size() < 8)
    throw std::invalid_argument("profile needs at least 8 samples per period");
}

double CharacteristicProfile::value(double u) const {
  if (!(u > 0.0))
    throw std::domain_error("profile queried at a non-positive coordinate");
  const double theta = static_cast<double>(interp_.size()) *
                       std::log(u / s_min_) / domain_.log_lambda;
  return interp_.value(theta);
}

double CharacteristicProfile::derivative(double u) const {
  if (!(u > 0.0))
    throw std::domain_error("profile queried at a non-positive coordinate");
  const double n = static_cast<double>(interp_.size());
  const double theta = n * std::log(u / s_min_) / domain_.log_lambda;
  return interp_.derivative(theta) * n / (domain_.log_lambda * u);
}

FieldValue CharacteristicProfile::evaluate(double x, double t) const {
  if (t < domain_.t0 * (1.0 - 1e-12))
    throw std::domain_error("evaluate: t must be >= t0");
  if (std::abs(x) > domain_.ell * t * (1.0 + 1e-12) + 1e-300)
    throw std::domain_error("evaluate: |x| must be <= ell*t");
  const double fp = value(t + x), fm = value(t - x);
  const double dp = derivative(t + x), dm = derivative(t - x);
  return {fp - fm, dp + dm, dp - dm};
}

CharacteristicProfile CharacteristicProfile::shifted(double c) const {
  std::vector<double> samples = interp_.samples();
  for (double& s : samples) s += c;
  return CharacteristicProfile(domain_, s_min_, std::move(samples));
}

CharacteristicProfile build_profile(const InitialData& data,
                                    int samples_per_period) {
  if (samples_per_period < 8)
    throw std::invalid_argument("build_profile: too few samples per period");
  const MovingDomain& d = data.domain();
  const double s = data.data_time();
  const double L = d.ell * s;
  const double s_min = (1.0 - d.ell) * s;
  const auto J = static_cast<std::size_t>(samples_per_period);

  std::vector<double> us(J), xs(J);
  for (std::size_t j = 0; j < J; ++j) {
    us[j] = s_min * std::exp(static_cast<double>(j) * d.log_lambda /
                             static_cast<double>(J));
    xs[j] = std::abs(us[j] - s);
  }
  xs.push_back(L);  // for the anchoring constant
  const std::vector<double> psi = cumulative_velocity_integral(data, xs);
  const double c = -0.5 * psi.back();

  std::vector<double> samples(J);
  for (std::size_t j = 0; j < J; ++j) {
    const double sign = (us[j] >= s) ? 0.5 : -0.5;
    samples[j] = sign * data.displacement(xs[j]) + 0.5 * psi[j] + c;
  }
  return CharacteristicProfile(d, s_min, std::move(samples));
}

SeamMismatch seam_mismatch(const InitialData& data) {
  const double L = data.domain().ell * data.data_time();
  SeamMismatch m;
  m.value = std::max(std::abs(data.displacement(0.0)),
                     std::abs(data.displacement(L)));
  m.slope = std::max(std::abs(data.velocity(0.0)), std::abs(data.velocity(L)));
  return m;
}

double state_energy(const CharacteristicProfile& profile, double t,
                    QuadratureRule rule) {
  // phi_x^2 + phi_t^2 = 2 F'(t+x)^2 + 2 F'(t-x)^2, so the energy collapses
  // to int F'(u)^2 du over one full period-slice [(1-ell)t, (1+ell)t]
  const MovingDomain& d = profile.domain();
  rule.panels = std::max(rule.panels, 128);
  return integrate(
      [&](double u) {
        const double f = profile.derivative(u);
        return f * f;
      },
      (1.0 - d.ell) * t, (1.0 + d.ell) * t, rule);
}

SharpnessScenario sharpness_scenario(const MovingDomain& domain, double delta,
                                     Endpoint endpoint) {
  const double ell = domain.ell, t0 = domain.t0;
  if (!(delta > 0.0) || !(delta < ell * t0))
    throw std::invalid_argument("sharpness offset must lie in (0, ell*t0)");

  const double s = (endpoint == Endpoint::fixed) ? (t0 - delta) / (1.0 - ell)
                                                 : (1.0 + ell) * t0 - delta;
  const double L = ell * s;
  const double center =
      (endpoint == Endpoint::fixed) ? L - 0.5 * delta : 0.5 * delta;
  auto bump = bump_profile(center, 0.5 * delta, 1.0, L);
  auto rest = std::make_shared<ZeroProfile>();

  SharpnessScenario sc{InitialData(domain, bump, rest, s), endpoint, delta,
                       0.0, 0.0, 0.0};
  sc.horizon = ((1.0 + ell) * t0 - 2.0 * delta) / (1.0 - ell);
  sc.quiet_begin = t0 + delta;
  sc.quiet_end = sc.horizon - delta;
  if (!(sc.quiet_begin < sc.quiet_end))
    throw std::invalid_argument("sharpness offset leaves no quiet window");
  return sc;
}

double ControlledWave::Curve::covered() const {
  return pieces.empty() ? 0.0 : pieces.back().end;
}

const ControlledWave::Piece& ControlledWave::Curve::find(double u) const {
  if (pieces.empty())
    throw std::domain_error("controlled wave queried before marching");
  const double lo = pieces.front().begin, hi = pieces.back().end;
  if (u < lo - 1e-9 * hi || u > hi + 1e-9 * hi)
    throw std::domain_error("controlled wave queried outside the marched range");
  auto it = std::upper_bound(
      pieces.begin(), pieces.end(), u,
      [](double v, const Piece& p) { return v < p.begin; });
  if (it != pieces.begin()) --it;
  return *it;
}

double ControlledWave::forward_value(double u) const {
  const Piece& p = g_.find(u);
  return p.interp.value(u);
}

double ControlledWave::backward_value(double u) const {
  const Piece& p = h_.find(u);
  return p.interp.value(u);
}

double ControlledWave::forward_slope(double u) const {
  const Piece& p = g_.find(u);
  return p.interp.derivative(u);
}

double ControlledWave::backward_slope(double u) const {
  const Piece& p = h_.find(u);
  return p.interp.derivative(u);
}

std::vector<double> ControlledWave::forward_breaks() const {
  std::vector<double> b;
  for (const Piece& p : g_.pieces) b.push_back(p.begin);
  if (!g_.pieces.empty()) b.push_back(g_.pieces.back().end);
  return b;
}

std::vector<double> ControlledWave::backward_breaks() const {
  std::vector<double> b;
  for (const Piece& p : h_.pieces) b.push_back(p.begin);
  if (!h_.pieces.empty()) b.push_back(h_.pieces.back().end);
  return b;
}

FieldValue ControlledWave::evaluate(double x, double t) const {
  if (t < domain_.t0 * (1.0 - 1e-12) || t > reached_ * (1.0 + 1e-12))
    throw std::domain_error("evaluate: t outside the marched range");
  if (x < -1e-12 * domain_.ell * t ||
      x > domain_.ell * t * (1.0 + 1e-12) + 1e-300)
    throw std::domain_error("evaluate: x outside [0, ell*t]");
  const double gp = forward_slope(t + x), hm = backward_slope(t - x);
  return {forward_value(t + x) - backward_value(t - x), gp + hm, gp - hm};
}

namespace {

// breakpoints: every u at which G, H, or the control can jump, namely the
// lambda-orbit of t0 and of the control-window edge images
std::vector<double> jump_points(const MovingDomain& d,
                                const BoundaryControl& ctrl, double u_max) {
  std::vector<double> seeds = {d.t0,
                               (1.0 - d.ell) * d.t0,
                               (1.0 + d.ell) * d.t0,
                               ctrl.window_begin(),
                               ctrl.window_end(),
                               (1.0 + d.ell) * ctrl.window_begin(),
                               (1.0 + d.ell) * ctrl.window_end()};
  std::vector<double> all;
  for (double s : seeds)
    for (double u = s; u <= u_max * (1.0 + 1e-12); u *= d.lambda) all.push_back(u);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double u : all)
    if (out.empty() || u > out.back() * (1.0 + 1e-12)) out.push_back(u);
  return out;
}

template <class F>
void append_pieces(std::vector<ControlledWave::Piece>& pieces, double from,
                   double to, const std::vector<double>& breaks, int J,
                   double log_lambda, F&& source) {
  std::vector<double> cuts = {from};
  for (double b : breaks)
    if (b > from * (1.0 + 1e-12) && b < to * (1.0 - 1e-12)) cuts.push_back(b);
  cuts.push_back(to);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    const int n = std::max(
        6, static_cast<int>(std::ceil(J * std::log(b / a) / log_lambda)) + 1);
    std::vector<double> us(static_cast<std::size_t>(n)),
        vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double u = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
      us[static_cast<std::size_t>(i)] = u;
      // the right edge may carry the *next* piece's jump; sample just inside
      if (i == n - 1) u = b - (b - a) * 1e-9;
      vals[static_cast<std::size_t>(i)] = source(u);
    }
    pieces.push_back({a, b, LocalCubic(us, vals)});
  }
}

}  // namespace

ControlledWave solve_controlled(const InitialData& data,
                                const BoundaryControl& control, double T,
                                int samples_per_period) {
  const MovingDomain& d = data.domain();
  const double t0 = d.t0;
  if (std::abs(data.data_time() - t0) > 1e-12 * t0)
    throw std::invalid_argument("controlled march requires data at t0");
  if (!(T > t0))
    throw std::invalid_argument("controlled march needs T > t0");
  if (control.window_begin() < t0 * (1.0 - 1e-9) ||
      control.window_end() > T * (1.0 + 1e-9))
    throw std::invalid_argument("control window must lie inside [t0, T]");

  const double g_target = (1.0 + d.ell) * T;
  const double h_target = T;
  const std::vector<double> breaks = jump_points(d, control, g_target);

  // right-limit control value: zero from the window end onward
  const double w_end = control.window_end();
  auto ctrl_val = [&](double t) {
    return (t >= w_end) ? 0.0 : control.value(t);
  };

  ControlledWave w;
  w.domain_ = d;
  w.reached_ = T;

  // seed both curves from the data split at t0 (see build_profile)
  {
    const double L = d.ell * t0;
    const auto J = static_cast<std::size_t>(std::max(samples_per_period, 64));
    std::vector<double> xg(J + 1), xh(J + 1);
    for (std::size_t i = 0; i <= J; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(J);
      xg[i] = L * (std::exp(f * d.log_lambda) - 1.0) / (d.lambda - 1.0);
      xh[i] = xg[i];
    }
    std::vector<double> xs = xg;
    xs.insert(xs.end(), xh.begin(), xh.end());
    const std::vector<double> psi = cumulative_velocity_integral(data, xs);

    std::vector<double> gu(J + 1), gv(J + 1), hu(J + 1), hv(J + 1);
    for (std::size_t i = 0; i <= J; ++i) {
      gu[i] = t0 + xg[i];
      gv[i] = 0.5 * data.displacement(xg[i]) + 0.5 * psi[i];
      hu[J - i] = t0 - xh[i];
      hv[J - i] = -0.5 * data.displacement(xh[i]) + 0.5 * psi[J + 1 + i];
    }
    w.g_.pieces.push_back({gu.front(), gu.back(), LocalCubic(gu, gv)});
    w.h_.pieces.push_back({hu.front(), hu.back(), LocalCubic(hu, hv)});
  }

  const bool at_fixed = control.endpoint() == Endpoint::fixed;
  for (int iter = 0; iter < 200; ++iter) {
    const double g_end = w.g_.covered();
    const double h_end = w.h_.covered();
    if (g_end >= g_target * (1.0 - 1e-12) && h_end >= h_target * (1.0 - 1e-12))
      break;
    bool progressed = false;

    // backward curve H: fixed-end condition, controlled or homogeneous
    const double h_to = std::min(g_end, h_target);
    if (h_to > h_end * (1.0 + 1e-14)) {
      auto source = [&](double u) {
        const double g = w.forward_value(u);
        return at_fixed ? g - ctrl_val(u) : g;
      };
      append_pieces(w.h_.pieces, h_end, h_to, breaks, samples_per_period,
                    d.log_lambda, source);
      progressed = true;
    }

    // forward curve G: moving-end condition, controlled or homogeneous
    const double g_to = std::min(d.lambda * w.h_.covered(), g_target);
    if (g_to > g_end * (1.0 + 1e-14)) {
      auto source = [&](double u) {
        const double h = w.backward_value(u / d.lambda);
        return at_fixed ? h : h + ctrl_val(u / (1.0 + d.ell));
      };
      append_pieces(w.g_.pieces, g_end, g_to, breaks, samples_per_period,
                    d.log_lambda, source);
      progressed = true;
    }

    if (!progressed)
      throw std::logic_error("controlled march stalled before reaching T");
  }
  return w;
}

double state_energy(const ControlledWave& wave, double t, QuadratureRule rule) {
  // E = int_t^{(1+ell)t} G'^2 du + int_{(1-ell)t}^t H'^2 du, each integral
  // split at the curve's own piece edges so no panel straddles a jump
  const MovingDomain& d = wave.domain();
  rule.panels = std::max(rule.panels, 32);

  auto piecewise = [&](double a, double b, const std::vector<double>& edges,
                       auto&& slope) {
    std::vector<double> cuts = {a};
    for (double e : edges)
      if (e > a * (1.0 + 1e-12) && e < b * (1.0 - 1e-12)) cuts.push_back(e);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> parts;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      QuadratureRule r = rule;
      r.panels = std::max(
          8, static_cast<int>(std::ceil(rule.panels * (cuts[k + 1] - cuts[k]) /
                                        (b - a))));
      parts.push_back(integrate(
          [&](double u) {
            const double sl = slope(u);
            return sl * sl;
          },
          cuts[k], cuts[k + 1], r));
    }
    return pairwise_sum(std::move(parts));
  };

  const double eg = piecewise(t, (1.0 + d.ell) * t, wave.forward_breaks(),
                              [&](double u) { return wave.forward_slope(u); });
  const double eh = piecewise((1.0 - d.ell) * t, t, wave.backward_breaks(),
                              [&](double u) { return wave.backward_slope(u); });
  return eg + eh;
}

}  // namespace expwave
