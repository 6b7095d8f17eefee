#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace expwave {

/// Composite Gauss-Legendre rule: `panels` equal panels, `nodes` points each.
struct QuadratureRule {
  int panels = 16;
  int nodes = 8;
};

/// Nodes/weights of the `order`-point Gauss-Legendre rule on [-1,1],
/// computed by Newton iteration on the Legendre recurrence and cached.
const std::vector<double>& gauss_nodes(int order);
const std::vector<double>& gauss_weights(int order);

namespace detail {
inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace detail

/// Fixed-order pairwise (tree) reduction; deterministic for a given term order.
template <class T>
T pairwise_sum(std::vector<T> terms) {
  if (terms.empty()) return T{};
  std::size_t n = terms.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i)
      terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (n % 2 == 1) {
      terms[half] = terms[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return terms[0];
}

/// Composite Gauss-Legendre integral of f over [a, b] with a fixed rule.
/// Panels are reduced pairwise in fixed order; a non-finite sample aborts
/// with the offending location in the message.
template <class F>
auto integrate(F&& f, double a, double b, QuadratureRule rule = {}) {
  using R = std::decay_t<decltype(f(a))>;
  if (rule.panels < 1 || rule.nodes < 2)
    throw std::invalid_argument("integrate: rule needs panels >= 1, nodes >= 2");
  const auto& xs = gauss_nodes(rule.nodes);
  const auto& ws = gauss_weights(rule.nodes);
  const double h = (b - a) / rule.panels;
  std::vector<R> panel_sums(static_cast<std::size_t>(rule.panels));
  for (int p = 0; p < rule.panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    R acc{};
    for (int i = 0; i < rule.nodes; ++i) {
      const double x = mid + 0.5 * h * xs[static_cast<std::size_t>(i)];
      R v = f(x);
      if (!detail::finite_value(v)) {
        std::ostringstream os;
        os << "integrate: non-finite integrand sample at x=" << x;
        throw std::domain_error(os.str());
      }
      acc += ws[static_cast<std::size_t>(i)] * (0.5 * h) * v;
    }
    panel_sums[static_cast<std::size_t>(p)] = acc;
  }
  return pairwise_sum(std::move(panel_sums));
}

/// Doubles the panel count until two successive composite results agree to
/// `rel_tol` (relative to the latest magnitude) or to `abs_tol`, starting from
/// rule.panels and capped at `max_panels`.  The absolute floor matters for
/// integrals whose true value is zero (orthogonality): their samples are pure
/// rounding noise and no relative test can ever pass.  Throws if the cap is
/// hit while the difference is still far (1000x) above the tolerance.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, QuadratureRule rule = {},
                        double rel_tol = 1e-12, double abs_tol = 0.0,
                        int max_panels = 1024) {
  using R = std::decay_t<decltype(f(a))>;
  QuadratureRule r = rule;
  R prev = integrate(f, a, b, r);
  while (r.panels < max_panels) {
    r.panels *= 2;
    R next = integrate(f, a, b, r);
    const double diff = std::abs(next - prev);
    const double scale = std::max(std::abs(next), std::abs(prev));
    if (diff <= rel_tol * scale + abs_tol + 1e-300) return next;
    prev = next;
  }
  R next = prev;
  {
    QuadratureRule probe = r;
    probe.panels = std::min(2 * r.panels, 2 * max_panels);
    next = integrate(f, a, b, probe);
    const double diff = std::abs(next - prev);
    const double scale = std::max(std::abs(next), std::abs(prev));
    if (diff > 1000.0 * (rel_tol * scale + abs_tol + 1e-300)) {
      std::ostringstream os;
      os << "integrate_adaptive: no convergence at " << max_panels
         << " panels (last relative change " << (scale > 0 ? diff / scale : 0.0)
         << ")";
      throw std::runtime_error(os.str());
    }
  }
  return next;
}

}  // namespace expwave
