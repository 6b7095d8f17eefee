#include "expwave/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expwave {

namespace {

// Lagrange basis on nodes {0,1,2,3} evaluated at u.
inline double lag(const double p[4], double u) {
  const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  return p[0] * l0 + p[1] * l1 + p[2] * l2 + p[3] * l3;
}

inline double lag_d(const double p[4], double u) {
  const double d0 = -((u - 2.0) * (u - 3.0) + (u - 1.0) * (u - 3.0) + (u - 1.0) * (u - 2.0)) / 6.0;
  const double d1 = ((u - 2.0) * (u - 3.0) + u * (u - 3.0) + u * (u - 2.0)) / 2.0;
  const double d2 = -((u - 1.0) * (u - 3.0) + u * (u - 3.0) + u * (u - 1.0)) / 2.0;
  const double d3 = ((u - 1.0) * (u - 2.0) + u * (u - 1.0) + u * (u - 2.0)) / 6.0;
  return p[0] * d0 + p[1] * d1 + p[2] * d2 + p[3] * d3;
}

}  // namespace

UniformCubic::UniformCubic(std::vector<double> samples, Boundary boundary)
    : y_(std::move(samples)), boundary_(boundary) {
  if (y_.size() < 4)
    throw std::invalid_argument("UniformCubic: need at least 4 samples");
}

void UniformCubic::stencil(double theta, double p[4], double* xi) const {
  const auto n = static_cast<std::ptrdiff_t>(y_.size());
  if (boundary_ == Boundary::periodic) {
    const double period = static_cast<double>(n);
    double tm = theta - period * std::floor(theta / period);
    if (tm >= period) tm -= period;
    auto j = static_cast<std::ptrdiff_t>(std::floor(tm));
    if (j >= n) j = n - 1;
    for (int k = 0; k < 4; ++k) {
      std::ptrdiff_t idx = (j - 1 + k) % n;
      if (idx < 0) idx += n;
      p[k] = y_[static_cast<std::size_t>(idx)];
    }
    *xi = tm - static_cast<double>(j) + 1.0;
  } else {
    const double hi = static_cast<double>(n - 1);
    if (theta < -1e-9 || theta > hi + 1e-9)
      throw std::domain_error("UniformCubic: query outside the clamped grid");
    const double tc = std::clamp(theta, 0.0, hi);
    auto j = static_cast<std::ptrdiff_t>(std::floor(tc));
    j = std::clamp<std::ptrdiff_t>(j, 0, n - 2);
    const std::ptrdiff_t s = std::clamp<std::ptrdiff_t>(j - 1, 0, n - 4);
    for (int k = 0; k < 4; ++k) p[k] = y_[static_cast<std::size_t>(s + k)];
    *xi = tc - static_cast<double>(s);
  }
}

double UniformCubic::value(double theta) const {
  double p[4], u;
  stencil(theta, p, &u);
  return lag(p, u);
}

double UniformCubic::derivative(double theta) const {
  double p[4], u;
  stencil(theta, p, &u);
  return lag_d(p, u);
}

LocalCubic::LocalCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size())
    throw std::invalid_argument("LocalCubic: abscissae/value count mismatch");
  if (x_.size() < 4)
    throw std::invalid_argument("LocalCubic: need at least 4 points");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("LocalCubic: abscissae must be strictly increasing");
}

std::size_t LocalCubic::stencil_start(double x) const {
  const auto n = x_.size();
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  auto cell = static_cast<std::ptrdiff_t>(it - x_.begin()) - 1;
  cell = std::clamp<std::ptrdiff_t>(cell, 0, static_cast<std::ptrdiff_t>(n) - 2);
  const auto s = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  return static_cast<std::size_t>(s);
}

double LocalCubic::value(double x) const {
  const std::size_t s = stencil_start(x);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    double li = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      li *= (x - x_[s + j]) / (x_[s + i] - x_[s + j]);
    }
    acc += y_[s + i] * li;
  }
  return acc;
}

double LocalCubic::derivative(double x) const {
  const std::size_t s = stencil_start(x);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    double di = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k == i) continue;
      double term = 1.0;
      for (int j = 0; j < 4; ++j) {
        if (j == i || j == k) continue;
        term *= (x - x_[s + j]) / (x_[s + i] - x_[s + j]);
      }
      di += term / (x_[s + i] - x_[s + k]);
    }
    acc += y_[s + i] * di;
  }
  return acc;
}

}  // namespace expwave
