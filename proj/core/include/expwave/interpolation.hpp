#pragma once

#include <cstddef>
#include <vector>

namespace expwave {

/// Local 4-point cubic interpolation on a uniform grid (exact for cubics).
/// theta is measured in grid units.  Periodic grids hold n samples covering
/// one period [0, n); clamped grids hold n samples on [0, n-1] and shift the
/// stencil inward at the ends.
class UniformCubic {
 public:
  enum class Boundary { periodic, clamped };

  UniformCubic() = default;
  UniformCubic(std::vector<double> samples, Boundary boundary);

  double value(double theta) const;
  double derivative(double theta) const;  // d/dtheta
  std::size_t size() const { return y_.size(); }
  const std::vector<double>& samples() const { return y_; }

 private:
  void stencil(double theta, double p[4], double* xi) const;
  std::vector<double> y_;
  Boundary boundary_ = Boundary::clamped;
};

/// Cubic interpolation through arbitrary strictly increasing abscissae using a
/// sliding 4-point Lagrange stencil; derivative comes from the same cubic.
class LocalCubic {
 public:
  LocalCubic() = default;
  LocalCubic(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t stencil_start(double x) const;
  std::vector<double> x_, y_;
};

}  // namespace expwave
