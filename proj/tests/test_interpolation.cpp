#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "expwave/interpolation.hpp"

using namespace expwave;

namespace {
// cubic with nontrivial coefficients, exactly representable by a 4-point stencil
double cubic(double x) { return 2.0 + 0.5 * x - 3.0 * x * x + 0.25 * x * x * x; }
double cubic_d(double x) { return 0.5 - 6.0 * x + 0.75 * x * x; }
}  // namespace

TEST_CASE("clamped uniform grid reproduces cubics exactly") {
  std::vector<double> samples(9);
  for (int i = 0; i < 9; ++i) samples[i] = cubic(i);
  UniformCubic u(samples, UniformCubic::Boundary::clamped);
  for (double theta : {0.0, 0.3, 1.9, 4.5, 7.2, 8.0}) {
    CHECK(u.value(theta) == doctest::Approx(cubic(theta)).epsilon(1e-13));
    CHECK(u.derivative(theta) == doctest::Approx(cubic_d(theta)).epsilon(1e-12));
  }
}

TEST_CASE("periodic uniform grid converges at fourth order on a sine") {
  auto max_err = [](int n) {
    std::vector<double> samples(n);
    const double w = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) samples[i] = std::sin(w * i);
    UniformCubic u(samples, UniformCubic::Boundary::periodic);
    double err = 0.0;
    for (int j = 0; j < 777; ++j) {
      const double theta = n * (j / 777.0);
      err = std::max(err, std::abs(u.value(theta) - std::sin(w * theta)));
    }
    return err;
  };
  const double e32 = max_err(32), e64 = max_err(64);
  // 4-point Lagrange bound: max|s(s^2-1)(s-2)|/4! * h^4 * |f''''| = 3.49e-5
  CHECK(e32 < 3.6e-5);
  // halving the step should shrink the error by about 2^4
  CHECK(e64 < e32 / 12.0);
}

TEST_CASE("periodic wrap is seamless") {
  const int n = 16;
  std::vector<double> samples(n);
  const double w = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) samples[i] = std::cos(w * i);
  UniformCubic u(samples, UniformCubic::Boundary::periodic);
  // just left of the seam vs wrapped argument
  CHECK(u.value(n - 0.25) == doctest::Approx(u.value(-0.25)).epsilon(1e-12));
  CHECK(u.value(n + 2.5) == doctest::Approx(u.value(2.5)).epsilon(1e-12));
  CHECK(u.derivative(n + 2.5) == doctest::Approx(u.derivative(2.5)).epsilon(1e-11));
}

TEST_CASE("local cubic on a non-uniform grid is exact on cubics") {
  std::vector<double> xs = {0.0, 0.13, 0.5, 0.9, 1.7, 2.0, 3.1, 4.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(cubic(x));
  LocalCubic lc(xs, ys);
  CHECK(lc.x_min() == 0.0);
  CHECK(lc.x_max() == 4.0);
  for (double x : {0.0, 0.05, 0.7, 1.3, 2.5, 3.9, 4.0}) {
    CHECK(lc.value(x) == doctest::Approx(cubic(x)).epsilon(1e-12));
    CHECK(lc.derivative(x) == doctest::Approx(cubic_d(x)).epsilon(1e-10));
  }
}

TEST_CASE("local cubic interpolates its own nodes") {
  std::vector<double> xs = {1.0, 2.0, 2.2, 3.0, 5.0, 6.0};
  std::vector<double> ys = {0.4, -1.0, 2.5, 2.5, -3.0, 0.0};
  LocalCubic lc(xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(lc.value(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-12));
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(UniformCubic({1.0, 2.0}, UniformCubic::Boundary::clamped),
                  std::invalid_argument);
  CHECK_THROWS_AS(LocalCubic({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0, 4.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LocalCubic({0.0, 1.0, 1.0, 2.0}, {1.0, 2.0, 3.0, 4.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LocalCubic({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
}
