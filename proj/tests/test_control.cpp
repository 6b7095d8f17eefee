#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "expwave/control.hpp"
#include "expwave/quadrature.hpp"

using namespace expwave;

namespace {

const MovingDomain dom = make_domain(0.5, 2.0);

std::vector<double> cubed_bump_samples(int n, double height) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double r = 2.0 * i / (n - 1.0) - 1.0;
    s[static_cast<std::size_t>(i)] = height * std::pow(std::max(0.0, 1.0 - r * r), 3);
  }
  return s;
}

}  // namespace

TEST_CASE("window validation") {
  CHECK_THROWS_AS(BoundaryControl::zero(dom, Endpoint::fixed, 1.5, 3.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(BoundaryControl::zero(dom, Endpoint::fixed, 3.0, 3.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(BoundaryControl::zero(dom, Endpoint::fixed, 4.0, 3.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      BoundaryControl(dom, Endpoint::fixed, 2.0, 6.0,
                      std::vector<std::complex<double>>(4, 0.0)),
      std::invalid_argument);
  CHECK_THROWS_AS(BoundaryControl(dom, Endpoint::fixed, 2.0, 6.0,
                                  std::vector<double>{0.0, 1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("zero control is zero everywhere with zero cost") {
  const BoundaryControl v = BoundaryControl::zero(dom, Endpoint::moving, 2.0, 6.0);
  for (double t : {1.0, 2.0, 3.5, 6.0, 9.0}) CHECK(v.value(t) == 0.0);
  CHECK(v.cost() == 0.0);
  CHECK(v.sup_abs() == 0.0);
  CHECK(v.band() == 0);
}

TEST_CASE("constant analytic control has an elementary cost") {
  // c_0 = A alone gives v(t) = A on the window, so cost = A^2 (end - begin).
  const BoundaryControl v(dom, Endpoint::fixed, 2.0, 6.0,
                          std::vector<std::complex<double>>{{0.7, 0.0}});
  CHECK(v.band() == 0);
  CHECK(v.analytic());
  CHECK(v.value(3.3) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(v.value(1.99) == 0.0);
  CHECK(v.value(6.01) == 0.0);
  CHECK(v.cost() == doctest::Approx(0.49 * 4.0).epsilon(1e-14));
  CHECK(v.sup_abs() == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("analytic control evaluates the log-harmonic sum and its closed-form cost") {
  const std::complex<double> c1(0.3, -0.2);
  const BoundaryControl v(dom, Endpoint::fixed, 2.0, 6.0,
                          {std::conj(c1), {0.0, 0.0}, c1});
  CHECK(v.band() == 1);
  const double w = std::numbers::pi * dom.alpha;
  for (double t : {2.0, 2.8, 4.1, 6.0}) {
    const double want = 2.0 * std::real(c1 * std::exp(std::complex<double>(0.0, w * std::log(t))));
    CHECK(v.value(t) == doctest::Approx(want).epsilon(1e-13));
  }
  // Closed-form cost against direct quadrature of v^2.
  const double quad = integrate([&](double t) { return v.value(t) * v.value(t); },
                                2.0, 6.0, QuadratureRule{64, 8});
  CHECK(v.cost() == doctest::Approx(quad).epsilon(1e-12));
  // Cost is quadratic in the coefficients.
  const BoundaryControl v2(dom, Endpoint::fixed, 2.0, 6.0,
                           {2.0 * std::conj(c1), {0.0, 0.0}, 2.0 * c1});
  CHECK(v2.cost() == doctest::Approx(4.0 * v.cost()).epsilon(1e-13));
}

TEST_CASE("sampled control interpolates its log-uniform samples") {
  const int n = 257;
  const BoundaryControl v(dom, Endpoint::fixed, 2.3, 4.9, cubed_bump_samples(n, 0.4));
  // Exact at the nodes.
  const double lu = std::log(2.3), span = std::log(4.9) - std::log(2.3);
  for (int i : {0, 31, 128, 200, n - 1}) {
    const double t = std::exp(lu + span * i / (n - 1.0));
    const double r = 2.0 * i / (n - 1.0) - 1.0;
    const double want = 0.4 * std::pow(std::max(0.0, 1.0 - r * r), 3);
    CHECK(v.value(t) == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(v.value(2.2999) == 0.0);
  CHECK(v.value(4.9001) == 0.0);
  CHECK(v.sup_abs() == doctest::Approx(0.4).epsilon(1e-6));
  // Quadrature cost agrees with direct integration of the interpolant (the
  // panels here do not align with the interpolation knots, so only ask for
  // agreement well past the knot-crossing error).
  const double quad = integrate([&](double t) { return v.value(t) * v.value(t); },
                                2.3, 4.9, QuadratureRule{64, 8});
  CHECK(v.cost() == doctest::Approx(quad).epsilon(1e-7));
}

TEST_CASE("control CSV round trip preserves the interpolant") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "expwave_test_control.csv";
  const BoundaryControl v(dom, Endpoint::fixed, 2.3, 4.9, cubed_bump_samples(129, 0.4));
  v.write_csv(path.string());
  const BoundaryControl back =
      BoundaryControl::read_csv(dom, Endpoint::fixed, path.string());
  CHECK(back.window_begin() == doctest::Approx(2.3).epsilon(1e-15));
  CHECK(back.window_end() == doctest::Approx(4.9).epsilon(1e-15));
  for (double t : {2.3, 2.51, 3.3, 4.44, 4.9})
    CHECK(back.value(t) == doctest::Approx(v.value(t)).epsilon(1e-12));
  CHECK(back.cost() == doctest::Approx(v.cost()).epsilon(1e-10));
  std::remove(path.string().c_str());
}

TEST_CASE("analytic control survives CSV export as a dense sampling") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "expwave_test_control_dense.csv";
  const std::complex<double> c1(0.25, 0.1);
  const BoundaryControl v(dom, Endpoint::fixed, 2.0, 6.0,
                          {std::conj(c1), {0.0, 0.0}, c1});
  v.write_csv(path.string(), 2049);
  const BoundaryControl back =
      BoundaryControl::read_csv(dom, Endpoint::fixed, path.string());
  for (double t : {2.0, 2.77, 3.9, 5.31, 6.0})
    CHECK(back.value(t) == doctest::Approx(v.value(t)).epsilon(1e-9));
  CHECK(back.cost() == doctest::Approx(v.cost()).epsilon(1e-8));
  std::remove(path.string().c_str());
}

TEST_CASE("control CSV rejects a grid that is not log-uniform") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "expwave_test_badgrid.csv";
  {
    std::ofstream out(path);
    out << "t,v\n2,0\n3,0.5\n4,0.5\n5,0\n";  // linear spacing
  }
  CHECK_THROWS_AS(BoundaryControl::read_csv(dom, Endpoint::fixed, path.string()),
                  std::invalid_argument);
  {
    std::ofstream out(path);
    out << "t,v\n2,0\n2.5,0.5\n3,0\n";  // too few rows
  }
  CHECK_THROWS_AS(BoundaryControl::read_csv(dom, Endpoint::fixed, path.string()),
                  std::invalid_argument);
  {
    std::ofstream out(path);
    out << "x,y\n2,0\n2.5,0.5\n3,0.2\n4,0\n";  // wrong header
  }
  CHECK_THROWS_AS(BoundaryControl::read_csv(dom, Endpoint::fixed, path.string()),
                  std::invalid_argument);
  std::remove(path.string().c_str());
}
