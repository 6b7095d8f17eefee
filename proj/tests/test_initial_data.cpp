#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "expwave/csv.hpp"
#include "expwave/domain.hpp"
#include "expwave/initial_data.hpp"
#include "expwave/quadrature.hpp"

using namespace expwave;

TEST_CASE("bump profile values and derivatives") {
  BumpProfile b(0.5, 0.25, 2.0);
  CHECK(b.value(0.5) == 2.0);          // peak
  CHECK(b.value(0.25) == 0.0);         // support edge
  CHECK(b.value(0.75) == 0.0);
  CHECK(b.value(0.1) == 0.0);          // outside
  CHECK(b.derivative(0.5) == 0.0);
  CHECK(b.derivative(0.25) == 0.0);    // vanishes to third order at the edge
  CHECK(b.derivative(0.95) == 0.0);
  // r = 0.5: (1 - 1/4)^3 = 27/64; slope -6 a r (1-r^2)^2 / h
  CHECK(b.value(0.625) == doctest::Approx(2.0 * 27.0 / 64.0).epsilon(1e-15));
  CHECK(b.derivative(0.625) ==
        doctest::Approx(-6.0 * 2.0 * 0.5 * (9.0 / 16.0) / 0.25).epsilon(1e-14));
  CHECK(b.sup_norm() == 2.0);
}

TEST_CASE("bump integral matches the closed form 32/35 a h") {
  BumpProfile b(0.0, 1.0, 1.0);
  const double v =
      integrate([&](double x) { return b.value(x); }, -1.0, 1.0, {8, 8});
  CHECK(v == doctest::Approx(0.91428571428571428571).epsilon(1e-13));
}

TEST_CASE("bump support validation allows touching the closed ends") {
  CHECK_NOTHROW(bump_profile(0.5, 0.5, 1.0, 1.0));   // fills [0, 1] exactly
  CHECK_NOTHROW(bump_profile(0.75, 0.25, 1.0, 1.0)); // touches the right end
  CHECK_THROWS_AS(bump_profile(0.9, 0.25, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bump_profile(0.1, 0.25, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bump_profile(0.5, 0.25, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("odd extension conventions") {
  const MovingDomain d = make_domain(0.5, 2.0);
  auto disp = bump_profile(0.5, 0.25, 1.0, 1.0);
  auto vel = bump_profile(0.6, 0.2, -0.5, 1.0);
  InitialData data(d, disp, vel);
  CHECK(data.data_time() == 2.0);
  CHECK(data.half_length() == 1.0);
  for (double x : {0.3, 0.55, 0.8}) {
    CHECK(data.displacement(-x) == doctest::Approx(-data.displacement(x)).epsilon(1e-15));
    CHECK(data.velocity(-x) == doctest::Approx(-data.velocity(x)).epsilon(1e-15));
    // slope of an odd function is even
    CHECK(data.displacement_slope(-x) ==
          doctest::Approx(data.displacement_slope(x)).epsilon(1e-15));
  }
  const auto [d0, v0] = data.odd_extend(-0.55);
  CHECK(d0 == -data.displacement(0.55));
  CHECK(v0 == -data.velocity(0.55));
  CHECK(data.displacement_sup() == 1.0);
  CHECK(data.velocity_sup() == 0.5);
}

TEST_CASE("outside the closed interval is rejected") {
  const MovingDomain d = make_domain(0.5, 2.0);
  InitialData data(d, std::make_shared<ZeroProfile>(),
                   std::make_shared<ZeroProfile>());
  CHECK_NOTHROW(data.displacement(1.0));
  CHECK_NOTHROW(data.displacement(-1.0));
  CHECK_THROWS_AS(data.displacement(1.0 + 1e-6), std::domain_error);
  CHECK_THROWS_AS(data.velocity(-1.2), std::domain_error);
}

TEST_CASE("data released at a later time scales the interval") {
  const MovingDomain d = make_domain(0.5, 2.0);
  auto disp = bump_profile(1.0, 0.5, 1.0, 1.9);  // interval at s = 3.8
  InitialData data(d, disp, std::make_shared<ZeroProfile>(), 3.8);
  CHECK(data.data_time() == 3.8);
  CHECK(data.half_length() == doctest::Approx(1.9).epsilon(1e-15));
  CHECK_NOTHROW(data.displacement(1.85));
  CHECK_THROWS_AS(data.displacement(2.0), std::domain_error);
}

TEST_CASE("sampled profile from CSV") {
  const auto dir = std::filesystem::temp_directory_path() / "expwave_data_tests";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "profile.csv").string();
  {
    // smooth samples of sin(pi x) on [0, 1]
    std::vector<std::vector<double>> rows;
    for (int i = 0; i <= 64; ++i) {
      const double x = i / 64.0;
      rows.push_back({x, std::sin(3.14159265358979323846 * x)});
    }
    write_csv(path, "x,value", rows);
  }
  auto prof = sampled_profile_from_csv(path);
  CHECK(prof->value(0.5) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(prof->value(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  // cubic-stencil derivative error is O(h^3 |f''''|) ~ 3e-5 at h = 1/64
  CHECK(prof->derivative(0.5) == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(prof->sup_norm() >= 0.999);

  const std::string bad = (dir / "bad.csv").string();
  {
    std::ofstream out(bad, std::ios::binary);
    out << "x,value,extra\n0.0,1.0,2.0\n";
  }
  CHECK_THROWS_AS(sampled_profile_from_csv(bad), std::invalid_argument);
}

TEST_CASE("callable profile wraps analytic pairs") {
  CallableProfile p([](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                    4.0);
  CHECK(p.value(1.5) == 2.25);
  CHECK(p.derivative(1.5) == 3.0);
  CHECK(p.sup_norm() == 4.0);
}

TEST_CASE("sampled profile rejects non-finite values") {
  CHECK_THROWS_AS(SampledProfile({0.0, 1.0, 2.0, 3.0},
                                 {0.0, std::nan(""), 1.0, 0.0}),
                  std::invalid_argument);
}
