#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "expwave/domain.hpp"

using namespace expwave;

// 20-digit reference values (mpmath)
namespace {
constexpr double kAlpha02 = 4.932606924752863372;
constexpr double kAlpha05 = 1.8204784532536747872;
constexpr double kAlpha08 = 0.91023922662683739361;
constexpr double kLog3 = 1.0986122886681096914;
}  // namespace

TEST_CASE("derived constants at ell = 0.5") {
  const MovingDomain d = make_domain(0.5, 2.0);
  CHECK(d.ell == 0.5);
  CHECK(d.t0 == 2.0);
  CHECK(d.lambda == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(d.log_lambda == doctest::Approx(kLog3).epsilon(1e-15));
  CHECK(d.alpha == doctest::Approx(kAlpha05).epsilon(1e-15));
  CHECK(d.critical_time == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_FALSE(d.poorly_conditioned);
}

TEST_CASE("alpha across the speed range") {
  CHECK(make_domain(0.2, 1.0).alpha == doctest::Approx(kAlpha02).epsilon(1e-15));
  CHECK(make_domain(0.8, 1.0).alpha == doctest::Approx(kAlpha08).epsilon(1e-15));
}

TEST_CASE("alpha * log(lambda) == 2 and t0 + T* == lambda t0") {
  for (double ell : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const MovingDomain d = make_domain(ell, 2.0);
    CHECK(d.alpha * d.log_lambda == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d.t0 + d.critical_time ==
          doctest::Approx(d.lambda * d.t0).epsilon(1e-14));
  }
}

TEST_CASE("critical time formula in a stiff configuration") {
  // 2*ell*t0/(1-ell) with ell=0.01, t0=100
  const MovingDomain d = make_domain(0.01, 100.0);
  CHECK(d.critical_time == doctest::Approx(2.020202020202020202).epsilon(1e-15));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(make_domain(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_domain(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_domain(-0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_domain(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_domain(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_domain(0.5, -2.0), std::invalid_argument);
}

TEST_CASE("extreme speeds are flagged, not rejected") {
  CHECK(make_domain(1e-8, 1.0).poorly_conditioned);
  CHECK(make_domain(1.0 - 1e-8, 1.0).poorly_conditioned);
  CHECK_FALSE(make_domain(1e-3, 1.0).poorly_conditioned);
}

TEST_CASE("length and endpoint positions") {
  const MovingDomain d = make_domain(0.5, 2.0);
  CHECK(d.length(2.0) == 1.0);
  CHECK(d.length(6.0) == 3.0);
  CHECK(d.endpoint_position(Endpoint::fixed, 5.0) == 0.0);
  CHECK(d.endpoint_position(Endpoint::moving, 5.0) == 2.5);
}

TEST_CASE("log coordinate maps the interval onto [0, 2]") {
  const MovingDomain d = make_domain(0.5, 2.0);
  // alpha * log((t+x)/((1-ell) t)) at x=0, t=2: alpha*log 2
  CHECK(log_coordinate(d, 0.0, 2.0) ==
        doctest::Approx(1.2618595071429148742).epsilon(1e-15));
  for (double t : {2.0, 3.7, 11.0}) {
    CHECK(log_coordinate(d, -d.ell * t, t) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_coordinate(d, d.ell * t, t) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("literature times at ell = 0.1") {
  const LiteratureTimes lt = literature_times(0.1);
  CHECK(lt.T0 == doctest::Approx(2.2222222222222222222).epsilon(1e-14));
  CHECK(lt.T2 == doctest::Approx(2.2222222222222222222).epsilon(1e-14));
  CHECK(lt.T1 == doctest::Approx(3.5226811077419454711).epsilon(1e-14));
  CHECK(lt.T3 == doctest::Approx(2.769117207137156123).epsilon(1e-14));
}

TEST_CASE("literature ordering T0 <= T2 <= T3 <= T1 across the grid") {
  for (int k = 1; k <= 19; ++k) {
    const double ell = 0.05 * k;
    const LiteratureTimes lt = literature_times(ell);
    CHECK(lt.T0 <= lt.T2 * (1.0 + 1e-12));
    CHECK(lt.T2 <= lt.T3 * (1.0 + 1e-12));
    CHECK(lt.T3 <= lt.T1 * (1.0 + 1e-12));
  }
  // T1 overflows gracefully near ell = 1
  CHECK(std::isinf(literature_times(0.999).T1));
}
