#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "expwave/spectral.hpp"

using namespace expwave;

namespace {

// Single conjugate pair C_{+-1} = 0.1 on ell = 0.5, t0 = 2: the workhorse
// fixture with every closed form checkable by hand.
SpectralSolution pair_fixture() {
  const MovingDomain dom = make_domain(0.5, 2.0);
  return SpectralSolution(dom, {{0.1, 0.0}, {0.0, 0.0}, {0.1, 0.0}});
}

}  // namespace

TEST_CASE("constructor validates the coefficient layout") {
  const MovingDomain dom = make_domain(0.5, 2.0);
  // Even length: no middle slot for C_0.
  CHECK_THROWS_AS(SpectralSolution(dom, std::vector<std::complex<double>>(4, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpectralSolution(dom, {}), std::invalid_argument);
  // Nonzero constant mode.
  CHECK_THROWS_WITH_AS(SpectralSolution(dom, {{0.1, 0.0}, {0.05, 0.0}, {0.1, 0.0}}),
                       "C0 must be zero", std::invalid_argument);
  // A tiny C_0 below 1e-12 of the coefficient scale is tolerated (CSV noise).
  const std::complex<double> dust(1e-14, 0.0);
  CHECK_NOTHROW(SpectralSolution(dom, {{0.1, 0.0}, dust, {0.1, 0.0}}));
}

TEST_CASE("coefficient accessors and order") {
  const SpectralSolution sol = pair_fixture();
  CHECK(sol.order() == 1);
  CHECK(sol.coefficient(1) == std::complex<double>(0.1, 0.0));
  CHECK(sol.coefficient(-1) == std::complex<double>(0.1, 0.0));
  CHECK(sol.coefficient(0) == std::complex<double>(0.0, 0.0));
  // Out-of-band modes read as zero: the truncated series is the whole series.
  CHECK(sol.coefficient(2) == std::complex<double>(0.0, 0.0));
  CHECK(sol.coefficient(-17) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("sharp constant matches the frozen reference for the pair fixture") {
  const SpectralSolution sol = pair_fixture();
  // 2 pi^2 alpha sum |n C_n|^2 with alpha = 2/log 3 and |C_{+-1}| = 0.1.
  CHECK(sol.sharp_constant() == doctest::Approx(0.71869608617283267559).epsilon(1e-15));
  CHECK(sol.recompute_sharp_constant() == doctest::Approx(sol.sharp_constant()).epsilon(1e-15));
}

TEST_CASE("conjugate symmetry detection") {
  const MovingDomain dom = make_domain(0.5, 2.0);
  CHECK(pair_fixture().conjugate_symmetric());
  const SpectralSolution skew(dom, {{0.2, 0.0}, {0.0, 0.0}, {0.1, 0.0}});
  CHECK_FALSE(skew.conjugate_symmetric());
  const SpectralSolution phase(dom, {{0.1, -0.05}, {0.0, 0.0}, {0.1, 0.05}});
  CHECK(phase.conjugate_symmetric());
}

TEST_CASE("single pair matches the hand closed form everywhere") {
  const SpectralSolution sol = pair_fixture();
  const double w = std::numbers::pi * sol.domain().alpha;
  const auto exact = [&](double x, double t) {
    const double up = std::log(t + x), um = std::log(t - x);
    FieldValue f;
    f.phi = 0.2 * (std::cos(w * up) - std::cos(w * um));
    f.phi_x = -0.2 * w * (std::sin(w * up) / (t + x) + std::sin(w * um) / (t - x));
    f.phi_t = -0.2 * w * (std::sin(w * up) / (t + x) - std::sin(w * um) / (t - x));
    return f;
  };
  for (double t : {2.0, 2.7, 3.9, 6.0, 18.0}) {
    const double L = sol.domain().length(t);
    for (double frac : {0.0, 0.13, 0.5, 0.871, 1.0}) {
      const double x = frac * L;
      const FieldValue got = sol.evaluate(x, t);
      const FieldValue want = exact(x, t);
      CHECK(got.phi == doctest::Approx(want.phi).epsilon(1e-13));
      CHECK(got.phi_x == doctest::Approx(want.phi_x).epsilon(1e-13));
      CHECK(got.phi_t == doctest::Approx(want.phi_t).epsilon(1e-13));
    }
  }
}

TEST_CASE("evaluate rejects points outside the expanding cone") {
  const SpectralSolution sol = pair_fixture();
  CHECK_THROWS_AS(sol.evaluate(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(sol.evaluate(1.1, 2.0), std::domain_error);  // L(2) = 1
  CHECK_THROWS_AS(sol.evaluate(-1.1, 2.0), std::domain_error);
  CHECK_NOTHROW(sol.evaluate(1.0, 2.0));  // boundary is included
}

TEST_CASE("Dirichlet condition holds at both endpoints") {
  const SpectralSolution sol = random_band_limited(make_domain(0.5, 2.0), 8, 77u);
  double scale = 0.0;
  for (const auto& c : sol.coefficients()) scale += std::abs(c);
  for (double t : {2.0, 2.31, 4.0, 9.25}) {
    const double L = sol.domain().length(t);
    CHECK(std::abs(sol.evaluate(0.0, t).phi) <= 1e-12 * scale);
    CHECK(std::abs(sol.evaluate(L, t).phi) <= 1e-12 * scale);
  }
}

TEST_CASE("boundary traces agree with interior evaluation and are exactly Dirichlet") {
  const SpectralSolution sol = random_band_limited(make_domain(0.5, 2.0), 6, 1234u);
  for (double t : {2.0, 2.6, 3.1, 5.5, 11.0}) {
    const double L = sol.domain().length(t);
    const FieldValue fixed = sol.boundary_trace(Endpoint::fixed, t);
    const FieldValue moving = sol.boundary_trace(Endpoint::moving, t);
    CHECK(fixed.phi == 0.0);
    CHECK(moving.phi == 0.0);
    const FieldValue at0 = sol.evaluate(0.0, t);
    const FieldValue atL = sol.evaluate(L, t);
    CHECK(fixed.phi_x == doctest::Approx(at0.phi_x).epsilon(1e-12));
    CHECK(fixed.phi_t == doctest::Approx(at0.phi_t).epsilon(1e-12));
    CHECK(moving.phi_x == doctest::Approx(atL.phi_x).epsilon(1e-12));
    CHECK(moving.phi_t == doctest::Approx(atL.phi_t).epsilon(1e-12));
    // The moving end rides the characteristic flow: phi_t = -ell phi_x there.
    CHECK(moving.phi_t == doctest::Approx(-0.5 * moving.phi_x).epsilon(1e-12));
    // The fixed end sees a pure time trace: phi_t = 0 under Dirichlet.
    CHECK(std::abs(fixed.phi_t) <= 1e-12 * std::max(1.0, std::abs(fixed.phi_x)));
  }
}

TEST_CASE("synthesized data reproduces the series at the start time") {
  const SpectralSolution sol = random_band_limited(make_domain(0.8, 2.0), 5, 9001u, 0.5);
  const InitialData data = synthesized_data(sol);
  CHECK(data.data_time() == 2.0);
  const double L = data.half_length();
  CHECK(L == doctest::Approx(1.6).epsilon(1e-15));
  for (double frac : {0.07, 0.33, 0.5, 0.92}) {
    const double x = frac * L;
    const FieldValue f = sol.evaluate(x, 2.0);
    CHECK(data.displacement(x) == doctest::Approx(f.phi).epsilon(1e-12));
    CHECK(data.displacement_slope(x) == doctest::Approx(f.phi_x).epsilon(1e-12));
    CHECK(data.velocity(x) == doctest::Approx(f.phi_t).epsilon(1e-12));
    // Odd extension on the negative half.
    CHECK(data.displacement(-x) == doctest::Approx(-f.phi).epsilon(1e-12));
    CHECK(data.velocity(-x) == doctest::Approx(-f.phi_t).epsilon(1e-12));
  }
}

TEST_CASE("projection round trip recovers band-limited coefficients") {
  for (double ell : {0.2, 0.5, 0.8}) {
    const MovingDomain dom = make_domain(ell, 2.0);
    const SpectralSolution truth = random_band_limited(dom, 8, 4242u, 0.5);
    const SpectralSolution back = compute_coefficients(synthesized_data(truth), 16);
    CHECK(back.order() == 16);
    CHECK(back.coefficient(0) == std::complex<double>(0.0, 0.0));
    CHECK(back.conjugate_symmetric());
    double scale = 0.0;
    for (int n = 1; n <= 8; ++n) scale = std::max(scale, std::abs(truth.coefficient(n)));
    for (int n = 1; n <= 16; ++n) {
      const std::complex<double> want = n <= 8 ? truth.coefficient(n) : 0.0;
      CHECK(std::abs(back.coefficient(n) - want) <= 1e-9 * scale);
      CHECK(std::abs(back.coefficient(-n) - std::conj(want)) <= 1e-9 * scale);
      // Symmetrization is exact, not merely approximate.
      CHECK(back.coefficient(-n) == std::conj(back.coefficient(n)));
    }
  }
}

TEST_CASE("projection requires data anchored at the start time") {
  const MovingDomain dom = make_domain(0.5, 2.0);
  const double L = dom.length(3.0);
  const InitialData late(dom, bump_profile(0.5 * L, 0.25 * L, 1.0, L),
                         std::make_shared<ZeroProfile>(), 3.0);
  CHECK_THROWS_AS(compute_coefficients(late, 8), std::invalid_argument);
}

TEST_CASE("coefficient CSV round trip is bit exact") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "expwave_test_coeffs.csv";
  const SpectralSolution sol = random_band_limited(make_domain(0.5, 2.0), 6, 31337u, 0.3);
  sol.write_csv(path.string());
  const SpectralSolution back = SpectralSolution::read_csv(sol.domain(), path.string());
  REQUIRE(back.order() == sol.order());
  for (int n = -6; n <= 6; ++n) CHECK(back.coefficient(n) == sol.coefficient(n));
  CHECK(back.sharp_constant() == sol.sharp_constant());
  std::remove(path.string().c_str());
}

TEST_CASE("coefficient CSV rejects malformed content") {
  namespace fs = std::filesystem;
  const MovingDomain dom = make_domain(0.5, 2.0);
  const fs::path path = fs::temp_directory_path() / "expwave_test_badcoeffs.csv";
  const auto write = [&](const char* body) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    REQUIRE(f != nullptr);
    std::fputs(body, f);
    std::fclose(f);
  };
  write("n,re,im\n-1,0.1,0\n0,0.2,0\n1,0.1,0\n");  // nonzero constant mode
  CHECK_THROWS_AS(SpectralSolution::read_csv(dom, path.string()), std::invalid_argument);
  // Sparse files are fine: modes that are not listed load as zero.
  write("n,re,im\n-3,0.1,0\n3,0.1,0\n");
  const SpectralSolution sparse = SpectralSolution::read_csv(dom, path.string());
  CHECK(sparse.order() == 3);
  CHECK(sparse.coefficient(1) == std::complex<double>(0.0, 0.0));
  CHECK(sparse.coefficient(3) == std::complex<double>(0.1, 0.0));
  write("n,re,im\n-1,0.1,0\n0,0,0\n0.5,0.1,0\n");  // non-integer mode index
  CHECK_THROWS_AS(SpectralSolution::read_csv(dom, path.string()), std::invalid_argument);
  write("n,re,im\n1,0.1,0\n0,0,0\n1,0.1,0\n");  // duplicate mode
  CHECK_THROWS_AS(SpectralSolution::read_csv(dom, path.string()), std::invalid_argument);
  std::remove(path.string().c_str());
}

TEST_CASE("random band-limited draws are deterministic and scale linearly") {
  const MovingDomain dom = make_domain(0.5, 2.0);
  const SpectralSolution a = random_band_limited(dom, 8, 555u, 0.5);
  const SpectralSolution b = random_band_limited(dom, 8, 555u, 0.5);
  CHECK(a.coefficients() == b.coefficients());
  const SpectralSolution c = random_band_limited(dom, 8, 555u, 1.0);
  for (int n = -8; n <= 8; ++n)
    CHECK(c.coefficient(n) == 2.0 * a.coefficient(n));
  const SpectralSolution other = random_band_limited(dom, 8, 556u, 0.5);
  CHECK(a.coefficients() != other.coefficients());
  CHECK(a.conjugate_symmetric());
  // Decay envelope: |C_n| <= sqrt(2) * amplitude / n^2.
  for (int n = 1; n <= 8; ++n)
    CHECK(std::abs(a.coefficient(n)) <= std::sqrt(2.0) * 0.5 / (n * n) + 1e-15);
  CHECK_THROWS_AS(random_band_limited(dom, 0, 1u), std::invalid_argument);
}
