#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/sinc.hpp"
#include "bandlim/testfn.hpp"
#include "doctest.h"

using namespace bandlim;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent consistency check between the two sides of a factor: Fourier
// inversion h(x) = int hhat(xi) e^{2 pi i x xi} d xi over the certified band
// (or a numerically exhaustive range for the Gaussian).
double invert_transform(const TestFactor& f, double x, double band) {
  auto g = [&](double xi) {
    std::complex<double> phase(std::cos(2.0 * kPi * x * xi), std::sin(2.0 * kPi * x * xi));
    return (f.transform(xi) * phase).real();
  };
  return integrate(g, -band, band, {1e-12, 20000});
}

void check_decay_certs(const TestFactor& f) {
  for (double x : {0.0, 0.45, 1.3, 2.7, 5.5, 11.1, 24.9, 80.3}) {
    for (double sx : {x, -x}) {
      const double v = std::abs(f.value(sx));
      CHECK(v <= f.decay_constant / (1.0 + sx * sx) + 1e-12);
      if (f.sharp) {
        CHECK(v <= f.sharp->constant / (1.0 + std::pow(std::abs(sx), f.sharp->order)) + 1e-12);
      }
    }
  }
}

}  // namespace

TEST_CASE("fejer factor: closed transform, band edge, inversion") {
  TestFactor f = fejer_factor(0.7);
  CHECK(f.bandwidth == doctest::Approx(0.7));
  CHECK(f.value(0.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(f.transform(0.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.transform(0.35).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.transform(0.7).real() == 0.0);
  CHECK(f.transform(-0.7001).real() == 0.0);
  CHECK(f.transform(0.21).imag() == 0.0);
  for (double x : {0.0, 0.3, 1.7}) {
    CHECK(f.value(x) == doctest::Approx(invert_transform(f, x, 0.7)).epsilon(1e-9));
  }
  check_decay_certs(f);
}

TEST_CASE("modulated fejer factor splits the tent across both carriers") {
  TestFactor f = fejer_factor(0.2, 1.0);
  CHECK(f.bandwidth == doctest::Approx(1.2));
  CHECK(f.value(0.0) == doctest::Approx(0.4).epsilon(1e-15));  // 2 * s
  CHECK(f.transform(1.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.transform(-1.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.transform(1.1).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.transform(0.0).real() == 0.0);  // tents do not reach the origin
  for (double x : {0.0, 0.45, 2.2}) {
    CHECK(f.value(x) == doctest::Approx(invert_transform(f, x, 1.2)).epsilon(1e-9));
  }
  check_decay_certs(f);
}

TEST_CASE("make_fejer enforces the bandwidth cap") {
  CHECK(make_fejer(1.0, 0.9).bandwidth() == doctest::Approx(0.9));
  CHECK_NOTHROW(make_fejer(1.3, 0.2, 1.0));
  CHECK_THROWS_AS(make_fejer(1.0, 0.9, 0.2), Error);
  try {
    make_fejer(1.0, 1.1);
  } catch (const Error& e) {
    CHECK(e.code() == errc::bandwidth_exceeded);
  }
  CHECK_THROWS_AS(fejer_factor(0.0), Error);
  CHECK_THROWS_AS(fejer_factor(-0.5), Error);
}

TEST_CASE("two-bump pair function: lattice values and banded transform") {
  const double a = 0.4, ell = 3 * a;  // odd multiple
  TestFunction h = make_h_al(a, ell);
  REQUIRE(h.dimension() == 1);
  const TestFactor& f = h.factors[0];

  // 1 at the two bump centers, 0 at every other lattice site
  const double zero_pt[] = {0.0};
  CHECK(h.value(zero_pt) == doctest::Approx(1.0).epsilon(1e-14));
  const double ell_pt[] = {ell};
  CHECK(h.value(ell_pt) == doctest::Approx(1.0).epsilon(1e-14));
  for (long long k = -6; k <= 9; ++k) {
    if (k == 0 || k == 3) continue;
    const double pt[] = {a * static_cast<double>(k)};
    CHECK(std::abs(h.value(pt)) < 1e-13);
  }

  CHECK(f.bandwidth == doctest::Approx(0.5 / a));
  CHECK(f.transform(0.0) == std::complex<double>(2.0 * a, 0.0));
  CHECK(std::abs(f.transform(0.5 / a + 1e-9)) == 0.0);
  // interior phase: a (1 + e^{-2 pi i ell xi})
  const double xi = 0.5;
  std::complex<double> expect =
      a * (1.0 + std::complex<double>(std::cos(2 * kPi * ell * xi), -std::sin(2 * kPi * ell * xi)));
  CHECK(std::abs(f.transform(xi) - expect) < 1e-15);
  // Hermitian symmetry of a real h
  CHECK(std::abs(f.transform(-xi) - std::conj(f.transform(xi))) < 1e-15);

  check_decay_certs(f);

  CHECK_THROWS_AS(make_h_al(a, 2 * a), Error);    // even multiple
  CHECK_THROWS_AS(make_h_al(a, 0.77 * a), Error); // not a multiple at all
  CHECK_THROWS_AS(make_h_al(0.0, 1.0), Error);
  try {
    make_h_al(a, 2 * a);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_odd_multiple);
  }
}

TEST_CASE("sinc cube factor: quadratic spline transform") {
  TestFactor f = sinc_power_factor(3, 1.0);
  CHECK(f.bandwidth == doctest::Approx(1.5));
  CHECK(f.transform(0.0).real() == doctest::Approx(0.75).epsilon(1e-15));
  // continuity across the knot at 1/2
  CHECK(f.transform(0.5 - 1e-12).real() ==
        doctest::Approx(f.transform(0.5 + 1e-12).real()).epsilon(1e-9));
  CHECK(f.transform(1.5).real() == 0.0);
  for (double x : {0.0, 0.3, 1.9}) {
    CHECK(f.value(x) == doctest::Approx(invert_transform(f, x, 1.5)).epsilon(1e-9));
  }
  check_decay_certs(f);

  TestFactor g = sinc_power_factor(3, 0.6);
  CHECK(g.bandwidth == doctest::Approx(0.9));
  CHECK(g.transform(0.0).real() == doctest::Approx(0.75 / 0.6).epsilon(1e-14));
  CHECK(g.value(0.5) == doctest::Approx(std::pow(sinc(0.3), 3.0)).epsilon(1e-14));
}

TEST_CASE("sinc fourth-power factor: cubic B-spline transform") {
  TestFactor f = sinc_power_factor(4, 1.0);
  CHECK(f.bandwidth == doctest::Approx(2.0));
  CHECK(f.transform(0.0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(f.transform(1.0).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(f.transform(2.0).real() == 0.0);
  // C^2 spline: values and a knot-straddling finite difference agree
  CHECK(f.transform(1.0 - 1e-7).real() ==
        doctest::Approx(f.transform(1.0 + 1e-7).real()).epsilon(1e-6));
  for (double x : {0.0, 0.37, 2.4}) {
    CHECK(f.value(x) == doctest::Approx(invert_transform(f, x, 2.0)).epsilon(1e-9));
  }
  check_decay_certs(f);
  CHECK_THROWS_AS(sinc_power_factor(2, 1.0), Error);
  CHECK_THROWS_AS(sinc_power_factor(5, 1.0), Error);
  CHECK_THROWS_AS(sinc_power_factor(4, 0.0), Error);
}

TEST_CASE("modulated sinc^4 factor") {
  TestFactor f = modulated_sinc4_factor(1.0);
  CHECK(f.bandwidth == doctest::Approx(3.0));
  CHECK(f.value(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  // at the carrier the two spline copies stack: C4(0) + C4(2)
  CHECK(f.transform(1.0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(f.transform(0.0).real() == doctest::Approx(2.0 / 6.0).epsilon(1e-15));  // 2 * C4(1)
  for (double x : {0.0, 0.3, 1.6}) {
    CHECK(f.value(x) == doctest::Approx(invert_transform(f, x, 3.0)).epsilon(1e-9));
  }
  check_decay_certs(f);
  CHECK_THROWS_AS(modulated_sinc4_factor(0.0), Error);
}

TEST_CASE("gaussian factor is self-dual with fast certificates on both sides") {
  TestFactor f = gaussian_factor();
  CHECK(std::isinf(f.bandwidth));
  CHECK(f.value(0.8) == doctest::Approx(std::exp(-kPi * 0.64)).epsilon(1e-15));
  CHECK(f.transform(0.8).real() == doctest::Approx(std::exp(-kPi * 0.64)).epsilon(1e-15));
  CHECK(f.value(1.3) == doctest::Approx(invert_transform(f, 1.3, 6.0)).epsilon(1e-9));
  REQUIRE(f.transform_decay.has_value());
  for (double xi : {0.0, 1.0, 2.5, 4.0}) {
    CHECK(std::abs(f.transform(xi)) <=
          f.transform_decay->constant / (1.0 + std::pow(xi, f.transform_decay->order)) + 1e-12);
  }
  check_decay_certs(f);
}

TEST_CASE("product test functions multiply values and transforms") {
  TestFunction eta = product_test({fejer_factor(0.5), sinc_power_factor(4, 0.8)});
  CHECK(eta.dimension() == 2);
  CHECK(eta.bandwidth() == doctest::Approx(1.6));  // max(0.5, 2*0.8)
  const double x[] = {0.3, -0.6};
  CHECK(eta.value(x) ==
        doctest::Approx(eta.factors[0].value(0.3) * eta.factors[1].value(-0.6)).epsilon(1e-15));
  const double xi[] = {0.2, 0.9};
  CHECK(eta.transform(xi).real() ==
        doctest::Approx((eta.factors[0].transform(0.2) * eta.factors[1].transform(0.9)).real())
            .epsilon(1e-15));
  CHECK(eta.label() == "fejer(s=0.5) * sinc^4(s=0.8)");

  const double short_pt[] = {0.1};
  CHECK_THROWS_AS(eta.value(short_pt), Error);
  CHECK_THROWS_AS(product_test({}), Error);
  TestFactor broken;  // no callables
  CHECK_THROWS_AS(product_test({broken}), Error);
}

TEST_CASE("shannon interpolation hits its own samples and sinc-shifts between them") {
  std::map<long long, double> samples{{0, 1.0}, {3, -2.0}};
  const double a = 0.4;
  CHECK(shannon_interpolate(samples, a, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(shannon_interpolate(samples, a, 3 * a) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(std::abs(shannon_interpolate(samples, a, 1 * a)) < 1e-13);
  const double x = 0.17;
  CHECK(shannon_interpolate(samples, a, x) ==
        doctest::Approx(sinc(x / a) - 2.0 * sinc((x - 3 * a) / a)).epsilon(1e-13));
  CHECK(shannon_interpolate({}, a, 0.3) == 0.0);
}
