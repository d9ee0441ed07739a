#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "bandlim/correlation.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/samplers.hpp"
#include "bandlim/sinc.hpp"
#include "bandlim/structures.hpp"
#include "bandlim/testfn.hpp"
#include "doctest.h"

using namespace bandlim;

namespace {

// constant-one factor: turns the distinct-tuple statistic into the falling
// factorial of the total count
TestFactor one_factor() {
  TestFactor f;
  f.value = [](double) { return 1.0; };
  f.transform = [](double) { return std::complex<double>(1.0, 0.0); };
  f.label = "one";
  return f;
}

Configuration small_config() {
  Configuration cfg;
  cfg.window = {-2.0, 2.0};
  cfg.positions = {-0.3, 0.7, 1.4};
  cfg.multiplicities = {1, 2, 1};
  return cfg;
}

// brute-force distinct-tuple sum with every multiplicity expanded to
// individual indices
double brute_distinct(const Configuration& cfg, const TestFunction& eta) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < cfg.positions.size(); ++i)
    for (int m = 0; m < cfg.multiplicities[i]; ++m) pts.push_back(cfg.positions[i]);
  const int N = static_cast<int>(pts.size());
  const int n = eta.dimension();
  double total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    bool distinct = true;
    for (int i = 0; i < n && distinct; ++i)
      for (int j = i + 1; j < n; ++j)
        if (idx[i] == idx[j]) {
          distinct = false;
          break;
        }
    if (distinct) {
      double v = 1.0;
      for (int i = 0; i < n; ++i) v *= eta.factors[i].value(pts[idx[i]]);
      total += v;
    }
    int d = n - 1;
    while (d >= 0 && idx[d] == N - 1) idx[d--] = 0;
    if (d < 0) break;
    ++idx[d];
  }
  return total;
}

}  // namespace

TEST_CASE("distinct tuple statistic reduces to falling factorials for flat factors") {
  Configuration cfg = small_config();  // total count 4
  for (int n = 1; n <= 6; ++n) {
    TestFunction eta{std::vector<TestFactor>(static_cast<std::size_t>(n), one_factor())};
    double expect = 1.0;
    for (int i = 0; i < n; ++i) expect *= static_cast<double>(4 - i);
    CHECK(distinct_tuple_statistic(cfg, eta) == doctest::Approx(expect).epsilon(1e-12));
  }
  TestFunction eta11{std::vector<TestFactor>(11, one_factor())};
  CHECK_THROWS_AS(distinct_tuple_statistic(cfg, eta11), Error);
}

TEST_CASE("distinct tuple statistic matches brute-force enumeration") {
  Configuration cfg = small_config();
  TestFunction e2 = product_test({fejer_factor(0.8), fejer_factor(0.5, 0.4)});
  CHECK(distinct_tuple_statistic(cfg, e2) ==
        doctest::Approx(brute_distinct(cfg, e2)).epsilon(1e-12));
  TestFunction e3 = product_test({fejer_factor(0.8), fejer_factor(0.5), sinc_power_factor(4, 0.7)});
  CHECK(distinct_tuple_statistic(cfg, e3) ==
        doctest::Approx(brute_distinct(cfg, e3)).epsilon(1e-12));
  TestFunction e4 = product_test({fejer_factor(0.8), fejer_factor(0.5), fejer_factor(0.3),
                                  sinc_power_factor(3, 0.9)});
  CHECK(distinct_tuple_statistic(cfg, e4) ==
        doctest::Approx(brute_distinct(cfg, e4)).epsilon(1e-11));
  // empty configuration
  Configuration empty;
  empty.window = {-1.0, 1.0};
  CHECK(distinct_tuple_statistic(empty, e2) == 0.0);
}

TEST_CASE("poisson expectations factorize exactly") {
  auto pc = CorrelationStructure::poisson_continuous(2.0);
  TestFunction eta = product_test({fejer_factor(1.0), fejer_factor(0.6), fejer_factor(0.3)});
  // lambda^n prod hhat_i(0) with hhat(0) = 1 for every Fejer factor
  CHECK(analytic_expectation(pc, eta) == doctest::Approx(8.0).epsilon(1e-12));

  auto pl = CorrelationStructure::poisson_lattice(0.5, 1.3);
  TestFunction eta1 = product_test({fejer_factor(1.0)});
  // dual sum over 2Z of the unit tent hits only j = 0
  CHECK(analytic_expectation(pl, eta1) == doctest::Approx(1.3).epsilon(1e-10));
  TestFunction eta2 = product_test({fejer_factor(1.0), fejer_factor(0.6)});
  CHECK(analytic_expectation(pl, eta2) == doctest::Approx(1.69).epsilon(1e-10));
}

TEST_CASE("sine continuous expectations: frozen two-level values") {
  auto sc = CorrelationStructure::sine_continuous();
  TestFunction f55 = product_test({fejer_factor(0.5), fejer_factor(0.5)});
  CHECK(analytic_expectation(sc, f55) == doctest::Approx(17.0 / 24.0).epsilon(1e-9));
  TestFunction f535 = product_test({fejer_factor(0.5), fejer_factor(0.35)});
  CHECK(analytic_expectation(sc, f535) == doctest::Approx(0.7582083333333334).epsilon(1e-9));
  // level 1 has unit density regardless of the factor band
  TestFunction f1 = product_test({fejer_factor(0.7)});
  CHECK(analytic_expectation(sc, f1) == doctest::Approx(1.0).epsilon(1e-10));
  TestFunction f4 = product_test({fejer_factor(0.5), fejer_factor(0.5), fejer_factor(0.5),
                                  fejer_factor(0.5)});
  CHECK_THROWS_AS(analytic_expectation(sc, f4), Error);
}

TEST_CASE("sine lattice expectations: frozen dual-route values") {
  auto sl = CorrelationStructure::sine_lattice(0.5);
  TestFunction g1 = product_test({sinc_power_factor(4, 0.6)});
  // only the zero dual frequency lands inside the band: (2/3)/0.6 = 10/9
  CHECK(analytic_expectation(sl, g1) == doctest::Approx(10.0 / 9.0).epsilon(1e-10));

  TestFunction g2 = product_test({sinc_power_factor(4, 0.6), sinc_power_factor(4, 0.35)});
  // frozen against direct lattice enumeration (truncated at |k| <= 800)
  CHECK(analytic_expectation(sl, g2) == doctest::Approx(1.2857445121).epsilon(1e-7));

  auto sl1 = CorrelationStructure::sine_lattice(1.0);
  CHECK(analytic_expectation(sl1, g2) == doctest::Approx(1.0996860345).epsilon(1e-7));

  TestFunction g3 = product_test({sinc_power_factor(4, 0.6), sinc_power_factor(4, 0.35),
                                  sinc_power_factor(4, 0.5)});
  CHECK(analytic_expectation(sl, g3) == doctest::Approx(0.460704811).epsilon(2e-7));

  // level 1 intensity is a per site: same answer as a unit-rate lattice
  // Poisson (the determinantal route needs band-limited factors, so compare
  // on one and pin the Gaussian theta value through the Poisson route alone)
  auto pl = CorrelationStructure::poisson_lattice(0.5, 1.0);
  CHECK(analytic_expectation(sl, g1) ==
        doctest::Approx(analytic_expectation(pl, g1)).epsilon(1e-10));
  TestFunction gauss1 = product_test({gaussian_factor()});
  CHECK_THROWS_AS(analytic_expectation(sl, gauss1), Error);
  // theta-function value of the spacing-1/2 Gaussian lattice sum
  CHECK(analytic_expectation(pl, gauss1) == doctest::Approx(1.0000069746847122).epsilon(1e-9));
}

TEST_CASE("poisson summation check balances both routes") {
  struct Case {
    TestFunction fn;
    const char* name;
  };
  std::vector<Case> battery;
  battery.push_back({product_test({sinc_power_factor(4, 1.0)}), "sinc4"});
  battery.push_back({product_test({sinc_power_factor(3, 1.0)}), "sinc3"});
  battery.push_back({product_test({modulated_sinc4_factor(1.0)}), "mod-sinc4"});
  battery.push_back({product_test({gaussian_factor()}), "gauss"});
  for (const auto& c : battery) {
    for (double a : {0.5, 1.0, 2.0}) {
      CAPTURE(c.name);
      CAPTURE(a);
      auto r = poisson_summation_check(c.fn, a);
      CHECK(r.gap <= 2e-7);
      CHECK(r.gap == doctest::Approx(std::abs(r.lattice_side - r.dual_side)).epsilon(1e-12));
    }
  }
  // Gaussian lattice sums are theta values; pin all three spacings
  auto g = product_test({gaussian_factor()});
  CHECK(poisson_summation_check(g, 0.5).lattice_side ==
        doctest::Approx(1.0000069746847122).epsilon(1e-10));
  CHECK(poisson_summation_check(g, 1.0).lattice_side ==
        doctest::Approx(1.0864348112133081).epsilon(1e-10));
  CHECK(poisson_summation_check(g, 2.0).lattice_side ==
        doctest::Approx(2.0000139493694251).epsilon(1e-10));
}

TEST_CASE("single-factor lattice sums and their stopping rules") {
  // two-bump pair function: position side terminates on an exactly zero tail,
  // dual side is a one-term band sum; both equal 2a by construction
  TestFunction pair_fn = make_h_al(0.4, 1.2);
  const TestFactor& pf = pair_fn.factors[0];
  const double pos = lattice_sum_position(pf, 0.4, 1e-9);
  CHECK(pos == doctest::Approx(2.0).epsilon(1e-10));  // h sums to 2 over its own lattice
  CHECK(lattice_sum_dual(pf, 0.4, 1e-9) == doctest::Approx(0.8).epsilon(1e-12));

  // spacing-1 Fejer(1/2): 1/2 (1 + sum_{odd k} (2/(pi k))^2) = 1 exactly,
  // reached by the slow quadratic-tail ring sum on the position side and by
  // the single in-band dual term on the other
  TestFactor fj = fejer_factor(0.5);
  CHECK(lattice_sum_position(fj, 1.0, 1e-8) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(lattice_sum_dual(fj, 1.0, 1e-8) == doctest::Approx(1.0).epsilon(1e-12));

  // a factor with no usable decay must refuse rather than truncate silently
  TestFactor flat = one_factor();
  bool threw = false;
  try {
    lattice_sum_position(flat, 1.0, 1e-8);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == errc::truncation_failure);
  }
  CHECK(threw);
  CHECK_THROWS_AS(lattice_sum_dual(flat, 1.0, 1e-8), Error);
}

TEST_CASE("windowed expectations agree with direct finite evaluation") {
  // lattice: clipped site enumeration against a hand loop
  auto pl = CorrelationStructure::poisson_lattice(0.5, 1.3);
  TestFunction eta = product_test({fejer_factor(1.0)});
  Window w{-7.7, 7.7};
  double direct = 0.0;
  for (long long k = -15; k <= 15; ++k) {
    const double x = 0.5 * static_cast<double>(k);
    direct += 0.65 * eta.factors[0].value(x);
  }
  CHECK(analytic_expectation_windowed(pl, eta, w) == doctest::Approx(direct).epsilon(1e-12));

  // continuous level 1: clipped integral
  auto sc = CorrelationStructure::sine_continuous();
  TestFunction f1 = product_test({fejer_factor(0.5)});
  double clipped = integrate([&](double x) { return f1.factors[0].value(x); }, -3.0, 3.0,
                             {1e-11, 20000});
  CHECK(analytic_expectation_windowed(sc, f1, {-3.0, 3.0}) ==
        doctest::Approx(clipped).epsilon(1e-7));

  // continuous level 2 against a midpoint Riemann sum
  TestFunction f2 = product_test({fejer_factor(0.5), fejer_factor(0.5)});
  const int grid = 400;
  const double lo = -1.5, hi = 1.5, step = (hi - lo) / grid;
  double riemann = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double x = lo + (i + 0.5) * step, y = lo + (j + 0.5) * step;
      const double s = sinc(x - y);
      riemann += f2.factors[0].value(x) * f2.factors[1].value(y) * (1.0 - s * s);
    }
  riemann *= step * step;
  CHECK(analytic_expectation_windowed(sc, f2, {lo, hi}) ==
        doctest::Approx(riemann).epsilon(5e-3));

  // windowing a nonnegative integrand can only lose mass
  CHECK(analytic_expectation_windowed(sc, f2, {-6.0, 6.0}) <= analytic_expectation(sc, f2) + 1e-9);
}

TEST_CASE("custom atom structures evaluate exactly and custom densities refuse") {
  std::map<std::vector<long long>, double> atoms;
  atoms[{0}] = 0.25;
  atoms[{3}] = 0.5;
  auto ca = CorrelationStructure::custom_atoms_structure(0.5, atoms);
  TestFunction eta = product_test({fejer_factor(0.8)});
  const double expect =
      0.25 * eta.factors[0].value(0.0) + 0.5 * eta.factors[0].value(1.5);
  CHECK(analytic_expectation(ca, eta) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(analytic_expectation_windowed(ca, eta, {-1.0, 1.0}) ==
        doctest::Approx(0.25 * eta.factors[0].value(0.0)).epsilon(1e-13));

  auto cd = CorrelationStructure::custom_density_structure(
      1, [](std::span<const double>) { return 1.0; });
  CHECK_THROWS_AS(analytic_expectation(cd, eta), Error);
  CHECK(analytic_expectation_windowed(cd, eta, {-1.0, 1.0}) ==
        doctest::Approx(integrate([&](double x) { return eta.factors[0].value(x); }, -1.0, 1.0))
            .epsilon(1e-8));
}

TEST_CASE("monte carlo estimator: determinism, SE, and windowed agreement") {
  auto pc = CorrelationStructure::poisson_continuous(2.0);
  Window w{-10.0, 10.0};
  SamplerFn sampler = [w](RngState& rng) { return sample_poisson(2.0, w, rng); };
  TestFunction eta = product_test({fejer_factor(1.0)});

  auto r1 = estimate_expectation(sampler, eta, 2000, 99, 1, w);
  auto r2 = estimate_expectation(sampler, eta, 2000, 99, 1, w);
  CHECK(r1.mean == r2.mean);  // same seed, same replica streams
  CHECK(r1.se > 0.0);
  CHECK(r1.replicas == 2000);

  // thread count must not change the merged result
  auto r4 = estimate_expectation(sampler, eta, 2000, 99, 4, w);
  CHECK(r4.mean == doctest::Approx(r1.mean).epsilon(1e-13));

  const double expect = analytic_expectation_windowed(pc, eta, w);
  CHECK(std::abs(r1.mean - expect) < 4.0 * r1.se);

  // different seed moves the estimate but stays in the band
  auto r3 = estimate_expectation(sampler, eta, 2000, 123, 1, w);
  CHECK(r3.mean != r1.mean);
  CHECK(std::abs(r3.mean - expect) < 4.0 * r3.se);

  CHECK_THROWS_AS(estimate_expectation(sampler, eta, 0, 1, 1, w), Error);
  CHECK_THROWS_AS(estimate_expectation(SamplerFn{}, eta, 10, 1, 1, w), Error);
}

TEST_CASE("monte carlo estimator tracks a two-level lattice expectation") {
  // discrete Poisson lattice, two-level Fejer product; windowed analytic value
  auto pl = CorrelationStructure::poisson_lattice(0.5, 1.0);
  Window w{-8.0, 8.0};
  SamplerFn sampler = [w](RngState& rng) { return sample_discrete_poisson(0.5, 1.0, w, rng); };
  TestFunction eta = product_test({fejer_factor(0.9), fejer_factor(0.6)});
  auto rep = estimate_expectation(sampler, eta, 4000, 7, 0, w);
  const double expect = analytic_expectation_windowed(pl, eta, w);
  CHECK(std::abs(rep.mean - expect) < 4.0 * rep.se);
  // window bias against the full-space value stays below a few percent here
  CHECK(std::abs(analytic_expectation(pl, eta) - expect) < 0.05);
}

TEST_CASE("pair correlation histogram: continuous poisson rate is lambda^2") {
  const double lambda = 1.2;
  Window w{-12.0, 12.0};
  SamplerFn sampler = [&](RngState& rng) { return sample_poisson(lambda, w, rng); };
  PairCorrelationOptions opt;
  opt.replicas = 500;
  opt.seed = 21;
  opt.bin_width = 0.25;
  opt.max_separation = 2.0;
  opt.buffer = 4.0;
  opt.threads = 1;
  auto pc = empirical_pair_correlation(sampler, 0.0, w, opt);
  CHECK(!pc.lattice);
  CHECK(pc.bin_width == doctest::Approx(0.25));
  REQUIRE(pc.separation.size() == 8);
  for (std::size_t b = 0; b < pc.rate.size(); ++b) {
    CAPTURE(b);
    CHECK(pc.se[b] > 0.0);
    CHECK(std::abs(pc.rate[b] - lambda * lambda) < 5.0 * pc.se[b]);
  }
}

TEST_CASE("pair correlation histogram: lattice bins are exact gaps") {
  Window w{-10.0, 10.0};
  SamplerFn sampler = [&](RngState& rng) { return sample_discrete_poisson(0.5, 1.0, w, rng); };
  PairCorrelationOptions opt;
  opt.replicas = 600;
  opt.seed = 4;
  opt.max_separation = 2.0;
  opt.buffer = 3.0;
  opt.threads = 1;
  auto pc = empirical_pair_correlation(sampler, 0.5, w, opt);
  CHECK(pc.lattice);
  CHECK(pc.bin_width == doctest::Approx(0.5));
  REQUIRE(pc.separation.size() >= 3);
  for (std::size_t b = 0; b < pc.separation.size(); ++b) {
    CAPTURE(b);
    CHECK(pc.separation[b] == doctest::Approx(0.5 * static_cast<double>(b + 1)).epsilon(1e-12));
    // independent Poisson multiplicities: ordered-pair atom (a lambda)^2
    CHECK(std::abs(pc.rate[b] - 0.25) < 5.0 * pc.se[b]);
  }
}

TEST_CASE("worker resolution honours explicit counts and the environment") {
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(1) == 1);
  setenv("MIMICRY_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  unsetenv("MIMICRY_THREADS");
  CHECK(resolve_threads(0) >= 1);
}
