#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bandlim {

// Envelope certificate |h(x)| <= constant / (1 + |x|^order).
struct DecayCert {
  double order = 2.0;
  double constant = 0.0;
};

// One-dimensional factor of a product test function. `value` is the position
// side, `transform` the frequency side with convention
//   hhat(xi) = int h(x) e^{-2 pi i x xi} dx.
// `bandwidth` certifies supp(hhat) within [-bandwidth, bandwidth];
// `decay_constant` certifies |h(x)| <= decay_constant / (1 + x^2).
struct TestFactor {
  std::function<double(double)> value;
  std::function<std::complex<double>(double)> transform;
  double bandwidth = std::numeric_limits<double>::infinity();
  double decay_constant = 0.0;
  std::optional<DecayCert> sharp;            // faster position-side envelope, if any
  std::optional<DecayCert> transform_decay;  // frequency-side envelope for unbounded band
  std::string label;
};

struct TestFunction {
  std::vector<TestFactor> factors;

  int dimension() const { return static_cast<int>(factors.size()); }
  double value(std::span<const double> x) const;
  std::complex<double> transform(std::span<const double> xi) const;
  // Smallest b with supp of the full transform within [-b, b]^n.
  double bandwidth() const;
  std::string label() const;
};

TestFunction product_test(std::vector<TestFactor> factors);

// Fejer-type factor h(x) = s sinc(sx)^2 with triangular transform
// (1 - |xi|/s)_+, optionally modulated: h(x) = 2 cos(2 pi c x) s sinc(sx)^2
// with transform (1 - |xi-c|/s)_+ + (1 - |xi+c|/s)_+. Band edge at s + |c|.
TestFactor fejer_factor(double scale, double modulation = 0.0);

// One-dimensional Fejer test function checked against a bandwidth cap;
// BandwidthExceeded if scale + |modulation| > cap.
TestFunction make_fejer(double bandwidth_cap, double scale, double modulation = 0.0);

// Two-bump sinc pair h(x) = sinc(x/a) + sinc((x-ell)/a), ell an odd multiple
// of a (NotOddMultiple otherwise). Vanishes on the spacing-a lattice except
// at 0 and ell where it is 1; transform a(1 + e^{-2 pi i ell xi}) on
// [-1/(2a), 1/(2a)].
TestFunction make_h_al(double a, double ell);

// sinc(sx)^p for p in {3, 4}; transforms are the box*triangle quadratic
// spline (p=3) and the centered cubic B-spline (p=4), rescaled.
TestFactor sinc_power_factor(int power, double scale);

// 2 cos(2 pi c x) sinc(x)^4; transform C4(xi - c) + C4(xi + c).
TestFactor modulated_sinc4_factor(double carrier);

// exp(-pi x^2), self-dual; carries order-8 envelopes on both sides.
TestFactor gaussian_factor();

// Whittaker-Shannon interpolation from samples on the spacing-a lattice:
//   sum_k samples[k] sinc((x - a k)/a).
// All provided samples are used; the caller controls the truncation radius.
double shannon_interpolate(const std::map<long long, double>& samples, double spacing, double x);

}  // namespace bandlim
