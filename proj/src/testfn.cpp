#include "bandlim/testfn.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "bandlim/errors.hpp"
#include "bandlim/sinc.hpp"

namespace bandlim {
namespace {

constexpr double kPi = std::numbers::pi;

double triangle(double xi) { return std::max(0.0, 1.0 - std::abs(xi)); }

// transform of sinc^3: piecewise quadratic supported on [-3/2, 3/2]
double sinc3_spline(double xi) {
  const double t = std::abs(xi);
  if (t <= 0.5) return 0.75 - t * t;
  if (t <= 1.5) {
    const double u = t - 1.5;
    return 0.5 * u * u;
  }
  return 0.0;
}

// transform of sinc^4: centered cubic B-spline supported on [-2, 2]
double sinc4_spline(double xi) {
  const double t = std::abs(xi);
  if (t <= 1.0) return (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0;
  if (t <= 2.0) {
    const double u = 2.0 - t;
    return u * u * u / 6.0;
  }
  return 0.0;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

double TestFunction::value(std::span<const double> x) const {
  if (x.size() != factors.size())
    fail(errc::dimension_mismatch, "point dimension does not match the test function");
  double out = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) out *= factors[i].value(x[i]);
  return out;
}

std::complex<double> TestFunction::transform(std::span<const double> xi) const {
  if (xi.size() != factors.size())
    fail(errc::dimension_mismatch, "frequency dimension does not match the test function");
  std::complex<double> out = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) out *= factors[i].transform(xi[i]);
  return out;
}

double TestFunction::bandwidth() const {
  double b = 0.0;
  for (const auto& f : factors) b = std::max(b, f.bandwidth);
  return b;
}

std::string TestFunction::label() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " * ";
    out += factors[i].label;
  }
  return out;
}

TestFunction product_test(std::vector<TestFactor> factors) {
  if (factors.empty()) fail(errc::invalid_parameters, "a test function needs at least one factor");
  for (const auto& f : factors)
    if (!f.value || !f.transform)
      fail(errc::invalid_parameters, "every factor needs both a value and a transform");
  return TestFunction{std::move(factors)};
}

TestFactor fejer_factor(double scale, double modulation) {
  if (!(scale > 0.0)) fail(errc::invalid_parameters, "fejer scale must be positive");
  const double s = scale;
  const double c = std::abs(modulation);
  TestFactor f;
  if (c == 0.0) {
    f.value = [s](double x) {
      const double v = sinc(s * x);
      return s * v * v;
    };
    f.transform = [s](double xi) { return std::complex<double>(triangle(xi / s), 0.0); };
    f.decay_constant = s + 1.0 / (kPi * kPi * s);
    f.label = "fejer(s=" + short_num(s) + ")";
  } else {
    f.value = [s, c](double x) {
      const double v = sinc(s * x);
      return 2.0 * std::cos(2.0 * kPi * c * x) * s * v * v;
    };
    f.transform = [s, c](double xi) {
      return std::complex<double>(triangle((xi - c) / s) + triangle((xi + c) / s), 0.0);
    };
    f.decay_constant = 2.0 * (s + 1.0 / (kPi * kPi * s));
    f.label = "fejer(s=" + short_num(s) + ",c=" + short_num(c) + ")";
  }
  f.bandwidth = s + c;
  return f;
}

TestFunction make_fejer(double bandwidth_cap, double scale, double modulation) {
  TestFactor f = fejer_factor(scale, modulation);
  if (f.bandwidth > bandwidth_cap)
    fail(errc::bandwidth_exceeded, "fejer band edge " + short_num(f.bandwidth) +
                                       " exceeds the cap " + short_num(bandwidth_cap));
  return product_test({std::move(f)});
}

TestFunction make_h_al(double a, double ell) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  const double q = ell / a;
  const double rounded = std::round(q);
  const long long m = static_cast<long long>(rounded);
  if (std::abs(q - rounded) > 1e-9 || m % 2 == 0)
    fail(errc::not_odd_multiple, "offset must be an odd multiple of the spacing");
  TestFactor f;
  f.value = [a, ell](double x) { return sinc(x / a) + sinc((x - ell) / a); };
  f.transform = [a, ell](double xi) -> std::complex<double> {
    if (std::abs(xi) > 0.5 / a) return 0.0;
    const double phase = -2.0 * kPi * ell * xi;
    return a * (1.0 + std::complex<double>(std::cos(phase), std::sin(phase)));
  };
  f.bandwidth = 0.5 / a;
  // the two sinc tails cancel to first order, leaving quadratic decay
  f.decay_constant = 2.0 * (1.0 + 4.0 * ell * ell);
  f.label = "pair(a=" + short_num(a) + ",l=" + short_num(ell) + ")";
  return product_test({std::move(f)});
}

TestFactor sinc_power_factor(int power, double scale) {
  if (power != 3 && power != 4)
    fail(errc::unsupported_order, "sinc powers 3 and 4 are supported");
  if (!(scale > 0.0)) fail(errc::invalid_parameters, "scale must be positive");
  const double s = scale;
  TestFactor f;
  if (power == 3) {
    f.value = [s](double x) {
      const double v = sinc(s * x);
      return v * v * v;
    };
    f.transform = [s](double xi) { return std::complex<double>(sinc3_spline(xi / s) / s, 0.0); };
    f.bandwidth = 1.5 * s;
    f.sharp = DecayCert{3.0, 1.0 + std::pow(kPi * s, -3.0)};
  } else {
    f.value = [s](double x) {
      const double v = sinc(s * x);
      return v * v * v * v;
    };
    f.transform = [s](double xi) { return std::complex<double>(sinc4_spline(xi / s) / s, 0.0); };
    f.bandwidth = 2.0 * s;
    f.sharp = DecayCert{4.0, 1.0 + std::pow(kPi * s, -4.0)};
  }
  f.decay_constant = 1.0 + std::pow(kPi * s, -2.0);
  f.label = "sinc^" + std::to_string(power) + "(s=" + short_num(s) + ")";
  return f;
}

TestFactor modulated_sinc4_factor(double carrier) {
  if (!(carrier > 0.0)) fail(errc::invalid_parameters, "carrier must be positive");
  const double c = carrier;
  TestFactor f;
  f.value = [c](double x) {
    const double v = sinc(x);
    return 2.0 * std::cos(2.0 * kPi * c * x) * v * v * v * v;
  };
  f.transform = [c](double xi) {
    return std::complex<double>(sinc4_spline(xi - c) + sinc4_spline(xi + c), 0.0);
  };
  f.bandwidth = c + 2.0;
  f.decay_constant = 2.0 * (1.0 + 1.0 / (kPi * kPi));
  f.sharp = DecayCert{4.0, 2.0 * (1.0 + std::pow(kPi, -4.0))};
  f.label = "cos*sinc^4(c=" + short_num(c) + ")";
  return f;
}

TestFactor gaussian_factor() {
  TestFactor f;
  f.value = [](double x) { return std::exp(-kPi * x * x); };
  f.transform = [](double xi) { return std::complex<double>(std::exp(-kPi * xi * xi), 0.0); };
  f.bandwidth = std::numeric_limits<double>::infinity();
  f.decay_constant = 1.0;
  f.sharp = DecayCert{8.0, 1.0};
  f.transform_decay = DecayCert{8.0, 1.0};
  f.label = "gauss";
  return f;
}

double shannon_interpolate(const std::map<long long, double>& samples, double spacing, double x) {
  if (!(spacing > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  double out = 0.0;
  for (const auto& [k, v] : samples) out += v * sinc(x / spacing - static_cast<double>(k));
  return out;
}

}  // namespace bandlim
