#include "bandlim/bump.hpp"

#include <cmath>
#include <numbers>

#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/sinc.hpp"

namespace bandlim {
namespace {

double half_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

BumpFamily::BumpFamily(double eps) : eps_(eps) {
  if (!(eps > 0.0) || eps > 0.25)
    fail(errc::invalid_epsilon, "transition half-width must lie in (0, 1/4]");
}

// Smooth ramp with transition(t) + transition(1 - t) = 1 exactly.
double BumpFamily::transition(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double g = half_exp(t);
  return g / (g + half_exp(1.0 - t));
}

double BumpFamily::value(double xi) const {
  return transition((0.5 + eps_ - std::abs(xi)) / (2.0 * eps_));
}

double BumpFamily::transform(double x) const {
  // inverse transform of an even real profile: 2 * integral_0^inf value * cos
  const double flat = 0.5 - eps_;
  const double core = flat * sinc(2.0 * flat * x);
  QuadOptions opt;
  opt.abs_tol = 1e-12;
  const double ramp = integrate(
      [&](double xi) { return value(xi) * std::cos(2.0 * std::numbers::pi * x * xi); },
      flat, 0.5 + eps_, opt);
  return 2.0 * (core + ramp);
}

}  // namespace bandlim
