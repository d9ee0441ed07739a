#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace bandlim {

struct QuadOptions {
  double abs_tol = 1e-10;
  int max_intervals = 10000;
};

// Adaptive bisection driven by a 15-point Gauss-Kronrod rule (7-point Gauss
// embedded estimate). Throws QuadratureFailure if the interval budget is
// exhausted before the absolute tolerance is met.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 QuadOptions opt = {});

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double lo, double hi, QuadOptions opt = {});

// Iterated adaptive quadrature over an axis-aligned box, dimensions 1..3.
double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const std::array<double, 2>> box, double abs_tol);

std::complex<double> integrate_box_complex(
    const std::function<std::complex<double>(std::span<const double>)>& f,
    std::span<const std::array<double, 2>> box, double abs_tol);

// Integral over the whole line of a decaying oscillatory integrand whose sign
// pattern is tied to a regular grid of nodes x = center + panel * m. Partial
// integrals over symmetric panel spans are accelerated with Wynn's epsilon
// algorithm; SlowConvergence if the accelerated tail estimate stalls above
// the tolerance.
double oscillatory_line_integral(const std::function<double(double)>& f, double center,
                                 double panel, double abs_tol, int max_panels = 4000);

}  // namespace bandlim
