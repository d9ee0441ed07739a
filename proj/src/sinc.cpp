#include "bandlim/sinc.hpp"

#include <cmath>
#include <numbers>

#include "bandlim/errors.hpp"

namespace bandlim {

double sinc(double x) {
  const double ax = std::abs(x);
  const double t = std::numbers::pi * ax;
  if (ax < 1e-4) {
    // degree-6 Taylor keeps full double accuracy through the crossover
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
  }
  return std::sin(t) / t;
}

double sine_det(std::span<const double> points) {
  const std::size_t n = points.size();
  if (n == 0) fail(errc::dimension_mismatch, "sine_det needs at least one point");
  if (n == 1) return 1.0;

  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = sinc(points[i] - points[j]);

  // LU with partial pivoting
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

}  // namespace bandlim
