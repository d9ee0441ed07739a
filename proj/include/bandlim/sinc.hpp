#pragma once

#include <span>
#include <vector>

namespace bandlim {

// Normalized cardinal sine, sin(pi x)/(pi x), with sinc(0) = 1.
// Even in x; zero at every nonzero integer.
double sinc(double x);

// Determinant of the n x n matrix [sinc(x_i - x_j)].
// The kernel is a positive contraction, so the value lies in [0, 1];
// it is 1 for a single point and 0 whenever two points coincide.
double sine_det(std::span<const double> points);

}  // namespace bandlim
