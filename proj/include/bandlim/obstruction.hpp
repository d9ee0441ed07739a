#pragma once

#include <array>
#include <span>
#include <string>

namespace bandlim {

// Cycle overlap integral over E = [-1/2, 1/2]:
//   f_nu(r) = int_{E^nu} prod_j 1{|xi_j - xi_{j+1}| <= r} d xi  (cyclic),
// with f_1 identically 1 and f_nu(r) = 1 for r >= 1. Closed forms for
// nu <= 4 (InvalidR for r <= 0, UnsupportedOrder beyond).
double cycle_integral_closed(int nu, double r);

// Midpoint-grid trace approximation of f_nu(r): counting route for nu <= 4
// (first-order in 1/grid), dense eigendecomposition for nu in 5..8.
double cycle_integral_numeric(int nu, double r, int grid = 4001);

// Cycle index Z(S_n; t_1..t_n) of the symmetric group, exact 64-bit
// coefficient arithmetic (OrderTooLarge past n = 20).
double cycle_index(int n, std::span<const double> t);

enum class PhiRoute { closed, cycle };

// Limit of the n-th factorial moment of the two-window obstruction count for
// the spacing-a determinantal lattice gas, as the window separation grows.
// closed: printed piecewise polynomials, n <= 4. cycle: n <= 8 via
//   (-1)^n n! a^n Z(S_n; -2 f_1(1/2a), ..., -2 f_n(1/2a)),
// closed f_nu for nu <= 4 and numeric beyond.
double phi_limit(int n, double a, PhiRoute route = PhiRoute::closed);

struct MomentVector {
  std::array<double, 5> value{};  // raw moments m^0..m^4 of the limit law
  std::array<bool, 5> valid{};    // whether a lies in the order's valid domain
  int max_order = 4;
  bool override_used = false;
};

// Raw moment limits via the Stirling conversion of the factorial moments:
// m1 = 2a (a > 0); m2, m3 valid for a > 1/2; m4 valid for a > 1.
// DomainViolation if an out-of-domain order is requested without override.
MomentVector raw_moments(double a, int max_order = 4, bool allow_out_of_domain = false);

// det of the 3x3 Hankel matrix [m_{i+j}]_{0<=i,j<=2}; >= 0 is necessary for
// a Hamburger moment sequence. For the limit moments above it equals
// 1/2 - a^2.
double hankel3_det(std::span<const double, 5> m);

enum class ObstructionKind { none, factorial_moment, hankel };

struct ObstructionReport {
  double a = 0.0;
  ObstructionKind kind = ObstructionKind::none;
  double witness = 0.0;
  std::string detail;
};

// a <= 1/2: no obstruction. 1/2 < a <= 1: negative fourth factorial moment
// limit (witness phi_4(a)). a > 1: Hankel determinant violation (witness
// 1/2 - a^2).
ObstructionReport obstruction_report(double a);

}  // namespace bandlim
