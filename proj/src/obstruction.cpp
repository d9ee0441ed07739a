#include "bandlim/obstruction.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "bandlim/errors.hpp"

namespace bandlim {

double cycle_integral_closed(int nu, double r) {
  if (!(r > 0.0)) fail(errc::invalid_r, "overlap radius must be positive");
  if (nu < 1 || nu > 4)
    fail(errc::unsupported_order, "closed overlap integrals cover cycle lengths 1..4");
  if (nu == 1 || r >= 1.0) return 1.0;
  switch (nu) {
    case 2:
      return 2.0 * r - r * r;
    case 3:
      return 3.0 * r * r - 2.0 * r * r * r;
    default: {
      const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;
      if (r < 0.5) return (16.0 * r3 - 14.0 * r4) / 3.0;
      return (1.0 - 8.0 * r + 24.0 * r2 - 16.0 * r3 + 2.0 * r4) / 3.0;
    }
  }
}

namespace {

// closed interval of grid indices j with |j - i| <= w and 0 <= j < m
inline long long row_count(long long i, long long w, long long m) {
  const long long lo = std::max<long long>(0, i - w);
  const long long hi = std::min<long long>(m - 1, i + w);
  return hi - lo + 1;
}

inline long long overlap_count(long long i, long long k, long long w, long long m) {
  const long long lo = std::max({static_cast<long long>(0), i - w, k - w});
  const long long hi = std::min({m - 1, i + w, k + w});
  return hi >= lo ? hi - lo + 1 : 0;
}

}  // namespace

double cycle_integral_numeric(int nu, double r, int grid) {
  if (!(r > 0.0)) fail(errc::invalid_r, "overlap radius must be positive");
  if (nu < 1 || nu > 8)
    fail(errc::unsupported_order, "numeric overlap integrals cover cycle lengths 1..8");
  if (grid < 8) fail(errc::invalid_parameters, "grid must have at least 8 cells");
  if (nu == 1) return 1.0;
  if (r >= 1.0) return 1.0;

  const long long m = grid;
  const long long w = static_cast<long long>(std::floor(r * static_cast<double>(m) + 1e-9));
  const double scale = static_cast<double>(m);

  if (nu == 2) {
    double trace = 0.0;
    for (long long i = 0; i < m; ++i) trace += static_cast<double>(row_count(i, w, m));
    return trace / (scale * scale);
  }
  if (nu == 3) {
    double trace = 0.0;
    for (long long i = 0; i < m; ++i) {
      const long long klo = std::max<long long>(0, i - w);
      const long long khi = std::min<long long>(m - 1, i + w);
      for (long long k = klo; k <= khi; ++k)
        trace += static_cast<double>(overlap_count(i, k, w, m));
    }
    return trace / (scale * scale * scale);
  }
  if (nu == 4) {
    // trace(A^4) = sum_{i,k} (A^2)_{ik}^2 with (A^2)_{ik} = overlap(i, k)
    double trace = 0.0;
    for (long long i = 0; i < m; ++i) {
      const long long klo = std::max<long long>(0, i - 2 * w);
      const long long khi = std::min<long long>(m - 1, i + 2 * w);
      for (long long k = klo; k <= khi; ++k) {
        const double o = static_cast<double>(overlap_count(i, k, w, m));
        trace += o * o;
      }
    }
    return trace / (scale * scale * scale * scale);
  }

  // dense spectral route for the longer cycles
  if (grid > 3000)
    fail(errc::invalid_parameters, "spectral route is limited to grids of at most 3000 cells");
  Eigen::MatrixXd A(grid, grid);
  for (long long i = 0; i < m; ++i)
    for (long long j = 0; j < m; ++j)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::llabs(i - j) <= w ? 1.0 : 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) fail(errc::quadrature_failure, "eigendecomposition failed");
  double trace = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    trace += std::pow(es.eigenvalues()[i] / scale, nu);
  return trace;
}

double cycle_index(int n, std::span<const double> t) {
  if (n < 0) fail(errc::invalid_parameters, "order must be nonnegative");
  if (n > 20) fail(errc::order_too_large, "exact coefficients overflow past order 20");
  if (static_cast<int>(t.size()) < n)
    fail(errc::dimension_mismatch, "need one indeterminate per cycle length");
  if (n == 0) return 1.0;

  __int128 nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;

  double total = 0.0;
  // enumerate partitions of n as multiplicity vectors over cycle lengths
  std::vector<int> mult(static_cast<std::size_t>(n + 1), 0);
  auto recurse = [&](auto&& self, int remaining, int largest) -> void {
    if (remaining == 0) {
      __int128 den = 1;
      double tprod = 1.0;
      for (int len = 1; len <= n; ++len) {
        const int ml = mult[static_cast<std::size_t>(len)];
        for (int j = 0; j < ml; ++j) {
          den *= len;
          den *= (j + 1);
          tprod *= t[static_cast<std::size_t>(len - 1)];
        }
      }
      const double coeff = static_cast<double>(nfact / den);
      total += coeff * tprod;
      return;
    }
    for (int len = std::min(remaining, largest); len >= 1; --len) {
      ++mult[static_cast<std::size_t>(len)];
      self(self, remaining - len, len);
      --mult[static_cast<std::size_t>(len)];
    }
  };
  recurse(recurse, n, n);
  return total / static_cast<double>(nfact);
}

namespace {

double phi_closed(int n, double a) {
  switch (n) {
    case 1:
      return 2.0 * a;
    case 2:
      return a <= 0.5 ? 2.0 * a * a : 0.5 - 2.0 * a + 4.0 * a * a;
    case 3: {
      if (a <= 0.5) return 0.0;
      const double u = 2.0 * a - 1.0;
      return u * u * u;
    }
    case 4: {
      if (a <= 0.5) return 0.0;
      if (a <= 1.0) {
        const double u = a - 0.5;
        return u * u * (1.0 - 20.0 * a + 12.0 * a * a);
      }
      const double a2 = a * a;
      return 17.0 / 4.0 - 22.0 * a + 48.0 * a2 - 48.0 * a2 * a + 16.0 * a2 * a2;
    }
    default:
      fail(errc::unsupported_order, "closed factorial moment limits cover orders 1..4");
  }
}

}  // namespace

double phi_limit(int n, double a, PhiRoute route) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (n < 1) fail(errc::invalid_parameters, "order must be at least 1");
  if (route == PhiRoute::closed) return phi_closed(n, a);
  if (n > 8) fail(errc::unsupported_order, "the cycle route covers orders 1..8");
  const double r = 0.5 / a;
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int nu = 1; nu <= n; ++nu) {
    // spectral fallback beyond the counting orders; kept small, the route is
    // first-order in the grid either way
    const double f = nu <= 4 ? cycle_integral_closed(nu, r) : cycle_integral_numeric(nu, r, 1200);
    t[static_cast<std::size_t>(nu - 1)] = -2.0 * f;
  }
  double sign = (n % 2 == 0) ? 1.0 : -1.0;
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  return sign * nfact * std::pow(a, n) * cycle_index(n, t);
}

MomentVector raw_moments(double a, int max_order, bool allow_out_of_domain) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (max_order < 0 || max_order > 4)
    fail(errc::unsupported_order, "raw moment limits cover orders 0..4");
  MomentVector mv;
  mv.max_order = max_order;
  const double p1 = phi_closed(1, a);
  const double p2 = phi_closed(2, a);
  const double p3 = phi_closed(3, a);
  const double p4 = phi_closed(4, a);
  mv.value = {1.0, p1, p2 + p1, p3 + 3.0 * p2 + p1, p4 + 6.0 * p3 + 7.0 * p2 + p1};
  mv.valid = {true, true, a > 0.5, a > 0.5, a > 1.0};
  for (int k = 0; k <= max_order; ++k) {
    if (!mv.valid[static_cast<std::size_t>(k)]) {
      if (!allow_out_of_domain)
        fail(errc::domain_violation,
             "moment order " + std::to_string(k) + " has no limit at this spacing");
      mv.override_used = true;
    }
  }
  return mv;
}

double hankel3_det(std::span<const double, 5> m) {
  const double a = m[0], b = m[1], c = m[2], d = m[3], e = m[4];
  return a * (c * e - d * d) - b * (b * e - d * c) + c * (b * d - c * c);
}

ObstructionReport obstruction_report(double a) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  ObstructionReport rep;
  rep.a = a;
  if (a <= 0.5) {
    rep.kind = ObstructionKind::none;
    rep.witness = 0.0;
    rep.detail = "factorial moment limits stay nonnegative; no contradiction at this spacing";
    return rep;
  }
  if (a <= 1.0) {
    rep.kind = ObstructionKind::factorial_moment;
    rep.witness = phi_closed(4, a);
    rep.detail = "fourth factorial moment limit is negative, impossible for a point count";
    return rep;
  }
  const MomentVector mv = raw_moments(a, 4, false);
  rep.kind = ObstructionKind::hankel;
  rep.witness = hankel3_det(std::span<const double, 5>(mv.value));
  rep.detail = "limit moments fail the order-3 Hankel positivity a moment sequence requires";
  return rep;
}

}  // namespace bandlim
