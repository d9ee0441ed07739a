#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandlim/correlation.hpp"
#include "bandlim/structures.hpp"
#include "bandlim/testfn.hpp"

namespace bandlim {

enum class Verdict { mimicable, not_mimicable, unknown };

const char* verdict_name(Verdict v);

struct RegionPoint {
  double a = 0.0;
  double bandwidth = 0.0;
  Verdict verdict = Verdict::unknown;
  std::string rule;  // the inequality clause that fired
};

// Classification of (a, B): can the named continuous process be mimicked up
// to bandwidth B by some point process supported on aZ?
//   poisson family: mimicable iff B <= 1/a.
//   sine family:    mimicable if a <= 1 and B <= (1-a)/a;
//                   not mimicable if (a <= 1/2 and B > (1-a)/a)
//                                  or (a > 1/2 and B >= 1/(2a));
//                   unknown in the band (1-a)/a < B < 1/(2a) for a > 1/2.
RegionPoint classify_region(ProcessKind family, double a, double bandwidth);

struct BatteryMember {
  int level = 1;
  TestFunction fn;
};

// Per level: Fejer scales {B, B/2, B/4} plus up to three modulated members
// with carriers from {1/a, 1/a - 1, B/2, 3B/4} (filtered to 0 < c < B,
// tent half-width 2(B-c)/3), each as the level-fold product of one factor.
std::vector<BatteryMember> default_battery(double a, double bandwidth, int levels);

struct McPlan {
  long long replicas = 10000;
  std::uint64_t seed = 0;
  Window window{-20.0, 20.0};
  double delta = 0.1;
  int threads = 0;
};

struct MimicryEntry {
  int level = 0;
  std::string label;
  double value_a = 0.0;
  double value_b = 0.0;
  double discrepancy = 0.0;
  double se = 0.0;         // 0 for analytic comparisons
  double threshold = 0.0;  // analytic tolerance, or 3*SE + window bias
  bool monte_carlo = false;
  bool pass = false;
};

struct MimicryVerdict {
  bool pass = false;
  double bandwidth = 0.0;
  int levels = 0;
  std::vector<MimicryEntry> entries;
  const char* verdict() const { return pass ? "EVIDENCE" : "COUNTEREXAMPLE"; }
};

// Compare E sum_distinct eta between side A (analytic) and side B (analytic,
// or Monte Carlo over the canonical sampler of side B's structure when a
// plan is given) for every battery member with level <= levels and bandwidth
// <= B. Analytic comparisons pass at 1e-7; Monte Carlo at 3*SE plus the
// certified window-truncation term.
MimicryVerdict mimicry_test(const CorrelationStructure& side_a, const CorrelationStructure& side_b,
                            double bandwidth, int levels,
                            const std::vector<BatteryMember>& battery,
                            const std::optional<McPlan>& mc = {});

// Unique lattice correlation atom at k forced by band-limited agreement with
// the given continuous structure above Nyquist (B > 1/(2a), BelowNyquist
// otherwise): int prod_i betahat_eps((x_i - k_i)/a) d rho_n with the plateau
// width rule eps = min(1/4, (aB - 1/2)/2) * (1 - 1e-6) unless overridden.
// Supports the continuous named structures, n <= 3.
double nyquist_reconstruct(const CorrelationStructure& continuous, double a,
                           std::span<const double> k, double bandwidth,
                           std::optional<double> eps_override = {});

// Sinc-sampled measure int prod_i sinc((x_i - k_i)/a) d rho_n for the
// continuous named structures, n <= 2, via oscillatory panel summation with
// convergence acceleration (tolerance tol).
double sinc_interpolate_measure(const CorrelationStructure& continuous, double a,
                                std::span<const double> k, double tol = 1e-5);

// Atom mass of a lattice structure at an arbitrary tuple: 0 off the support
// lattice instead of the OffLattice error raised by correlation_value.
double lattice_atom(const CorrelationStructure& lattice, std::span<const double> k);

}  // namespace bandlim
