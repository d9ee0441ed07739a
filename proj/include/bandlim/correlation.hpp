#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bandlim/configuration.hpp"
#include "bandlim/samplers.hpp"
#include "bandlim/structures.hpp"
#include "bandlim/testfn.hpp"

namespace bandlim {

// Sum of eta over ordered n-tuples of DISTINCT point indices (multiplicities
// count as distinct indices at the same position). Exact set-partition
// expansion; for indicator products this reduces to the falling factorial
// N(N-1)...(N-n+1) of the window count.
double distinct_tuple_statistic(const Configuration& config, const TestFunction& eta);

struct EstimatorReport {
  double mean = 0.0;
  double se = 0.0;
  long long replicas = 0;
  double truncation_bound = 0.0;  // certified window-tail contribution bound
};

// Monte Carlo estimate of E sum_distinct eta across independent replicas,
// replica r drawn from stream (seed, r). Order-independent merge; `threads`
// 0 means automatic (MIMICRY_THREADS env, else hardware).
EstimatorReport estimate_expectation(const SamplerFn& sampler, const TestFunction& eta,
                                     long long replicas, std::uint64_t seed, int threads = 0,
                                     Window window = {0.0, 0.0});

// Expectation int eta d rho_n for the named structures, absolute tolerance
// tol. Band-limited product functions are evaluated through the frequency
// side (finite dual-lattice sums of cycle-factorized compact integrals);
// factors without finite bandwidth need a sharp decay certificate and are
// summed on the position side (TruncationFailure if the certified tail
// cannot reach the tolerance).
double analytic_expectation(const CorrelationStructure& s, const TestFunction& eta,
                            double tol = 1e-8);

// Same restricted to a finite window (lattice sums clipped to window sites;
// continuous integrals clipped to window^n). Used for window-bias accounting.
double analytic_expectation_windowed(const CorrelationStructure& s, const TestFunction& eta,
                                     Window window, double tol = 1e-8);

struct PoissonSummationResult {
  double lattice_side = 0.0;  // a^n sum over (aZ)^n of phi, direct truncated summation
  double dual_side = 0.0;     // sum over (Z/a)^n of phihat
  double gap = 0.0;
};

// Dual-route check of a^n sum_{k in (aZ)^n} phi(k) = sum_{j in (1/a)Z^n} phihat(j).
PoissonSummationResult poisson_summation_check(const TestFunction& phi, double a,
                                               double tol = 1e-8);

// Direct truncated sum over aZ of a single factor (position side), with the
// certified/empirical ring stopping rule described in the README.
double lattice_sum_position(const TestFactor& h, double a, double tol);

// Sum of the factor transform over the dual lattice (1/a)Z: finite when the
// factor is band-limited, ring-summed under the transform certificate
// otherwise.
double lattice_sum_dual(const TestFactor& h, double a, double tol);

struct PairCorrelationOptions {
  long long replicas = 1000;
  std::uint64_t seed = 0;
  double bin_width = 0.0;  // 0: spacing for lattice samplers, 0.05 otherwise
  double max_separation = 5.0;
  double buffer = 10.0;  // strip ignored at each window edge for the left point
  int threads = 0;
};

struct PairCorrelation {
  double bin_width = 0.0;
  bool lattice = false;
  std::vector<double> separation;  // bin centers (lattice: exact gaps)
  std::vector<double> rate;        // ordered-pair rate per site (lattice) or per unit^2 (continuous)
  std::vector<double> se;          // replica-to-replica standard error of the rate
  std::vector<long long> count;    // raw ordered-pair counts
};

// Histogram of ordered-pair separations q - p > 0 with p inside the buffered
// window. Lattice samplers bin at exact multiples of the spacing, so rate[m]
// estimates the 2-level atom at gap m*a; continuous samplers estimate the
// 2-level density near the bin center.
PairCorrelation empirical_pair_correlation(const SamplerFn& sampler, double sampler_spacing,
                                           Window window, const PairCorrelationOptions& opt);

// Worker-count resolution shared by the parallel estimators: explicit value,
// else MIMICRY_THREADS env var, else hardware concurrency.
int resolve_threads(int requested);

}  // namespace bandlim
