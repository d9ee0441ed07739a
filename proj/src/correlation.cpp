#include "bandlim/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/sinc.hpp"

namespace bandlim {
namespace {

using cd = std::complex<double>;

constexpr long long kRingCap = 20000000;  // hard ceiling on one-sided ring count
constexpr int kStallWindow = 64;          // rings inspected by the empirical stop
constexpr double kStallShare = 1e-3;      // share of tol the stalled window may hold

double mobius_block(int size) {
  double f = 1.0;
  for (int i = 1; i < size; ++i) f *= -static_cast<double>(i);
  return f;  // (-1)^(size-1) (size-1)!
}

}  // namespace

double distinct_tuple_statistic(const Configuration& config, const TestFunction& eta) {
  const int n = eta.dimension();
  if (n < 1 || n > 10)
    fail(errc::unsupported_order, "distinct-tuple statistics support levels 1..10");
  const std::size_t sites = config.positions.size();
  const unsigned full = (1u << n);

  // T[mask] = sum over sites of multiplicity * prod_{s in mask} h_s(site)
  std::vector<double> block_sum(full, 0.0);
  std::vector<double> prod(full);
  for (std::size_t i = 0; i < sites; ++i) {
    const double x = config.positions[i];
    const double c = static_cast<double>(config.multiplicities[i]);
    prod[0] = 1.0;
    for (unsigned mask = 1; mask < full; ++mask) {
      const unsigned low = mask & (~mask + 1u);
      const int s = std::countr_zero(low);
      prod[mask] = prod[mask ^ low] * eta.factors[static_cast<std::size_t>(s)].value(x);
    }
    for (unsigned mask = 1; mask < full; ++mask) block_sum[mask] += c * prod[mask];
  }

  // Moebius sum over set partitions, enumerated as restricted growth strings.
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  while (true) {
    int blocks = 0;
    for (int s = 0; s < n; ++s) blocks = std::max(blocks, assign[static_cast<std::size_t>(s)] + 1);
    double term = 1.0;
    for (int b = 0; b < blocks && term != 0.0; ++b) {
      unsigned mask = 0;
      int size = 0;
      for (int s = 0; s < n; ++s)
        if (assign[static_cast<std::size_t>(s)] == b) {
          mask |= (1u << s);
          ++size;
        }
      term *= mobius_block(size) * block_sum[mask];
    }
    total += term;

    // advance the restricted growth string: bump the rightmost digit that
    // stays within one past the running maximum to its left, zero the rest
    bool advanced = false;
    for (int p = n - 1; p >= 1; --p) {
      int cap = 0;
      for (int s = 0; s < p; ++s) cap = std::max(cap, assign[static_cast<std::size_t>(s)]);
      if (assign[static_cast<std::size_t>(p)] <= cap) {
        ++assign[static_cast<std::size_t>(p)];
        for (int q = p + 1; q < n; ++q) assign[static_cast<std::size_t>(q)] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return total;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MIMICRY_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

Configuration clip_to_window(const Configuration& cfg, Window w) {
  Configuration out;
  out.window = w;
  out.spacing = cfg.spacing;
  for (std::size_t i = 0; i < cfg.positions.size(); ++i)
    if (w.contains(cfg.positions[i])) {
      out.positions.push_back(cfg.positions[i]);
      out.multiplicities.push_back(cfg.multiplicities[i]);
    }
  return out;
}

}  // namespace

EstimatorReport estimate_expectation(const SamplerFn& sampler, const TestFunction& eta,
                                     long long replicas, std::uint64_t seed, int threads,
                                     Window window) {
  if (replicas < 1) fail(errc::invalid_parameters, "at least one replica is required");
  if (!sampler) fail(errc::invalid_parameters, "a sampler is required");
  const bool clip = window.length() > 0.0;
  std::vector<double> values(static_cast<std::size_t>(replicas));
  const int nw = static_cast<int>(std::min<long long>(resolve_threads(threads), replicas));

  auto run_range = [&](long long lo, long long hi) {
    for (long long r = lo; r < hi; ++r) {
      RngState rng(seed, static_cast<std::uint64_t>(r));
      Configuration cfg = sampler(rng);
      if (clip) cfg = clip_to_window(cfg, window);
      values[static_cast<std::size_t>(r)] = distinct_tuple_statistic(cfg, eta);
    }
  };

  if (nw <= 1) {
    run_range(0, replicas);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (replicas + nw - 1) / nw;
    for (int t = 0; t < nw; ++t) {
      const long long lo = t * chunk;
      const long long hi = std::min<long long>(replicas, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(replicas);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  double se = 0.0;
  if (replicas > 1) se = std::sqrt(var / static_cast<double>(replicas - 1) /
                                   static_cast<double>(replicas));
  return {mean, se, replicas, 0.0};
}

namespace {

struct RingCert {
  double order = 0.0;
  double constant = 0.0;
  bool usable() const { return constant > 0.0 && order > 1.0; }
  // bound on sum_{|k| > m*step, k in step*Z} constant / (1 + |k|^order)
  double tail(double step, long long m) const {
    return 2.0 * constant * std::pow(step, -order) *
           std::pow(static_cast<double>(m), 1.0 - order) / (order - 1.0);
  }
};

// Shared ring-summation driver over step*Z for a pointwise term.
double ring_sum(const std::function<double(double)>& term, double step, double tol, RingCert cert,
                const char* what) {
  double sum = term(0.0);
  double stall[kStallWindow] = {};
  double stall_total = 0.0;
  int stall_pos = 0;
  int stall_fill = 0;
  for (long long m = 1; m <= kRingCap; ++m) {
    const double x = step * static_cast<double>(m);
    const double ring = term(x) + term(-x);
    sum += ring;
    stall_total -= stall[stall_pos];
    stall[stall_pos] = std::abs(ring);
    stall_total += stall[stall_pos];
    stall_pos = (stall_pos + 1) % kStallWindow;
    if (stall_fill < kStallWindow) ++stall_fill;
    if (cert.usable() && cert.tail(step, m) < tol) return sum;
    if (stall_fill == kStallWindow && stall_total < tol * kStallShare) return sum;
  }
  fail(errc::truncation_failure, std::string("ring summation did not settle: ") + what);
}

}  // namespace

double lattice_sum_position(const TestFactor& h, double a, double tol) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(tol > 0.0)) fail(errc::invalid_parameters, "tolerance must be positive");
  RingCert cert;
  if (h.sharp && h.sharp->constant > 0.0 && h.sharp->order > 1.0)
    cert = {h.sharp->order, h.sharp->constant};
  else if (h.decay_constant > 0.0)
    cert = {2.0, h.decay_constant};
  return ring_sum([&](double x) { return h.value(x); }, a, tol, cert,
                  "position side needs a decay certificate or a vanishing tail");
}

double lattice_sum_dual(const TestFactor& h, double a, double tol) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(tol > 0.0)) fail(errc::invalid_parameters, "tolerance must be positive");
  const double step = 1.0 / a;
  if (std::isfinite(h.bandwidth)) {
    const long long mmax = static_cast<long long>(std::floor(a * h.bandwidth + 1e-9));
    double sum = h.transform(0.0).real();
    for (long long m = 1; m <= mmax; ++m) {
      const double j = step * static_cast<double>(m);
      sum += (h.transform(j) + h.transform(-j)).real();
    }
    return sum;
  }
  if (!h.transform_decay || !(h.transform_decay->constant > 0.0) || !(h.transform_decay->order > 1.0))
    fail(errc::truncation_failure,
         "unbounded-band factor carries no frequency-side decay certificate");
  RingCert cert{h.transform_decay->order, h.transform_decay->constant};
  return ring_sum([&](double xi) { return h.transform(xi).real(); }, step, tol, cert,
                  "frequency side certificate too weak for the tolerance");
}

PoissonSummationResult poisson_summation_check(const TestFunction& phi, double a, double tol) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  const int n = phi.dimension();
  const double ftol = 0.05 * tol / static_cast<double>(n);
  double lattice = 1.0, dual = 1.0;
  for (const auto& f : phi.factors) {
    lattice *= a * lattice_sum_position(f, a, ftol);
    dual *= lattice_sum_dual(f, a, ftol);
  }
  return {lattice, dual, std::abs(lattice - dual)};
}

namespace {

// ---- frequency route for determinantal structures ----

// Transform of one permutation cycle (c_1 .. c_nu) of factor indices at
// frequency shift y: for nu = 1 just hhat_{c_1}(y_{c_1}); for nu >= 2 the
// (nu-1)-fold integral over shifts u_2..u_nu of
//   prod_{m>=2} hhat_{c_m}(y_{c_m} - u_m) * hhat_{c_1}(y_{c_1} + sum u_m)
// against the overlap density (1 - (max P - min P))_+ built from the partial
// sums P_1 = 0, P_m = u_2 + ... + u_m.
cd cycle_transform(const TestFunction& eta, const std::vector<int>& cyc, std::span<const double> y,
                   double tol) {
  const int nu = static_cast<int>(cyc.size());
  const auto& fs = eta.factors;
  if (nu == 1) return fs[static_cast<std::size_t>(cyc[0])].transform(y[static_cast<std::size_t>(cyc[0])]);
  if (nu > 4) fail(errc::unsupported_order, "cycle transforms support cycle lengths 1..4");

  std::vector<std::array<double, 2>> box(static_cast<std::size_t>(nu - 1));
  for (int m = 1; m < nu; ++m) {
    double lo = -1.0, hi = 1.0;
    const auto& f = fs[static_cast<std::size_t>(cyc[static_cast<std::size_t>(m)])];
    const double shift = y[static_cast<std::size_t>(cyc[static_cast<std::size_t>(m)])];
    if (std::isfinite(f.bandwidth)) {
      lo = std::max(lo, shift - f.bandwidth);
      hi = std::min(hi, shift + f.bandwidth);
    }
    if (!(lo < hi)) return 0.0;
    box[static_cast<std::size_t>(m - 1)] = {lo, hi};
  }

  auto integrand = [&](std::span<const double> u) -> cd {
    double p = 0.0, pmax = 0.0, pmin = 0.0;
    cd prod = 1.0;
    for (int m = 1; m < nu; ++m) {
      const double um = u[static_cast<std::size_t>(m - 1)];
      p += um;
      pmax = std::max(pmax, p);
      pmin = std::min(pmin, p);
      const int c = cyc[static_cast<std::size_t>(m)];
      prod *= fs[static_cast<std::size_t>(c)].transform(y[static_cast<std::size_t>(c)] - um);
    }
    const double w = 1.0 - (pmax - pmin);
    if (w <= 0.0) return cd(0.0, 0.0);
    const int c0 = cyc[0];
    prod *= fs[static_cast<std::size_t>(c0)].transform(y[static_cast<std::size_t>(c0)] + p);
    return prod * w;
  };
  return integrate_box_complex(integrand, box, tol);
}

// Transform of det[sinc(x_i - x_j)] prod_i h_i(x_i) at frequency y, by cycle
// factorization over the symmetric group; sign (-1)^(n - #cycles).
cd determinant_transform(const TestFunction& eta, std::span<const double> y, double tol) {
  const int n = eta.dimension();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  cd total(0.0, 0.0);
  do {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    cd term(1.0, 0.0);
    int ncyc = 0;
    for (int s = 0; s < n; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::vector<int> cyc;
      int cur = s;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = 1;
        cyc.push_back(cur);
        cur = perm[static_cast<std::size_t>(cur)];
      }
      ++ncyc;
      if (term != cd(0.0, 0.0)) term *= cycle_transform(eta, cyc, y, tol);
    }
    total += (((n - ncyc) % 2 != 0) ? -1.0 : 1.0) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

long long factorial_ll(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_band_limited(const TestFunction& eta, const char* route) {
  for (const auto& f : eta.factors)
    if (!std::isfinite(f.bandwidth))
      fail(errc::truncation_failure,
           std::string(route) + " requires every factor to be band-limited");
}

double sine_continuous_expectation(const TestFunction& eta, double tol) {
  const int n = eta.dimension();
  if (n > 3) fail(errc::unsupported_order, "determinantal route supports levels 1..3");
  const double itol = std::max(1e-12, tol / static_cast<double>(factorial_ll(n) + 1));
  std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
  return determinant_transform(eta, zero, itol).real();
}

double sine_lattice_expectation(const CorrelationStructure& s, const TestFunction& eta,
                                double tol) {
  const int n = eta.dimension();
  if (n > 3) fail(errc::unsupported_order, "determinantal route supports levels 1..3");
  require_band_limited(eta, "the lattice determinantal route");
  const double a = s.spacing;
  std::vector<long long> mmax(static_cast<std::size_t>(n));
  long long tuples = 1;
  for (int i = 0; i < n; ++i) {
    // the cycle shifts spread each coordinate's support by at most 1
    mmax[static_cast<std::size_t>(i)] =
        static_cast<long long>(std::floor(a * (eta.factors[static_cast<std::size_t>(i)].bandwidth + 1.0) + 1e-9));
    tuples *= 2 * mmax[static_cast<std::size_t>(i)] + 1;
  }
  const double itol =
      std::max(1e-13, tol / (static_cast<double>(tuples) *
                             static_cast<double>(factorial_ll(n)) * 2.0));
  std::vector<long long> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = -mmax[static_cast<std::size_t>(i)];
  std::vector<double> y(static_cast<std::size_t>(n));
  cd total(0.0, 0.0);
  while (true) {
    for (int i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] = static_cast<double>(m[static_cast<std::size_t>(i)]) / a;
    total += determinant_transform(eta, y, itol);
    int i = 0;
    for (; i < n; ++i) {
      if (m[static_cast<std::size_t>(i)] < mmax[static_cast<std::size_t>(i)]) {
        ++m[static_cast<std::size_t>(i)];
        break;
      }
      m[static_cast<std::size_t>(i)] = -mmax[static_cast<std::size_t>(i)];
    }
    if (i == n) break;
  }
  return total.real();
}

double poisson_lattice_factor_sum(const TestFactor& f, double a, double tol) {
  // prefer the finite (or certified) frequency side, fall back to positions
  if (std::isfinite(f.bandwidth) || f.transform_decay) return lattice_sum_dual(f, a, tol) / a;
  return lattice_sum_position(f, a, tol);
}

}  // namespace

double analytic_expectation(const CorrelationStructure& s, const TestFunction& eta, double tol) {
  if (!(tol > 0.0)) fail(errc::invalid_parameters, "tolerance must be positive");
  const int n = eta.dimension();
  switch (s.kind) {
    case ProcessKind::poisson_continuous: {
      double out = 1.0;
      for (const auto& f : eta.factors) out *= s.lambda * f.transform(0.0).real();
      return out;
    }
    case ProcessKind::sine_continuous:
      return sine_continuous_expectation(eta, tol);
    case ProcessKind::poisson_lattice: {
      const double ftol = 0.1 * tol / static_cast<double>(n);
      double out = 1.0;
      for (const auto& f : eta.factors)
        out *= s.spacing * s.lambda * poisson_lattice_factor_sum(f, s.spacing, ftol);
      return out;
    }
    case ProcessKind::sine_lattice:
      return sine_lattice_expectation(s, eta, tol);
    case ProcessKind::custom_atoms: {
      if (n != s.custom_dimension)
        fail(errc::dimension_mismatch, "test level does not match the atom dimension");
      double out = 0.0;
      std::vector<double> x(static_cast<std::size_t>(n));
      for (const auto& [idx, mass] : s.atoms) {
        for (int i = 0; i < n; ++i)
          x[static_cast<std::size_t>(i)] = s.spacing * static_cast<double>(idx[static_cast<std::size_t>(i)]);
        out += mass * eta.value(x);
      }
      return out;
    }
    case ProcessKind::custom_density:
      fail(errc::truncation_failure,
           "custom densities carry no tail certificate; use the windowed evaluator");
  }
  fail(errc::invalid_parameters, "unknown structure kind");
}

namespace {

std::vector<double> window_lattice_sites(double a, Window w) {
  std::vector<double> sites;
  const long long lo = static_cast<long long>(std::ceil(w.lo / a - 1e-12));
  const long long hi = static_cast<long long>(std::floor(w.hi / a + 1e-12));
  for (long long i = lo; i <= hi; ++i) sites.push_back(a * static_cast<double>(i));
  return sites;
}

double windowed_lattice_tuple_sum(const CorrelationStructure& s, const TestFunction& eta,
                                  Window w) {
  const int n = eta.dimension();
  const std::vector<double> sites = window_lattice_sites(s.spacing, w);
  const std::size_t ns = sites.size();
  double tuples = std::pow(static_cast<double>(ns), n);
  if (tuples > 5e7) fail(errc::window_too_large, "lattice tuple enumeration over the window is too large");
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n));
  double out = 0.0;
  if (ns == 0) return 0.0;
  while (true) {
    double hv = 1.0;
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = sites[idx[static_cast<std::size_t>(i)]];
      hv *= eta.factors[static_cast<std::size_t>(i)].value(x[static_cast<std::size_t>(i)]);
    }
    if (hv != 0.0) out += correlation_value(s, x) * hv;
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[static_cast<std::size_t>(i)] < ns) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
    if (i == n) break;
  }
  return out;
}

double windowed_continuous_integral(const CorrelationStructure& s, const TestFunction& eta,
                                    Window w, double tol) {
  const int n = eta.dimension();
  if (n > 3) fail(errc::unsupported_order, "windowed continuous integrals support levels 1..3");
  std::vector<std::array<double, 2>> box(static_cast<std::size_t>(n), {w.lo, w.hi});
  auto f = [&](std::span<const double> x) -> double {
    double hv = 1.0;
    for (int i = 0; i < n; ++i)
      hv *= eta.factors[static_cast<std::size_t>(i)].value(x[static_cast<std::size_t>(i)]);
    if (hv == 0.0) return 0.0;
    return correlation_value(s, x) * hv;
  };
  return integrate_box(f, box, tol);
}

}  // namespace

double analytic_expectation_windowed(const CorrelationStructure& s, const TestFunction& eta,
                                     Window window, double tol) {
  if (!(window.length() > 0.0)) fail(errc::invalid_parameters, "window must have positive length");
  if (!(tol > 0.0)) fail(errc::invalid_parameters, "tolerance must be positive");
  const int n = eta.dimension();
  switch (s.kind) {
    case ProcessKind::poisson_continuous: {
      double out = 1.0;
      QuadOptions opt;
      opt.abs_tol = 0.5 * tol / static_cast<double>(n);
      for (const auto& f : eta.factors)
        out *= s.lambda * integrate(f.value, window.lo, window.hi, opt);
      return out;
    }
    case ProcessKind::poisson_lattice: {
      double out = 1.0;
      for (const auto& f : eta.factors) {
        double sum = 0.0;
        for (double site : window_lattice_sites(s.spacing, window)) sum += f.value(site);
        out *= s.spacing * s.lambda * sum;
      }
      return out;
    }
    case ProcessKind::sine_continuous:
    case ProcessKind::custom_density:
      return windowed_continuous_integral(s, eta, window, tol);
    case ProcessKind::sine_lattice:
      return windowed_lattice_tuple_sum(s, eta, window);
    case ProcessKind::custom_atoms: {
      if (n != s.custom_dimension)
        fail(errc::dimension_mismatch, "test level does not match the atom dimension");
      double out = 0.0;
      std::vector<double> x(static_cast<std::size_t>(n));
      for (const auto& [idx, mass] : s.atoms) {
        bool inside = true;
        for (int i = 0; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = s.spacing * static_cast<double>(idx[static_cast<std::size_t>(i)]);
          inside = inside && window.contains(x[static_cast<std::size_t>(i)]);
        }
        if (inside) out += mass * eta.value(x);
      }
      return out;
    }
  }
  fail(errc::invalid_parameters, "unknown structure kind");
}

PairCorrelation empirical_pair_correlation(const SamplerFn& sampler, double sampler_spacing,
                                           Window window, const PairCorrelationOptions& opt) {
  if (!sampler) fail(errc::invalid_parameters, "a sampler is required");
  if (opt.replicas < 1) fail(errc::invalid_parameters, "at least one replica is required");
  if (!(opt.max_separation > 0.0))
    fail(errc::invalid_parameters, "max separation must be positive");
  const bool lattice = sampler_spacing > 0.0;
  const double bin = opt.bin_width > 0.0 ? opt.bin_width : (lattice ? sampler_spacing : 0.05);
  const Window inner{window.lo + opt.buffer, window.hi - opt.buffer};
  if (!(inner.length() > 0.0))
    fail(errc::invalid_parameters, "buffer strips leave no interior window");

  int nbins;
  if (lattice)
    nbins = static_cast<int>(std::floor(opt.max_separation / bin + 1e-9));
  else
    nbins = static_cast<int>(std::ceil(opt.max_separation / bin - 1e-9));
  if (nbins < 1) fail(errc::invalid_parameters, "no bins below the separation cap");

  const long long R = opt.replicas;
  std::vector<long long> counts(static_cast<std::size_t>(nbins) * static_cast<std::size_t>(R), 0);

  auto run_range = [&](long long lo, long long hi) {
    for (long long r = lo; r < hi; ++r) {
      RngState rng(opt.seed, static_cast<std::uint64_t>(r));
      const Configuration cfg = sampler(rng);
      long long* row = counts.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(nbins);
      const std::size_t ns = cfg.positions.size();
      for (std::size_t i = 0; i < ns; ++i) {
        const double p = cfg.positions[i];
        if (!inner.contains(p)) continue;
        for (std::size_t j = i + 1; j < ns; ++j) {
          const double gap = cfg.positions[j] - p;
          if (gap > opt.max_separation + 1e-9) break;
          int b;
          if (lattice) {
            const double q = gap / bin;
            b = static_cast<int>(std::llround(q)) - 1;
            if (std::abs(q - std::round(q)) > 1e-6) continue;  // off-grid gap
          } else {
            b = static_cast<int>(std::floor(gap / bin));
          }
          if (b < 0 || b >= nbins) continue;
          row[b] += static_cast<long long>(cfg.multiplicities[i]) *
                    static_cast<long long>(cfg.multiplicities[j]);
        }
      }
    }
  };

  const int nw = static_cast<int>(std::min<long long>(resolve_threads(opt.threads), R));
  if (nw <= 1) {
    run_range(0, R);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (R + nw - 1) / nw;
    for (int t = 0; t < nw; ++t) {
      const long long lo = t * chunk;
      const long long hi = std::min<long long>(R, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // normalization: per lattice site inside the buffer, or per unit^2
  double norm;
  if (lattice) {
    const double sites = static_cast<double>(window_lattice_sites(sampler_spacing, inner).size());
    if (!(sites > 0.0)) fail(errc::invalid_parameters, "no lattice sites inside the buffered window");
    norm = sites;
  } else {
    norm = inner.length() * bin;
  }

  PairCorrelation out;
  out.bin_width = bin;
  out.lattice = lattice;
  out.separation.resize(static_cast<std::size_t>(nbins));
  out.rate.resize(static_cast<std::size_t>(nbins));
  out.se.resize(static_cast<std::size_t>(nbins));
  out.count.resize(static_cast<std::size_t>(nbins));
  for (int b = 0; b < nbins; ++b) {
    out.separation[static_cast<std::size_t>(b)] =
        lattice ? bin * static_cast<double>(b + 1) : bin * (static_cast<double>(b) + 0.5);
    long long total = 0;
    double mean = 0.0;
    for (long long r = 0; r < R; ++r)
      total += counts[static_cast<std::size_t>(r) * static_cast<std::size_t>(nbins) +
                      static_cast<std::size_t>(b)];
    mean = static_cast<double>(total) / static_cast<double>(R) / norm;
    double var = 0.0;
    for (long long r = 0; r < R; ++r) {
      const double v = static_cast<double>(counts[static_cast<std::size_t>(r) *
                                                      static_cast<std::size_t>(nbins) +
                                                  static_cast<std::size_t>(b)]) /
                       norm;
      var += (v - mean) * (v - mean);
    }
    out.count[static_cast<std::size_t>(b)] = total;
    out.rate[static_cast<std::size_t>(b)] = mean;
    out.se[static_cast<std::size_t>(b)] =
        R > 1 ? std::sqrt(var / static_cast<double>(R - 1) / static_cast<double>(R)) : 0.0;
  }
  return out;
}

}  // namespace bandlim
