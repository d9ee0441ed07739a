#include "bandlim/mimicry.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "bandlim/bump.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/samplers.hpp"
#include "bandlim/sinc.hpp"

namespace bandlim {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::mimicable:
      return "mimicable";
    case Verdict::not_mimicable:
      return "not-mimicable";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

RegionPoint classify_region(ProcessKind family, double a, double bandwidth) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(bandwidth >= 0.0)) fail(errc::invalid_parameters, "bandwidth must be nonnegative");
  RegionPoint p;
  p.a = a;
  p.bandwidth = bandwidth;
  const bool poisson =
      family == ProcessKind::poisson_continuous || family == ProcessKind::poisson_lattice;
  const bool sine = family == ProcessKind::sine_continuous || family == ProcessKind::sine_lattice;
  if (!poisson && !sine)
    fail(errc::invalid_parameters, "classification covers the poisson and sine families");
  if (poisson) {
    if (bandwidth <= 1.0 / a) {
      p.verdict = Verdict::mimicable;
      p.rule = "B <= 1/a";
    } else {
      p.verdict = Verdict::not_mimicable;
      p.rule = "B > 1/a";
    }
    return p;
  }
  if (a <= 1.0 && bandwidth <= (1.0 - a) / a) {
    p.verdict = Verdict::mimicable;
    p.rule = "a <= 1 and B <= (1-a)/a";
  } else if (a <= 0.5) {
    p.verdict = Verdict::not_mimicable;
    p.rule = "a <= 1/2 and B > (1-a)/a";
  } else if (bandwidth >= 0.5 / a) {
    p.verdict = Verdict::not_mimicable;
    p.rule = "a > 1/2 and B >= 1/(2a)";
  } else {
    p.verdict = Verdict::unknown;
    p.rule = "a > 1/2 and (1-a)/a < B < 1/(2a)";
  }
  return p;
}

std::vector<BatteryMember> default_battery(double a, double bandwidth, int levels) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(bandwidth > 0.0)) fail(errc::invalid_parameters, "bandwidth must be positive");
  if (levels < 1) fail(errc::invalid_parameters, "at least one level is required");

  std::vector<TestFactor> base;
  for (double s : {bandwidth, bandwidth / 2.0, bandwidth / 4.0}) base.push_back(fejer_factor(s));

  const double candidates[4] = {1.0 / a, 1.0 / a - 1.0, bandwidth / 2.0, 0.75 * bandwidth};
  std::vector<double> carriers;
  for (double c : candidates) {
    if (!(c > 1e-12) || !(c < bandwidth - 1e-12)) continue;
    bool dup = false;
    for (double seen : carriers) dup = dup || std::abs(seen - c) < 1e-9;
    if (dup) continue;
    carriers.push_back(c);
    if (carriers.size() == 3) break;
  }
  for (double c : carriers) base.push_back(fejer_factor(2.0 * (bandwidth - c) / 3.0, c));

  std::vector<BatteryMember> battery;
  for (int level = 1; level <= levels; ++level)
    for (const auto& f : base) {
      std::vector<TestFactor> reps(static_cast<std::size_t>(level), f);
      battery.push_back({level, product_test(std::move(reps))});
    }
  return battery;
}

namespace {

SamplerFn canonical_sampler(const CorrelationStructure& s, Window window, double delta) {
  switch (s.kind) {
    case ProcessKind::poisson_continuous: {
      const double lambda = s.lambda;
      return [lambda, window](RngState& rng) { return sample_poisson(lambda, window, rng); };
    }
    case ProcessKind::poisson_lattice: {
      const double a = s.spacing;
      const double lambda = s.lambda;
      return [a, lambda, window](RngState& rng) {
        return sample_discrete_poisson(a, lambda, window, rng);
      };
    }
    case ProcessKind::sine_continuous: {
      auto sampler = std::make_shared<ContinuousSineSampler>(window, delta);
      return [sampler](RngState& rng) { return sampler->sample(rng); };
    }
    case ProcessKind::sine_lattice: {
      const double a = s.spacing;
      const long long lo = static_cast<long long>(std::ceil(window.lo / a - 1e-12));
      const long long hi = static_cast<long long>(std::floor(window.hi / a + 1e-12));
      if (lo != -hi)
        fail(errc::invalid_parameters,
             "the lattice determinantal sampler needs a window symmetric around 0");
      auto sampler = std::make_shared<DiscreteSineSampler>(a, static_cast<int>(hi - lo + 1));
      return [sampler](RngState& rng) { return sampler->sample(rng); };
    }
    default:
      fail(errc::invalid_parameters, "no canonical sampler for custom structures");
  }
}

}  // namespace

MimicryVerdict mimicry_test(const CorrelationStructure& side_a, const CorrelationStructure& side_b,
                            double bandwidth, int levels,
                            const std::vector<BatteryMember>& battery,
                            const std::optional<McPlan>& mc) {
  if (!(bandwidth > 0.0)) fail(errc::invalid_parameters, "bandwidth must be positive");
  if (levels < 1) fail(errc::invalid_parameters, "at least one level is required");

  MimicryVerdict out;
  out.pass = true;
  out.bandwidth = bandwidth;
  out.levels = levels;

  SamplerFn sampler;
  if (mc) sampler = canonical_sampler(side_b, mc->window, mc->delta);

  for (const auto& member : battery) {
    if (member.level > levels) continue;
    if (member.fn.bandwidth() > bandwidth + 1e-12) continue;
    MimicryEntry e;
    e.level = member.level;
    e.label = member.fn.label();
    e.value_a = analytic_expectation(side_a, member.fn, 1e-9);
    if (mc) {
      const EstimatorReport rep = estimate_expectation(sampler, member.fn, mc->replicas, mc->seed,
                                                       mc->threads, mc->window);
      e.value_b = rep.mean;
      e.se = rep.se;
      e.monte_carlo = true;
      // the sampler only sees the window, so allow for the exact bias the
      // window clip induces on side B before calling a discrepancy real
      const double full = analytic_expectation(side_b, member.fn, 1e-9);
      const double clipped = analytic_expectation_windowed(side_b, member.fn, mc->window, 1e-7);
      e.threshold = 3.0 * rep.se + std::abs(full - clipped) + 1e-7;
    } else {
      e.value_b = analytic_expectation(side_b, member.fn, 1e-9);
      e.threshold = 1e-7;
    }
    e.discrepancy = std::abs(e.value_a - e.value_b);
    e.pass = e.discrepancy <= e.threshold;
    out.pass = out.pass && e.pass;
    out.entries.push_back(std::move(e));
  }
  if (out.entries.empty())
    fail(errc::invalid_parameters, "no battery member fits the requested level and band caps");
  return out;
}

double nyquist_reconstruct(const CorrelationStructure& continuous, double a,
                           std::span<const double> k, double bandwidth,
                           std::optional<double> eps_override) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  const std::size_t n = k.size();
  if (n < 1 || n > 3) fail(errc::unsupported_order, "reconstruction supports levels 1..3");
  if (continuous.kind != ProcessKind::poisson_continuous &&
      continuous.kind != ProcessKind::sine_continuous)
    fail(errc::invalid_parameters, "reconstruction targets the continuous named structures");
  if (!(bandwidth > 0.5 / a))
    fail(errc::below_nyquist, "agreement below the Nyquist band does not pin the atoms");

  double eps = eps_override ? *eps_override
                            : std::min(0.25, 0.5 * (a * bandwidth - 0.5)) * (1.0 - 1e-6);
  if (!(eps > 0.0) || eps > 0.25 || eps > a * bandwidth - 0.5)
    fail(errc::invalid_epsilon, "transition half-width must fit inside the band");
  auto bump = std::make_shared<BumpFamily>(eps);

  std::vector<TestFactor> factors;
  factors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double center = k[i];
    TestFactor f;
    f.value = [bump, center, a](double x) { return bump->transform((x - center) / a); };
    f.transform = [bump, center, a](double xi) -> std::complex<double> {
      const double mag = a * bump->value(a * xi);
      if (mag == 0.0) return 0.0;
      const double phase = -2.0 * std::numbers::pi * center * xi;
      return mag * std::complex<double>(std::cos(phase), std::sin(phase));
    };
    f.bandwidth = (0.5 + eps) / a;
    f.label = "bump(k=" + std::to_string(center) + ")";
    factors.push_back(std::move(f));
  }
  return analytic_expectation(continuous, product_test(std::move(factors)), 1e-9);
}

double sinc_interpolate_measure(const CorrelationStructure& continuous, double a,
                                std::span<const double> k, double tol) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(tol > 0.0)) fail(errc::invalid_parameters, "tolerance must be positive");
  const std::size_t n = k.size();
  if (n < 1 || n > 2) fail(errc::unsupported_order, "sinc sampling supports levels 1..2");
  switch (continuous.kind) {
    case ProcessKind::poisson_continuous:
      return std::pow(a * continuous.lambda, static_cast<double>(n));
    case ProcessKind::sine_continuous: {
      if (n == 1) return a;
      // int (1 - sinc(x1-x2)^2) prod sinc((xi-ki)/a) = a^2 - a*I with
      // I = int sinc(u)^2 sinc((g-u)/a) du, g = k1 - k2
      const double g = k[0] - k[1];
      auto f = [a, g](double u) {
        const double v = sinc(u);
        return v * v * sinc((g - u) / a);
      };
      const double panel = std::max({1.0, a, std::abs(g) / 6.0});
      const double inner = oscillatory_line_integral(f, 0.5 * g, panel, tol * 0.5, 4000);
      return a * a - a * inner;
    }
    default:
      fail(errc::invalid_parameters, "sinc sampling targets the continuous named structures");
  }
}

double lattice_atom(const CorrelationStructure& lattice, std::span<const double> k) {
  if (!lattice.lattice())
    fail(errc::invalid_parameters, "atom lookup needs a lattice-supported structure");
  std::vector<double> snapped(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double q = k[i] / lattice.spacing;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9) return 0.0;
    snapped[i] = lattice.spacing * r;
  }
  return correlation_value(lattice, snapped);
}

}  // namespace bandlim
