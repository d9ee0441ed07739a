#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace bandlim {

enum class ProcessKind {
  poisson_continuous,
  sine_continuous,
  poisson_lattice,
  sine_lattice,
  custom_density,
  custom_atoms,
};

// Correlation-measure description of a translation-bounded point process.
// Continuous kinds carry densities against Lebesgue measure; lattice kinds
// carry atoms on (aZ)^n. The named kinds:
//   poisson_continuous(lambda):  density lambda^n
//   sine_continuous():           density det[sinc(x_i - x_j)]
//   poisson_lattice(a, lambda):  atom (a lambda)^n at every lattice tuple
//   sine_lattice(a), 0 < a <= 1: atom a^n det[sinc(k_i - k_j)]
struct CorrelationStructure {
  ProcessKind kind = ProcessKind::poisson_continuous;
  double lambda = 1.0;   // intensity (Poisson kinds)
  double spacing = 0.0;  // lattice spacing a (lattice kinds), 0 for continuous

  // custom_density payload
  int custom_dimension = 0;
  std::function<double(std::span<const double>)> density;
  // custom_atoms payload: lattice index tuple -> mass; unlisted tuples have mass 0
  std::map<std::vector<long long>, double> atoms;

  static CorrelationStructure poisson_continuous(double lambda);
  static CorrelationStructure sine_continuous();
  static CorrelationStructure poisson_lattice(double a, double lambda);
  static CorrelationStructure sine_lattice(double a);
  static CorrelationStructure custom_density_structure(
      int dimension, std::function<double(std::span<const double>)> density);
  static CorrelationStructure custom_atoms_structure(
      double spacing, std::map<std::vector<long long>, double> atoms);

  bool lattice() const {
    return kind == ProcessKind::poisson_lattice || kind == ProcessKind::sine_lattice ||
           kind == ProcessKind::custom_atoms;
  }
};

// Density (continuous kinds) or atom mass (lattice kinds) of the n-level
// correlation measure at the given tuple, n = points.size(). Lattice kinds
// require every coordinate within 1e-12*a of the lattice (OffLattice
// otherwise); empty tuples raise DimensionMismatch.
double correlation_value(const CorrelationStructure& s, std::span<const double> points);

// Nearest lattice index of x on aZ; OffLattice if |x - a*round(x/a)| > 1e-12*a.
long long lattice_index(double spacing, double x);

}  // namespace bandlim
