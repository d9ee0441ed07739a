#include "bandlim/structures.hpp"

#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/sinc.hpp"

namespace bandlim {

CorrelationStructure CorrelationStructure::poisson_continuous(double lambda) {
  if (!(lambda > 0.0)) fail(errc::invalid_intensity, "intensity must be positive");
  CorrelationStructure s;
  s.kind = ProcessKind::poisson_continuous;
  s.lambda = lambda;
  return s;
}

CorrelationStructure CorrelationStructure::sine_continuous() {
  CorrelationStructure s;
  s.kind = ProcessKind::sine_continuous;
  return s;
}

CorrelationStructure CorrelationStructure::poisson_lattice(double a, double lambda) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(lambda > 0.0)) fail(errc::invalid_intensity, "intensity must be positive");
  CorrelationStructure s;
  s.kind = ProcessKind::poisson_lattice;
  s.spacing = a;
  s.lambda = lambda;
  return s;
}

CorrelationStructure CorrelationStructure::sine_lattice(double a) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (a > 1.0)
    fail(errc::spacing_out_of_range,
         "the discrete sine structure is only a correlation measure for spacings up to 1");
  CorrelationStructure s;
  s.kind = ProcessKind::sine_lattice;
  s.spacing = a;
  return s;
}

CorrelationStructure CorrelationStructure::custom_density_structure(
    int dimension, std::function<double(std::span<const double>)> density) {
  if (dimension < 1) fail(errc::invalid_parameters, "dimension must be at least 1");
  if (!density) fail(errc::invalid_parameters, "a density callable is required");
  CorrelationStructure s;
  s.kind = ProcessKind::custom_density;
  s.custom_dimension = dimension;
  s.density = std::move(density);
  return s;
}

CorrelationStructure CorrelationStructure::custom_atoms_structure(
    double spacing, std::map<std::vector<long long>, double> atoms) {
  if (!(spacing > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (atoms.empty()) fail(errc::invalid_parameters, "an atom table is required");
  const std::size_t dim = atoms.begin()->first.size();
  for (const auto& [idx, mass] : atoms) {
    (void)mass;
    if (idx.size() != dim) fail(errc::dimension_mismatch, "atom index tuples differ in length");
  }
  CorrelationStructure s;
  s.kind = ProcessKind::custom_atoms;
  s.spacing = spacing;
  s.custom_dimension = static_cast<int>(dim);
  s.atoms = std::move(atoms);
  return s;
}

long long lattice_index(double spacing, double x) {
  if (!(spacing > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  const double q = x / spacing;
  const double r = std::round(q);
  if (std::abs(x - spacing * r) > 1e-12 * spacing)
    fail(errc::off_lattice, "coordinate is not on the lattice");
  return static_cast<long long>(r);
}

double correlation_value(const CorrelationStructure& s, std::span<const double> points) {
  const std::size_t n = points.size();
  if (n == 0) fail(errc::dimension_mismatch, "correlation levels start at 1");
  switch (s.kind) {
    case ProcessKind::poisson_continuous:
      return std::pow(s.lambda, static_cast<double>(n));
    case ProcessKind::sine_continuous:
      return sine_det(points);
    case ProcessKind::poisson_lattice: {
      for (double x : points) (void)lattice_index(s.spacing, x);
      return std::pow(s.spacing * s.lambda, static_cast<double>(n));
    }
    case ProcessKind::sine_lattice: {
      for (double x : points) (void)lattice_index(s.spacing, x);
      return std::pow(s.spacing, static_cast<double>(n)) * sine_det(points);
    }
    case ProcessKind::custom_density: {
      if (static_cast<int>(n) != s.custom_dimension)
        fail(errc::dimension_mismatch, "tuple length does not match the density dimension");
      return s.density(points);
    }
    case ProcessKind::custom_atoms: {
      if (static_cast<int>(n) != s.custom_dimension)
        fail(errc::dimension_mismatch, "tuple length does not match the atom dimension");
      std::vector<long long> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = lattice_index(s.spacing, points[i]);
      auto it = s.atoms.find(idx);
      return it == s.atoms.end() ? 0.0 : it->second;
    }
  }
  fail(errc::invalid_parameters, "unknown structure kind");
}

}  // namespace bandlim
