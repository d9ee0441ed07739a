#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bandlim/configuration.hpp"
#include "bandlim/rng.hpp"

namespace bandlim {

// Homogeneous Poisson process of intensity lambda restricted to the window.
Configuration sample_poisson(double lambda, Window window, RngState& rng);

// Independent Poisson(a*lambda) multiplicity at every lattice site a*i inside
// the window.
Configuration sample_discrete_poisson(double a, double lambda, Window window, RngState& rng);

// Exact determinantal sample for a symmetric kernel matrix with spectrum in
// [0, 1] (eigenvalues clipped within 1e-9 slack, NotAKernel beyond). Spectral
// Bernoulli selection followed by chain-rule projection sampling; returns the
// selected index set in increasing order.
std::vector<int> sample_dpp(const Eigen::MatrixXd& kernel, RngState& rng);

// Determinantal lattice gas on `sites` consecutive sites of aZ centered at 0,
// kernel K[i][j] = a * sinc(a (i - j)), 0 < a <= 1. The eigendecomposition is
// done once at construction and shared across samples.
class DiscreteSineSampler {
 public:
  DiscreteSineSampler(double a, int sites);

  Configuration sample(RngState& rng) const;
  double spacing() const { return a_; }
  int sites() const { return sites_; }
  long long first_index() const { return i0_; }
  Window window() const;

 private:
  double a_ = 0.0;
  int sites_ = 0;
  long long i0_ = 0;
  Eigen::MatrixXd vecs_;
  Eigen::VectorXd vals_;
};

// Grid discretization of the continuous determinantal process with kernel
// sinc(x - y): midpoint grid of step delta over the window, kernel
// delta * sinc(x_i - x_j). Requires delta <= 0.25 (ResolutionTooCoarse) and
// length/delta <= 1e4 (WindowTooLarge).
class ContinuousSineSampler {
 public:
  ContinuousSineSampler(Window window, double delta);

  Configuration sample(RngState& rng) const;
  double delta() const { return delta_; }
  Window window() const { return window_; }

 private:
  Window window_{};
  double delta_ = 0.0;
  std::vector<double> grid_;
  Eigen::MatrixXd vecs_;
  Eigen::VectorXd vals_;
};

using SamplerFn = std::function<Configuration(RngState&)>;

}  // namespace bandlim
