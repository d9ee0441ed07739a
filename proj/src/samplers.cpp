#include "bandlim/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/sinc.hpp"

namespace bandlim {

Configuration sample_poisson(double lambda, Window window, RngState& rng) {
  if (!(lambda > 0.0)) fail(errc::invalid_intensity, "intensity must be positive");
  if (!(window.length() > 0.0)) fail(errc::invalid_parameters, "window must have positive length");
  const long long n = rng.poisson(lambda * window.length());
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) p = rng.uniform(window.lo, window.hi);
  std::sort(pts.begin(), pts.end());
  Configuration cfg;
  cfg.window = window;
  cfg.spacing = 0.0;
  // ties have probability zero; collapse defensively anyway
  for (double p : pts) {
    if (!cfg.positions.empty() && p == cfg.positions.back())
      ++cfg.multiplicities.back();
    else {
      cfg.positions.push_back(p);
      cfg.multiplicities.push_back(1);
    }
  }
  return cfg;
}

Configuration sample_discrete_poisson(double a, double lambda, Window window, RngState& rng) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (!(lambda > 0.0)) fail(errc::invalid_intensity, "intensity must be positive");
  if (!(window.length() > 0.0)) fail(errc::invalid_parameters, "window must have positive length");
  const long long lo = static_cast<long long>(std::ceil(window.lo / a - 1e-12));
  const long long hi = static_cast<long long>(std::floor(window.hi / a + 1e-12));
  Configuration cfg;
  cfg.window = window;
  cfg.spacing = a;
  for (long long i = lo; i <= hi; ++i) {
    const long long m = rng.poisson(a * lambda);
    if (m > 0) {
      cfg.positions.push_back(a * static_cast<double>(i));
      cfg.multiplicities.push_back(static_cast<int>(m));
    }
  }
  return cfg;
}

namespace {

std::vector<int> dpp_from_spectrum(const Eigen::MatrixXd& vecs, const Eigen::VectorXd& vals,
                                   RngState& rng) {
  const int n = static_cast<int>(vals.size());
  // Bernoulli selection of eigenvectors
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    if (rng.uniform01() < vals[j]) chosen.push_back(j);
  const int k = static_cast<int>(chosen.size());
  if (k == 0) return {};

  Eigen::MatrixXd v(n, k);
  for (int t = 0; t < k; ++t) v.col(t) = vecs.col(chosen[t]);

  // chain rule on the projection onto span(v): repeatedly sample a site with
  // probability proportional to the remaining squared row norm, then project
  // the basis away from that site's row direction
  Eigen::VectorXd norm2 = v.rowwise().squaredNorm();
  Eigen::MatrixXd c(n, k);  // orthonormal directions pinned so far
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += std::max(0.0, norm2[i]);
    if (!(total > 0.0)) fail(errc::not_a_kernel, "projection mass vanished during sampling");
    double u = rng.uniform01() * total;
    int site = n - 1;
    for (int i = 0; i < n; ++i) {
      u -= std::max(0.0, norm2[i]);
      if (u <= 0.0) {
        site = i;
        break;
      }
    }
    Eigen::VectorXd dir = v * v.row(site).transpose();
    if (t > 0) dir -= c.leftCols(t) * (c.row(site).head(t).transpose());
    const double scale = std::sqrt(std::max(norm2[site], 1e-300));
    dir /= scale;
    c.col(t) = dir;
    norm2 -= dir.cwiseProduct(dir);
    picked.push_back(site);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

void spectrum_or_fail(const Eigen::MatrixXd& kernel, Eigen::MatrixXd& vecs, Eigen::VectorXd& vals) {
  if (kernel.rows() != kernel.cols()) fail(errc::not_a_kernel, "kernel matrix must be square");
  if (kernel.rows() == 0) fail(errc::not_a_kernel, "kernel matrix is empty");
  if (!kernel.isApprox(kernel.transpose(), 1e-10))
    fail(errc::not_a_kernel, "kernel matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel);
  if (es.info() != Eigen::Success) fail(errc::not_a_kernel, "eigendecomposition failed");
  vals = es.eigenvalues();
  vecs = es.eigenvectors();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < -1e-9 || vals[i] > 1.0 + 1e-9)
      fail(errc::not_a_kernel, "kernel spectrum leaves [0, 1]");
    vals[i] = std::clamp(vals[i], 0.0, 1.0);
  }
}

}  // namespace

std::vector<int> sample_dpp(const Eigen::MatrixXd& kernel, RngState& rng) {
  Eigen::MatrixXd vecs;
  Eigen::VectorXd vals;
  spectrum_or_fail(kernel, vecs, vals);
  return dpp_from_spectrum(vecs, vals, rng);
}

DiscreteSineSampler::DiscreteSineSampler(double a, int sites) : a_(a), sites_(sites) {
  if (!(a > 0.0)) fail(errc::invalid_spacing, "lattice spacing must be positive");
  if (a > 1.0)
    fail(errc::spacing_out_of_range, "the discrete sine process requires spacing at most 1");
  if (sites < 1) fail(errc::invalid_parameters, "at least one site is required");
  i0_ = -static_cast<long long>(sites / 2);
  Eigen::MatrixXd kernel(sites, sites);
  for (int i = 0; i < sites; ++i)
    for (int j = 0; j < sites; ++j) kernel(i, j) = a * sinc(a * static_cast<double>(i - j));
  spectrum_or_fail(kernel, vecs_, vals_);
}

Window DiscreteSineSampler::window() const {
  const double lo = a_ * static_cast<double>(i0_);
  const double hi = a_ * static_cast<double>(i0_ + sites_ - 1);
  return {lo - 0.5 * a_, hi + 0.5 * a_};
}

Configuration DiscreteSineSampler::sample(RngState& rng) const {
  std::vector<int> picked = dpp_from_spectrum(vecs_, vals_, rng);
  Configuration cfg;
  cfg.window = window();
  cfg.spacing = a_;
  cfg.positions.reserve(picked.size());
  cfg.multiplicities.assign(picked.size(), 1);
  for (int i : picked) cfg.positions.push_back(a_ * static_cast<double>(i0_ + i));
  return cfg;
}

ContinuousSineSampler::ContinuousSineSampler(Window window, double delta)
    : window_(window), delta_(delta) {
  if (!(window.length() > 0.0)) fail(errc::invalid_parameters, "window must have positive length");
  if (!(delta > 0.0) || delta > 0.25)
    fail(errc::resolution_too_coarse, "grid step must lie in (0, 1/4]");
  const double cells_d = window.length() / delta;
  if (cells_d > 1e4) fail(errc::window_too_large, "window/delta exceeds 1e4 grid cells");
  const int cells = static_cast<int>(std::floor(cells_d + 1e-9));
  if (cells < 1) fail(errc::invalid_parameters, "window shorter than one grid cell");
  grid_.resize(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) grid_[static_cast<std::size_t>(i)] = window.lo + (i + 0.5) * delta;
  Eigen::MatrixXd kernel(cells, cells);
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j) kernel(i, j) = delta * sinc(grid_[i] - grid_[j]);
  spectrum_or_fail(kernel, vecs_, vals_);
}

Configuration ContinuousSineSampler::sample(RngState& rng) const {
  std::vector<int> picked = dpp_from_spectrum(vecs_, vals_, rng);
  Configuration cfg;
  cfg.window = window_;
  cfg.spacing = 0.0;
  cfg.positions.reserve(picked.size());
  cfg.multiplicities.assign(picked.size(), 1);
  for (int i : picked) cfg.positions.push_back(grid_[static_cast<std::size_t>(i)]);
  return cfg;
}

}  // namespace bandlim
