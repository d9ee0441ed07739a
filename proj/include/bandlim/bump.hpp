#pragma once

namespace bandlim {

// Smooth even plateau function beta_eps: identically 1 on [-1/2+eps, 1/2-eps],
// identically 0 outside [-1/2-eps, 1/2+eps], monotone C-infinity ramps in
// between built from the standard exp(-1/(1-t^2)) mollifier. The ramps are
// antisymmetric about |xi| = 1/2, so
//   beta(1/2 - x) + beta(1/2 + x) = 1   for all x,
// and shifted copies beta(xi + k), k integer, form a partition of unity.
class BumpFamily {
 public:
  // Requires 0 < eps < 1/2 (InvalidEpsilon otherwise).
  explicit BumpFamily(double eps);

  double epsilon() const { return eps_; }
  double value(double xi) const;

  // Fourier transform of value(), int beta(xi) e^{2 pi i x xi} d xi (real and
  // even since beta is). Evaluated by adaptive quadrature; transform(0) = 1
  // and transform vanishes at every nonzero integer.
  double transform(double x) const;

 private:
  double eps_;
  double transition(double t) const;  // odd-symmetric ramp F on [0,1], F(t)+F(1-t)=1
};

}  // namespace bandlim
