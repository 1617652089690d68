#pragma once

// Smooth, rapidly decaying coefficient profiles beta(z) together with their
// line Fourier transforms hat beta(zeta) = integral e^{-i zeta z} beta(z) dz.
// Every preset carries a closed-form (or spectrally exact) value callable, the
// exact transform, and an effective support radius outside of which the values
// are below ~1e-12.

#include <functional>
#include <string>

#include "kgnf/grid.hh"

namespace kgnf {

struct BetaProfile {
  std::string tag;
  std::function<double(double)> value;    // beta(z)
  std::function<cplx(double)> transform;  // hat beta(zeta)
  double support_radius = 0.0;
};

// beta == 0.
BetaProfile beta_zero();

// beta(z) = exp(-z^2); transform sqrt(pi) exp(-zeta^2/4).
BetaProfile beta_gaussian();

// beta(z) = (d/dz)^2 exp(-z^2) = (4z^2-2) exp(-z^2);
// transform -zeta^2 sqrt(pi) exp(-zeta^2/4) (double zero at the origin).
BetaProfile beta_gaussian_dd();

// p=1: beta(z) = sech(z), transform pi sech(pi zeta / 2).
// p=2: beta(z) = sech(z)^2, transform pi zeta / sinh(pi zeta / 2).
BetaProfile beta_sech_pow(int p);

// Transform is the C-infinity bump exp(1 - 1/(1 - (zeta/support)^2)) on
// |zeta| < support and zero outside; values recovered by quadrature of the
// inverse transform.  beta decays faster than any polynomial.
BetaProfile beta_fourier_bump(double support);

// Same bump multiplied by zeta^2 in transform space, so the transform has a
// double zero at the origin and vanishes outside |zeta| < support.
BetaProfile beta_fourier_bump_dd(double support);

// Transform is a C-infinity bump in |zeta| centered at `center` with support
// halfwidth `halfwidth`, so the spectrum is an annulus bounded away from both
// zero frequency and infinity (center > halfwidth required).
BetaProfile beta_fourier_annulus(double center, double halfwidth);

// The low-frequency piece of a profile with a real even transform: the
// transform is multiplied by a smooth cutoff that is 1 for |zeta| <= cutoff
// and 0 for |zeta| >= 2 cutoff; values are recovered by spectral synthesis.
BetaProfile beta_lowpass(const BetaProfile& b, double cutoff);

// beta(z - shift); transform picks up e^{-i shift zeta}.
BetaProfile beta_translate(const BetaProfile& b, double shift);

// Central finite-difference derivative of the profile, order 1..3.
double beta_derivative(const BetaProfile& b, double z, int order);

}  // namespace kgnf
