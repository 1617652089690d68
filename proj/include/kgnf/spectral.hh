//============================================================================
// spectral.hh -- transforms, spectral derivatives, norms, dealiasing.
//
// Transform convention: dft_forward approximates the line integral
//     f_hat(xi) = \int e^{-i xi y} f(y) dy
// on the periodic domain, i.e. F_k = h * sum_j e^{-i xi_k y_j} f_j at the
// grid frequencies xi_k = pi k / L.  dft_inverse is its exact discrete
// inverse, f_j = (1/2L) * sum_k e^{+i xi_k y_j} F_k.  With these weights the
// continuum Parseval identity ||f||_{L^2}^2 = (2pi)^{-1} ||f_hat||_{L^2}^2
// holds exactly for the discrete quadrature norms.
//
// The semiclassical transform at time rho is v_tilde(xi) = rho * v_hat(rho
// xi), sampled on the rescaled frequency grid xi_k / rho; it diagonalizes
// D_y = (i rho)^{-1} d/dy as multiplication by the rescaled frequency.
//============================================================================
#pragma once

#include <random>

#include "kgnf/grid.hh"

namespace kgnf {

SpectralField dft_forward(const RealField& f);
SpectralField dft_forward(const ComplexField& f);
ComplexField dft_inverse(const SpectralField& F);
RealField dft_inverse_real(const SpectralField& F);

// rho >= 1 enforced.
SpectralField semiclassical_forward(const RealField& f, double rho);
SpectralField semiclassical_forward(const ComplexField& f, double rho);
ComplexField semiclassical_inverse(const SpectralField& F);

// Spectral multiplication by (i xi)^order; the Nyquist mode is zeroed for odd
// orders so real fields map to real fields.
RealField derivative_y(const RealField& f, int order);
ComplexField derivative_y(const ComplexField& f, int order);

// D_y^order with D_y = (i rho)^{-1} d/dy: multiplication by (xi/rho)^order.
// Odd orders of D_y map real fields to purely imaginary ones, so the result
// is complex in general.
ComplexField semiclassical_derivative(const RealField& f, double rho,
                                      int order);
ComplexField semiclassical_derivative(const ComplexField& f, double rho,
                                      int order);

// 2/3-rule: zero all modes with |k| > N/3 (applied after nonlinear products).
void dealias_spectrum(SpectralField& F);
RealField dealias_two_thirds(const RealField& f);

double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);
double linf_norm(const RealField& f);
double linf_norm(const ComplexField& f);
// ||f||_{L^2} + ||d_y f||_{L^2}
double h1_norm(const RealField& f);
double h1_norm(const ComplexField& f);
// (2pi)^{-1/2} L^2 norm of the coefficient line, equal to l2_norm of the
// physical field (discrete Parseval).
double spectral_l2_norm(const SpectralField& F);

// Evaluate the trigonometric interpolant at an arbitrary point y.
cplx eval_at(const SpectralField& F, double y);

// Random real field with spectrum supported in |xi| <= max_freq, unit-variance
// Gaussian coefficients (Hermitian-symmetric).  Deterministic given the rng
// state.
RealField random_band_limited(const GridSpec& g, double max_freq,
                              std::mt19937_64& rng);

}  // namespace kgnf
