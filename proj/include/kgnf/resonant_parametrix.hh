//============================================================================
// resonant_parametrix.hh -- approximate oscillatory-kernel solutions of
//     (d^2/drho^2 - rho^{-2} d^2/dy^2 + 1) K_n = e^{i n rho} beta(rho y),
// for n = 1, 3, built frequency column by frequency column as the Duhamel
// integral
//     K_n_hat(rho, xi) = int e^{i n s} U(rho,s;xi) beta_hat(xi/s)/s
//                            chi1(s/rho) ds,
// where U(rho,s;xi) = sin(psi(rho,s;xi)) / (s^{-2} xi^2 + 1)^{1/2} and
// psi(rho,s;xi) = int_s^rho (zeta^{-2} xi^2 + 1)^{1/2} d zeta (closed form).
// The time window chi1 is identically 1 on [1/2, 2] and vanishes below 1/4,
// so only times s in [rho/4, rho] contribute.  For n = 3 the time phase
// 3s + psi is stationary where xi/s = sqrt(8); for n = 1 there is no
// stationary time on an annular spectrum, making K_1 much smaller than K_3.
// The construction assumes the profile spectrum vanishes near zero frequency
// and beyond a finite radius (annular support).
//============================================================================
#pragma once

#include "kgnf/beta_profile.hh"
#include "kgnf/grid.hh"

namespace kgnf {

// Closed-form evaluation of int_s^rho sqrt(zeta^{-2} xi^2 + 1) d zeta via the
// antiderivative sqrt(z^2+a^2) - a log((a + sqrt(z^2+a^2))/z).
// Requires 1 <= s <= rho.
double phase_psi(double rho, double s, double xi);

// sin(psi(rho,s;xi)) / sqrt(s^{-2} xi^2 + 1); bounded by 1 in modulus.
double kernel_u(double rho, double s, double xi);

// The time window: 1 for 1/2 <= |zeta| <= 2, 0 for |zeta| <= 1/4 and
// |zeta| >= 4, smooth monotone in between.
double parametrix_window(double zeta);

struct ParametrixKernel {
  int n = 3;
  double rho = 1.0;
  SpectralField k_hat;  // frequency columns of the kernel
  ComplexField k;       // synthesized kernel on the y-grid
};

// Assemble K_n on the grid.  The profile spectrum must vanish for
// |zeta| <= 1/8 (relative to its sup), and the grid Nyquist frequency must
// cover rho times the spectrum radius so every active column is represented.
// The time quadrature uses composite Gauss-Legendre panels no wider than
// pi/6, doubled until the column values move by less than 1e-8 relative;
// failure to converge raises NumericalFailure.
ParametrixKernel build_k(int n, const BetaProfile& beta, const GridSpec& g,
                         double rho);

struct ParametrixResidual {
  int n = 3;
  double rho = 1.0;
  ComplexField e;  // (box + 1) K_n - e^{i n rho} beta(rho y)
  double windowed_sup = 0.0;         // sup of |e| over |y| <= 1
  double kernel_windowed_sup = 0.0;  // sup of |K_n| over |y| <= 1
  // Largest dyadic-block norm over the real and imaginary parts of the
  // windowed triple (chi K, rho^{-1} d_y chi K, d_rho chi K), chi the
  // spatial window equal to 1 on |y| <= 1 and 0 beyond |y| >= 2.
  double triple_b_norm = 0.0;
  bool step_too_coarse = false;  // halving drho moved the residual > 50%
};

// Measure the defect of the kernel at rho: the second rho-derivative is a
// centered difference of kernels built at rho and rho +- drho (and +- drho/2
// for the step-size flag), the y-derivative is spectral, and the source is
// e^{i n rho} beta(rho y) sampled on the grid.  Requires drho in (0, 0.05]
// and rho - drho >= 2.  The drho step is an absolute step: the kernel
// oscillates in rho at a rate independent of rho, so a proportional step
// would lose accuracy exactly where the residual becomes small.
ParametrixResidual parametrix_residual(int n, const BetaProfile& beta,
                                       const GridSpec& g, double rho,
                                       double drho);

}  // namespace kgnf
