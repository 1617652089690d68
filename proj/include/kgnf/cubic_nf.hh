//============================================================================
// cubic_nf.hh -- normal form for the variable-coefficient cubic term.
//
// The correction
//     w2 = rho^{-1} sum_j chi0(2^j/sqrt(rho)) sum_{i=0,2}
//              f_i[beta_j](rho y) F_i(w_j, wdot_j),      w_j = P_{<= rho/2^j} w,
// trades the cubic source beta(rho y) rho^{-1} (P_{<=rho} w)^3 for errors one
// power of rho smaller.  The profile spectrum is split into dyadic bands
// beta_j concentrated at frequencies ~ 2^{-j}; on each band the coefficient
// fields f_0, f_2 come from the pair of profile ODEs
//     g0'' = -3 beta_j,      g2'' + 8 g2 = -beta_j,
// via f0 = (g0 + g2)/4, f2 = (g0 - 3 g2)/4.  The ODEs are solved by division
// of the transform, which is possible exactly when the spectrum carries no
// mass at zero frequency (double zero) or at the resonant frequencies
// +-sqrt(8); classify_resonance reports which of these obstructions a profile
// has.
//============================================================================
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kgnf/beta_profile.hh"
#include "kgnf/grid.hh"
#include "kgnf/solver.hh"

namespace kgnf {

// Cubic monomials F_i = v^{3-i} vdot^i for i in 0..3; out-of-range indices
// give the zero field (negative i or i > 3).
RealField cubic_monomial(int i, const RealField& v, const RealField& v_dot);

// Derivatives of F_i along the free oscillation (substituting vddot = -v):
// first  F_i^1 = (3-i) F_{i+1} - i F_{i-1},
// second F_i^2 = (3-i)(2-i) F_{i+2} + i(i-1) F_{i-2}
//                - ((3-i)(i+1) + (4-i) i) F_i.
RealField cubic_monomial_d1(int i, const RealField& v, const RealField& v_dot);
RealField cubic_monomial_d2(int i, const RealField& v, const RealField& v_dot);

enum class ResonanceClass { non_resonant, resonant_at_0, resonant_at_sqrt8, both };

struct ResonanceReport {
  cplx at_zero{0.0, 0.0};        // beta_hat(0)
  cplx slope_at_zero{0.0, 0.0};  // beta_hat'(0)
  cplx at_sqrt8{0.0, 0.0};       // beta_hat(+sqrt 8)
  cplx at_minus_sqrt8{0.0, 0.0};
  double transform_sup = 0.0;    // sup |beta_hat| over the scan window
  bool double_zero_at_0 = false;
  bool zero_at_sqrt8 = false;
  ResonanceClass classification = ResonanceClass::both;
};

// Evaluate the transform at the obstruction frequencies and flag which vanish
// below tol * sup|beta_hat|.  The derivative at zero uses a centered stencil
// cross-checked at half step; an inconsistent (under-resolved) transform
// callable is rejected with ConfigError.  The zero profile is non-resonant.
ResonanceReport classify_resonance(const BetaProfile& beta, double tol = 1e-6);

// Profile ODE solutions sampled on a periodic z-grid.
struct NFCoefficients {
  RealField g0, g2;  // g0'' = -3 beta, g2'' + 8 g2 = -beta; mean(g0) = 0
  RealField f0, f2;  // f0 = (g0 + g2)/4, f2 = (g0 - 3 g2)/4
};

// Divide the sampled transform: g0_hat = 3 beta_hat / zeta^2, g2_hat =
// beta_hat / (zeta^2 - 8).  The grid must resolve the resonant frequencies
// (spacing pi/L <= 0.25 and Nyquist >= 6).  Division guard: a lattice point
// at an obstruction frequency whose transform value exceeds tol * sup
// raises ConfigError; values below it are dropped, which fixes mean(g0) = 0.
NFCoefficients solve_g_system(const BetaProfile& beta, const GridSpec& zgrid);

// The linear change of basis between the ODE pair and the monomial
// coefficients, and its exact inverse (g0 = 3 f0 + f2, g2 = f0 - f2).
std::pair<RealField, RealField> f_from_g(const RealField& g0,
                                         const RealField& g2);
std::pair<RealField, RealField> g_from_f(const RealField& f0,
                                         const RealField& f2);

// One dyadic block of the profile spectrum: transform(zeta) =
// chi1(2^j zeta) * beta_hat(zeta), supported in 2^{-j} <= |zeta| <= 2^{2-j},
// where chi1 is the dyadic band window of the projection family.  The
// highest-frequency block (smallest j) instead carries the full high-pass
// complement so that the blocks plus the leftover reproduce beta_hat
// identically; the difference lies below the spectrum's support-scan floor.
struct BetaBand {
  int j = 0;
  double transform_sup = 0.0;  // sup |beta_hat|, the division-guard scale
  double zeta_top = 1.0;       // frequencies beyond this are identically zero
  std::function<cplx(double)> transform;
};

struct BetaBandDecomposition {
  std::vector<BetaBand> bands;           // j ascending from j_min to j_max
  std::function<cplx(double)> leftover;  // low-pass remainder below ~2^{-j_max}
  int j_min = 0;
  int j_max = 0;                 // largest j with 2^j <= sqrt(rho)
  double transform_sup = 0.0;
  double spectrum_radius = 0.0;  // outermost |zeta| with mass above the floor
};

// Split the profile spectrum into dyadic blocks down to frequency
// ~ rho^{-1/2}; the low leftover is never normal-formed.  Requires rho >= 1.
BetaBandDecomposition dyadic_beta_bands(const BetaProfile& beta, double rho);

// Sample a band's z-space profile (or its derivative_order-th z-derivative)
// at the dilated grid points z = rho * y.  The synthesis runs on an aligned
// auxiliary grid with an 8x half-width margin, so periodization aliases are
// negligible for rapidly decaying profiles.
RealField band_scaled_samples(const BetaBand& band, const GridSpec& g,
                              double rho, int derivative_order = 0);

// Sample the band's normal-form coefficient field f_which (which = 0 or 2)
// at z = rho * y, applying the guarded transform divisions band-locally.
RealField band_f_samples(const BetaBand& band, int which, const GridSpec& g,
                         double rho, int derivative_order = 0);

struct CubicNF {
  double rho = 1.0;
  RealField w2;
  std::vector<int> band_j;             // bands entering the sum, ascending
  std::vector<RealField> band_pieces;  // weighted w_{2,j}; they sum to w2
};

// Assemble the cubic normal form from the already quadratically-corrected
// unknown (w, w_dot).  Each band uses w_j = P_{<= rho/2^j} w and
// wdot_j = P_{<= rho/2^j} w_dot + (d/drho P)(w).  Requires rho >= 1 and a
// profile with no spectral mass at +-sqrt(8) (guarded per band).
CubicNF build_w2_zero_resonance(const RealField& w, const RealField& w_dot,
                                const BetaProfile& beta, double rho);

struct CubicResidual {
  double rho = 1.0;     // mid-slice location (state advanced by one step)
  CubicNF nf;           // normal form on the mid slice
  RealField e_cubic;    // (d^2/drho^2 + D_y^2 + 1) w2 - low-frequency source
  double residual_h1 = 0.0;
  double source_h1 = 0.0;  // ||rho^{-1} beta(rho y) (P_{<=rho} w)^3||_{H^1}
  double high_leftover_h1 = 0.0;  // source made by w^3 - (P_{<=rho} w)^3
  double triple_h1 = 0.0;  // ||(w2, w2_dot, D_y w2)||_{H^1}, w2_dot differenced
  double scaled_residual = 0.0;   // rho res / (||(v,v')||_B^2 ||(v,v')||_H1)
  bool step_too_coarse = false;   // halving drho moved the residual > 50%
};

// Measure the defect of the normal form along the flow through `state` (the
// state itself is not modified).  The second rho-derivative of w2 is formed
// from three slices drho apart; w = v - w1 is rebuilt on each slice from the
// quadratic normal form (w = v when the quadratic coupling vanishes).  The
// profile `beta` drives the normal form and the reference source; it should
// match the state's variable cubic coefficient sampled at z = rho y.
// Requires drho in (0, 0.05] and state.rho >= 1.
CubicResidual cubic_error_residual(const SimulationState& state,
                                   const BetaProfile& beta, double drho);

// Coefficient fields of the resonant (+-sqrt 8) interaction recovered from
// oscillatory kernel amplitudes K1 (phase e^{i rho}) and K3 (phase
// e^{3 i rho}): K1 = (g0 + i g1) e^{i rho} / 3 and K3 = (g2 + i g3)
// e^{3 i rho}, then the exact linear relations g0 = 3 f0 + f2, g2 = f0 - f2,
// g1 = f1 + 3 f3, g3 = f1 - f3 are inverted.
struct ResonantCoefficients {
  RealField g0, g1, g2, g3;
  RealField f0, f1, f2, f3;
};

ResonantCoefficients sqrt8_coefficients_from_parametrix(const ComplexField& k1,
                                                        const ComplexField& k3,
                                                        double rho);

}  // namespace kgnf
