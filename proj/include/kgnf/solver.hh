#pragma once

// Time evolution of the conjugated field v on hyperboloids:
//
//   (d_rr - rho^{-2} d_yy + 1 + 1/(4 rho^2)) v
//       = alpha0 rho^{-1/2} v^2 + (beta0 + beta_eff(rho, y)) rho^{-1} v^3,
//
// where beta_eff is beta(rho sinh y) when the remainder coupling is kept and
// beta(rho y) otherwise.  Stepping is Strang splitting: a half nonlinear kick
// on v_dot, an exact per-mode rotation with the frequency frozen at the
// midpoint rho, and a second half kick.  A Cartesian pseudospectral solver for
// the original equation u_tt - u_xx + u = alpha0 u^2 + (beta0 + beta(x)) u^3
// provides an independent cross check through the shared light-cone geometry.

#include <functional>
#include <utility>
#include <vector>

#include "kgnf/beta_profile.hh"
#include "kgnf/grid.hh"

namespace kgnf {

struct NonlinearityParams {
  double alpha0 = 0.0;
  double beta0 = 0.0;
  BetaProfile beta = beta_zero();
  bool include_quarter_term = true;  // the 1/(4 rho^2) mass correction
  bool include_r_beta = true;        // sample beta at rho sinh y, not rho y
};

struct SimulationState {
  double rho = 1.0;
  RealField v;
  RealField v_dot;
  double drho = 0.01;
  NonlinearityParams params;
};

struct LedgerRow {
  double rho = 0.0;
  double energy_e0 = 0.0;
  double h1_triple = 0.0;  // ||(v, v_dot, rho^{-1} v_y)||_{H1}, quadratic mean
  double sup_v = 0.0;
  double sup_v_dot = 0.0;
  double b_norm = 0.0;  // logarithmic high-frequency norm at threshold rho
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;
};

// Smooth compactly supported data posed on the hyperboloid rho0, built from
// the profile pair (U0, U1) = (eps * bump((x - center)/width), 0) prescribed
// along the slice and converted to (v, v_dot).  Requires 0 < width <= 1/2 and
// |center| + width <= 1/2.
std::pair<RealField, RealField> initial_data_bump(const GridSpec& g, double eps,
                                                  double width, double center,
                                                  double rho0 = 1.0);

// One Strang step of size state.drho; requires drho <= 0.1 and keeps the
// state dealiased.  Throws NumericalFailure on non-finite values.
void step(SimulationState& state);

// The nonlinear source alpha0 rho^{-1/2} v^2 + (beta0 + beta_eff) rho^{-1} v^3
// evaluated on the current slice, with products dealiased.
RealField nonlinear_source(const SimulationState& state);

// Second rho-derivative of v implied by the evolution equation on the current
// slice: rho^{-2} v_yy - (1 + 1/(4 rho^2)) v + nonlinear source.
RealField acceleration(const SimulationState& state);

using StepCallback = std::function<void(const SimulationState&)>;

// Advances to rho_end, recording ledger rows at the start, at geometric
// checkpoints rho = 2^k, and at the end.  The callback runs after every step.
// Aborts with NumericalFailure when the sup norm exceeds 10^3 times its
// initial value.
EnergyLedger run(SimulationState& state, double rho_end,
                 const StepCallback& after_step = {});

struct EnergyReport {
  double value = 0.0;
  bool small_enough = true;  // sup of (v, v_dot) below the positivity margin
  double threshold = 0.0;
};

// E0 = integral of  v_dot^2/2 + rho^{-2} v_y^2 / 2 + (1 + 1/(4rho^2)) v^2 / 2
//      - (alpha0/3) rho^{-1/2} v^3 - ((beta0 + beta_eff)/4) rho^{-1} v^4.
// Along exact solutions dE0/drho = integral of -rho^{-3}(v_y^2 + v^2/4)
// plus cubic/quartic terms with small coefficients, so E0 stays comparable
// to its initial value for small data.
EnergyReport energy_e0(const SimulationState& state);

struct BootstrapReport {
  double exponent = 0.0;
  bool within = false;
  double delta = 0.0;
  double r_squared = 0.0;
};

// Fits the growth exponent of the h1_triple column against rho and compares
// it with delta; requires delta in (0, 1/8).
BootstrapReport bootstrap_monitor(const EnergyLedger& ledger, double delta);

struct LowFreqTerms {
  double commutator_term = 0.0;    // ||(sigma/rho) [r theta'(r)] v||_inf
  double cubic_mismatch = 0.0;     // ||v^3 - v1^3||_inf
  double beta_lowpass = 0.0;       // ||P_{<= rho^sigma}[beta(rho y) v^3]||_inf
  double beta_lowpass_ratio = 0.0; // vs (rho^{sigma-1} + rho^{-sigma/2})||v||_H1^3
};

// Sizes of the remainder terms in the projected low-frequency equation for
// v1 = P_{<= rho^sigma} v.  Requires 6 delta < sigma < 1 - delta, sigma <= 2/3.
LowFreqTerms low_frequency_ode_monitor(const SimulationState& state,
                                       double sigma, double delta);

// ---------------------------------------------------------------------------
// Cartesian reference solver and cone-geometry transfer helpers.

struct CartesianSlice {
  double t = 0.0;
  RealField u;
  RealField u_t;
};

// Pseudospectral Strang evolution of the original equation from (u0, u1) at
// time t0 = u0.slice_time; returns slices at the requested times (each must be
// within half a step of a step boundary).
std::vector<CartesianSlice> cartesian_reference_run(
    const RealField& u0, const RealField& u1, double t_end, double dt,
    const NonlinearityParams& params, const std::vector<double>& sample_times);

struct StoredSlice {
  double rho = 0.0;
  RealField v;
  RealField v_dot;
};

// Evaluates u and u_t on the plane t = t_plane at the points of x_grid from
// stored hyperboloid slices: cubic interpolation across slices in rho and
// trigonometric interpolation in y.  Points whose hyperboloid radius falls
// outside the stored range are filled with zero (caller guarantees causal
// support).
std::pair<RealField, RealField> sample_on_plane(
    const std::vector<StoredSlice>& slices, double t_plane,
    const GridSpec& x_grid);

}  // namespace kgnf
