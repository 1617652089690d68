#pragma once

// Late-time oscillation profiles, the logarithmic phase correction, and
// decay-rate reporting.
//
// Inside the light cone the free field settles into
//
//   u(t, x) ~ rho^{-1/2} Re[ a(x/rho) e^{i (rho + pi/4)} ],   rho^2 = t^2 - x^2,
//
// where the profile is read off the initial data by stationary phase:
//
//   a(sinh y) = sqrt(2/pi) cosh(y) u_plus_hat(-sinh y),
//   u_plus_hat(xi) = ( u0_hat(xi) - i (xi^2 + 1)^{-1/2} u1_hat(xi) ) / 2,
//
// with the line-integral transform convention used throughout (forward
// transform approximates integral of e^{-i xi y} f dy).  The quarter-turn
// offset is the usual Fresnel phase, and the sqrt(2/pi) factor absorbs the
// transform normalization so that |a(y)| equals the pointwise oscillation
// amplitude of the conjugated field v = rho^{1/2} u at fixed y.
//
// With constant nonlinear coefficients the oscillation frequency softens as
// the local amplitude grows, producing a secular phase drift
//
//   arg v(rho, y0) = rho - c A^2 ln(rho) + const,
//   c = (3/8) beta0 + (5/12) alpha0^2,   A = local amplitude of v,
//
// so the slope fitted against ln(rho) is -c A^2.  fit_log_phase extracts
// that slope from a probe series at fixed y0 via the analytic pair
// z = v - i v_dot, whose argument increases like the oscillation phase.

#include <vector>

#include "kgnf/grid.hh"
#include "kgnf/solver.hh"

namespace kgnf {

enum class ProfileSource { from_data, fitted };

// Oscillation profile sampled on a y-grid; entry j holds a at x/rho = sinh(y_j).
struct AsymptoticProfile {
  GridSpec grid;           // y-grid carrying the samples
  ComplexField amplitude;  // a(sinh y_j)
  double c_phase = 0.0;    // coefficient of |a|^2 ln(rho) in the phase drift
  ProfileSource source = ProfileSource::from_data;
};

// Profile of the free evolution launched from (u0, u1) on their common
// x-grid, sampled on y_grid.  The transform is evaluated by direct summation
// at the off-lattice frequencies -sinh(y_j), so the data should be well
// inside the x-grid (periodization tails alias into the profile otherwise).
AsymptoticProfile free_profile_from_data(const RealField& u0,
                                         const RealField& u1,
                                         const GridSpec& y_grid);

// Pure arithmetic: c = (3/8) beta0 + (5/12) alpha0^2.
double delort_phase_coefficient(double alpha0, double beta0);

// Predicted conjugated field v(rho, y) = Re[ a(y) e^{i theta} ] on the
// profile's own grid, with theta = rho - c_phase |a(y)|^2 ln(rho) + pi/4.
// Requires rho >= 1.
RealField profile_prediction_v(const AsymptoticProfile& p, double rho);

// Predicted u at one spacetime point strictly inside the cone (t > |x|);
// the profile is evaluated at y = asinh(x/rho) by trigonometric
// interpolation.  Requires t^2 - x^2 >= 1 and |y| within the profile grid.
double profile_prediction_u(const AsymptoticProfile& p, double t, double x);

// Predicted u on the whole plane t = t_plane at the points of x_grid.
// Points outside the cone, closer to it than rho = 1, or mapping beyond the
// profile grid are filled with zero.
RealField profile_prediction_on_plane(const AsymptoticProfile& p,
                                      double t_plane, const GridSpec& x_grid);

// Probe series at a fixed grid point y0: matched samples of rho, v(rho, y0),
// and the rho-derivative v_dot(rho, y0), strictly increasing in rho and
// sampled densely enough that the phase advances less than a half turn
// between consecutive samples.
struct PhaseSeries {
  std::vector<double> rho;
  std::vector<double> v;
  std::vector<double> v_dot;
};

struct LogPhaseFit {
  double slope = 0.0;      // coefficient of ln(rho) in arg(v - i v_dot) - rho
  double amplitude = 0.0;  // median of |v - i v_dot| over the window
  double r_squared = 0.0;  // of the full secular model
  int sample_count = 0;
  // Set when the analytic modulus dips below 10% of its running mean,
  // which makes the unwrapped phase unreliable.
  bool unwrap_ambiguous = false;
};

// Unwraps the phase of z = v - i v_dot over the window [rho1, rho2],
// subtracts rho, and regresses the remainder on {1, ln rho, 1/rho, 1/rho^2};
// the 1/rho terms absorb the dispersive transient so the ln-coefficient
// isolates the secular drift.  Requires rho2 >= 10 rho1 > 0 and at least 32
// samples inside the window.
LogPhaseFit fit_log_phase(const PhaseSeries& series, double rho1, double rho2);

struct DecayReport {
  std::vector<double> rho;           // checkpoint times, strictly increasing
  std::vector<double> sup_v;         // sup_y |v| per checkpoint
  std::vector<double> scaled_sup_u;  // sup_x |u| (1+rho)^{1/2} on the slice
  double exponent = 0.0;             // d ln sup_v / d ln rho over the tail
  double ci95 = 0.0;                 // approximate 95% half-width
  double r_squared = 0.0;
  double tail_ratio = 1.0;  // max/min of sup_v over the last decade
  double fit_rho_min = 0.0;  // first checkpoint included in the fit
};

// Fits the decay exponent of sup|v| against rho over the ledger tail,
// skipping the early adiabatic transient (fit starts at min(64, rho_max/16)).
// Requires at least four rows spanning two decades.  A ledger of identically
// zero sup norms produces the trivial report.
DecayReport decay_rate_report(const EnergyLedger& ledger);

}  // namespace kgnf
