#pragma once

// Hyperbolic coordinates x = rho sinh(y), t = rho cosh(y) on the forward
// light cone, the weight conjugation v = rho^{1/2} u, and the coefficient
// remainder R_beta(rho, y) = beta(rho sinh y) - beta(rho y) with its decay
// diagnostics.

#include <utility>
#include <vector>

#include "kgnf/beta_profile.hh"
#include "kgnf/grid.hh"

namespace kgnf {

struct HyperbolicPoint {
  double rho = 1.0;
  double y = 0.0;
};

// rho = sqrt(t^2 - x^2), y = atanh(x/t).  Requires t > |x|.
HyperbolicPoint cartesian_to_hyperbolic(double t, double x);

// (t, x) = (rho cosh y, rho sinh y).
std::pair<double, double> hyperbolic_to_cartesian(const HyperbolicPoint& p);

// v = rho^{1/2} u and its inverse.
RealField conjugate(const RealField& u, double rho);
RealField unconjugate(const RealField& v, double rho);

// Samples beta(rho * y_j) on the grid.  Warns on stderr when the profile has
// not decayed below 1e-12 at the window edge rho*L.
RealField beta_scaled_field(const BetaProfile& beta, double rho,
                            const GridSpec& g);

struct RemainderField {
  double rho = 1.0;
  RealField values;
};

// beta(rho sinh y) - beta(rho y); exactly zero at y = 0.
RemainderField remainder_r_beta(const BetaProfile& beta, double rho,
                                const GridSpec& g);

struct RBetaRatio {
  int k = 0;     // y-derivative order
  int m = 0;     // rho-derivative order
  double rho = 0.0;
  double ratio = 0.0;    // sup over |y|<=2 of |LHS| / RHS
  double sup_lhs = 0.0;  // sup over |y|<=1 of |d_y^k d_rho^m R_beta|
};

// Measures |d_y^k d_rho^m R_beta| against rho^k rho^{-(2+m)} times the
// weighted tail sup of the profile derivatives, for all k <= k_max and
// m <= m_max, at each rho in the list.
std::vector<RBetaRatio> r_beta_bound_check(const BetaProfile& beta,
                                           const std::vector<double>& rho_list,
                                           int k_max, int m_max);

}  // namespace kgnf
