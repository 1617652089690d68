#pragma once

// Dyadic frequency decomposition built from one fixed cutoff family.
//
// The base cutoff theta is the quintic smoothstep s(t) = 6t^5 - 15t^4 + 10t^3
// evaluated at t = clamp(2 - r, 0, 1), so theta(r) = 1 for r <= 1 and
// theta(r) = 0 for r >= 2, with two continuous derivatives.  Low-pass symbols
// are p_{<=lambda}(xi) = theta(|xi|/lambda); band symbols are
// p_lambda = p_{<=2 lambda} - p_{<=lambda}, supported in lambda <= |xi| <=
// 4 lambda.  Because consecutive bands share the exact same low-pass values,
// the ladder telescopes exactly on the discrete spectrum.

#include <vector>

#include "kgnf/grid.hh"

namespace kgnf {

double lp_theta(double r);
double lp_theta_prime(double r);

enum class ProjKind { band, low, high };

struct ProjectionKey {
  ProjKind kind;
  double threshold;  // lambda >= 1
};

// Pointwise symbol of the key at frequency xi.
double projection_symbol(const ProjectionKey& key, double xi);

// Spectral multiplication by the key's symbol.  Throws ConfigError when the
// threshold is below 1.
RealField project(const RealField& f, const ProjectionKey& key);
ComplexField project(const ComplexField& f, const ProjectionKey& key);

// Band thresholds 1, 2, 4, ... whose union with the lambda=1 low-pass covers
// the whole resolved spectrum (last band satisfies 2*lambda >= Nyquist).
std::vector<double> reconstruction_band_thresholds(const GridSpec& g);

// Dyadic thresholds 1, 2, 4, ... up to limit (inclusive).
std::vector<double> dyadic_thresholds_up_to(double limit);

struct BernsteinReport {
  bool present = false;   // false when the band content vanishes
  double ratio_l2 = 0.0;  // ||P_l f||_inf / (l^{1/2} ||P_l f||_2)
  double ratio_deriv = 0.0;  // ||P_l f||_inf / (l^{-1/2} ||P_l df/dy||_2)
};

BernsteinReport bernstein_check(const RealField& f, double lambda);

// ||P_{<=rho} f||_inf + sum over dyadic lambda in [rho, Nyquist] of
// max(ln(lambda/rho), 1) * ||P_lambda f||_inf.  Requires rho >= 1.
double b_infinity_norm(const RealField& f, double rho);

struct AlgebraCheck {
  bool present = false;
  double ratio = 0.0;  // ||uv||_B / (||u||_B ||v||_B)
};

AlgebraCheck b_norm_algebra_check(const RealField& u, const RealField& v,
                                  double rho);

struct HighLowSplit {
  RealField low;
  RealField high;
  bool report_present = false;
  double report = 0.0;  // rho^{sigma/2} ||high||_inf / ||f||_{H1}
};

// low = P_{<= rho^sigma} f, high = f - low (exact complement).
// Requires sigma in (0, 1).
HighLowSplit high_low_split(const RealField& f, double rho, double sigma);

// The rho-derivative of the low-pass projection at threshold c*rho:
// d/drho P_{<= c rho} f = -(1/rho) * [r theta'(r)]|_{r = |xi|/(c rho)} f.
RealField projection_rho_commutator(const RealField& f, double rho, double c);

}  // namespace kgnf
