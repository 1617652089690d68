// Bilinear pseudodifferential operators with rational symbols, the symbol-class
// norms that control them, and the quadratic normal-form correction w1 they
// build.  An operator with symbol b acts on a pair of fields by
//
//   B(u, v)(y) = (2 pi)^{-2} integral b(xi/rho, eta/rho) e^{i y (xi+eta)}
//                                     u_hat(xi) v_hat(eta) dxi deta,
//
// realized here as the exact double sum over grid modes (aliased wrap
// included, so a constant symbol reproduces the pointwise product bit for
// bit).  The quadratic correction
//
//   w1 = rho^{-1/2} [ B1(v, v) + B2(v_dot, v_dot) ]
//
// is chosen so that (d_rho^2 + D_y^2 + 1) w1 reproduces the quadratic source
// alpha0 rho^{-1/2} v^2 up to terms one power of rho smaller; the associated
// residual is computed by centered second differences in rho along the flow.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kgnf/grid.hh"
#include "kgnf/solver.hh"

namespace kgnf {

// Polynomial in two variables with real coefficients, dense storage.
class BivariatePoly {
 public:
  BivariatePoly() = default;  // zero polynomial
  static BivariatePoly constant(double c);
  static BivariatePoly monomial(int i, int j, double c);

  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator-(const BivariatePoly& o) const;
  BivariatePoly operator*(const BivariatePoly& o) const;

  BivariatePoly derivative_xi() const;
  BivariatePoly derivative_eta() const;

  double operator()(double xi, double eta) const;
  double coefficient(int i, int j) const;
  bool is_zero() const;

 private:
  // c_[i][j] multiplies xi^i eta^j; rows may have different lengths
  std::vector<std::vector<double>> c_;
  void ensure(int i, int j);
  friend BivariatePoly trim(BivariatePoly p);
};

// Rational symbol q(xi, eta) / p(xi, eta) with exact partial derivatives by
// the quotient rule; the denominator must not vanish on the real plane.
class BilinearSymbol {
 public:
  BilinearSymbol();  // zero symbol
  BilinearSymbol(BivariatePoly numerator, BivariatePoly denominator);

  double value(double xi, double eta) const;
  // exact d^m_xi d^n_eta of the symbol
  double derivative(int m, int n, double xi, double eta) const;
  // the derivative symbols entering the transport identity
  BilinearSymbol partial_xi() const;
  BilinearSymbol partial_eta() const;
  bool is_zero() const;

 private:
  BivariatePoly num_, den_;
  // numerator of the (m,n) derivative over den_^{m+n+1}
  mutable std::map<std::pair<int, int>, BivariatePoly> dnum_;
  const BivariatePoly& derivative_numerator(int m, int n) const;
};

// Elliptic denominator -(4 xi^2 + 4 eta^2 + 4 xi eta + 3) of the quadratic
// normal-form symbols; bounded below in modulus by c (1 + |xi| + |eta|)^2.
double determinant_polynomial(double xi, double eta);

// Symbols solving the quadratic normal-form system
//   (-1 + 2 xi eta) b1 + 2 (xi^2 + 1)(eta^2 + 1) b2 = alpha0
//   (-1 + 2 xi eta) b2 + 2 b1                       = 0
// explicitly: b1 = alpha0 (1 - 2 xi eta) / (4 xi^2 + 4 eta^2 + 4 xi eta + 3)
// and b2 = 2 alpha0 / (same denominator).
BilinearSymbol symbol_b1(double alpha0);
BilinearSymbol symbol_b2(double alpha0);

// Shell norms ||B||_{M,N} = max over dyadic shells of the shell integral of
// (1+|xi|)^{m-1} (1+|eta|)^{n-1} |d^m_xi d^n_eta b| summed over m <= M,
// n <= N, where the (0,0) shell is the square |xi|,|eta| <= 4 and shell
// (k,l) is the product of dyadic annuli [2^{k-1}, 2^{k+1}] x [2^{l-1},
// 2^{l+1}].  The operator norm combines them as
// ||B||_{1,1} (1 + ln(||B||_{2,2}/||B||_{1,1}))^2.
struct SymbolNorms {
  double shell[3][3] = {};  // ||B||_{M,N} for M, N in 0..2
  double op_norm = 0.0;
};
SymbolNorms symbol_norms(const BilinearSymbol& b);

// Applies the bilinear operator at scale rho by the exact double spectral
// sum.  With dealias_output the top third of the output spectrum is zeroed
// (the production setting); without it the aliased wrap is kept so a
// constant symbol reproduces the grid pointwise product exactly.  If
// aliasing_flag is given it reports whether any appreciable coefficient mass
// wrapped past the Nyquist frequency.
RealField apply_bilinear_pdo(const BilinearSymbol& b, const RealField& u,
                             const RealField& v, double rho,
                             bool dealias_output = true,
                             bool* aliasing_flag = nullptr);

// Two-path verification of the differentiation identities: the semiclassical
// derivative distributes over the pair exactly, and the rho derivative picks
// up the transport terms
//   d_rho B(u,v) = B(d_rho u, v) + B(u, d_rho v)
//                  - rho^{-1} [dB/dxi](D_y u, v) - rho^{-1} [dB/deta](u, D_y v),
// the left side evaluated by centered differences in rho with the fields
// advanced to first order by the supplied rho derivatives.
struct CalculusReport {
  double leib_y_residual = 0.0;    // derivative-distribution identity
  double leib_rho_residual = 0.0;  // transport identity (finite differenced)
};
CalculusReport pdo_calculus_check(const BilinearSymbol& b, const RealField& u,
                                  const RealField& u_rho, const RealField& v,
                                  const RealField& v_rho, double rho,
                                  double drho);

// Empirical constants for the operator estimates: L^infty / L^2 bounds
// against ||u||_{Lp} ||v||_B, the H^1 product rule, and the B-norm algebra
// bound, over random band-limited pairs.  Each ratio divides by the symbol
// operator norm, so a fixed constant across symbols and scales verifies the
// estimates.
struct OperatorBoundReport {
  double op_norm = 0.0;
  double worst_linf_ratio = 0.0;
  double worst_l2_ratio = 0.0;
  double worst_h1_ratio = 0.0;
  double worst_b_ratio = 0.0;
  int trials_used = 0;
};
OperatorBoundReport pdo_operator_bound_check(const BilinearSymbol& b,
                                             const GridSpec& g, double rho,
                                             int trials, unsigned seed);

// Exact cancellations behind the normal form, checked on arbitrary fields:
//   -B1(u,v) + 2 B1(D_y u, D_y v) + 2 B2((D_y^2+1) u, (D_y^2+1) v) = alpha0 u v
//   -B2(u,v) + 2 B2(D_y u, D_y v) + 2 B1(u, v)                     = 0
struct CancellationReport {
  double residual_first = 0.0;
  double residual_second = 0.0;
};
CancellationReport quad_cancellation_check(const RealField& u,
                                           const RealField& v, double alpha0,
                                           double rho);

struct QuadraticNF {
  double rho = 0.0;
  RealField w1;
  RealField w1_dot;
  RealField e_quad;        // residual field (set by quad_error_residual)
  double triple_h1 = 0.0;  // ||(w1, w1_dot, D_y w1)||_{H1}, quadratic mean
  double residual_h1 = 0.0;
  double source_h1 = 0.0;  // ||alpha0 rho^{-1/2} v^2||_{H1}
  bool step_too_coarse = false;
};

// Builds the correction w1 and its exact rho derivative (using the equation
// for v_ddot), with the norm ledger filled in.
QuadraticNF build_w1(const SimulationState& s);

// Advances a copy of the state twice by drho and evaluates
//   E_quad = (d_rho^2 + D_y^2 + 1) w1 - alpha0 rho^{-1/2} v^2
// at the middle slice by a centered second difference; flags the step as too
// coarse when halving drho moves the residual by more than half of itself.
QuadraticNF quad_error_residual(const SimulationState& s, double drho);

}  // namespace kgnf
