#include "kgnf/coordinates.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kgnf/errors.hh"

namespace kgnf {
namespace {

void warn_if_undecayed(const BetaProfile& beta, double edge) {
  if (std::abs(beta.value(edge)) > 1e-12 || std::abs(beta.value(-edge)) > 1e-12)
    std::fprintf(stderr,
                 "warning: profile %s has not decayed at window edge %g\n",
                 beta.tag.c_str(), edge);
}

}  // namespace

HyperbolicPoint cartesian_to_hyperbolic(double t, double x) {
  if (!(t > std::abs(x)))
    throw ConfigError("point outside the forward cone: need t > |x|");
  return {std::sqrt((t - x) * (t + x)), std::atanh(x / t)};
}

std::pair<double, double> hyperbolic_to_cartesian(const HyperbolicPoint& p) {
  return {p.rho * std::cosh(p.y), p.rho * std::sinh(p.y)};
}

RealField conjugate(const RealField& u, double rho) {
  if (rho < 1.0) throw ConfigError("conjugate requires rho >= 1");
  RealField v(u.grid, rho);
  const double w = std::sqrt(rho);
  for (int j = 0; j < u.size(); ++j) v.values[j] = w * u.values[j];
  return v;
}

RealField unconjugate(const RealField& v, double rho) {
  if (rho < 1.0) throw ConfigError("unconjugate requires rho >= 1");
  RealField u(v.grid, rho);
  const double w = 1.0 / std::sqrt(rho);
  for (int j = 0; j < v.size(); ++j) u.values[j] = w * v.values[j];
  return u;
}

RealField beta_scaled_field(const BetaProfile& beta, double rho,
                            const GridSpec& g) {
  warn_if_undecayed(beta, rho * g.half_width);
  RealField out(g, rho);
  for (int j = 0; j < g.point_count; ++j)
    out.values[j] = beta.value(rho * g.point(j));
  return out;
}

RemainderField remainder_r_beta(const BetaProfile& beta, double rho,
                                const GridSpec& g) {
  warn_if_undecayed(beta, rho * g.half_width);
  RemainderField out{rho, RealField(g, rho)};
  for (int j = 0; j < g.point_count; ++j) {
    double y = g.point(j);
    out.values.values[j] =
        beta.value(rho * std::sinh(y)) - beta.value(rho * y);
  }
  return out;
}

namespace {

// d_y^k d_rho^m [beta(rho sinh y) - beta(rho y)] for k, m <= 1.
double remainder_derivative(const BetaProfile& b, double rho, double y, int k,
                            int m) {
  const double sh = std::sinh(y), ch = std::cosh(y);
  auto b1 = [&](double z) { return beta_derivative(b, z, 1); };
  auto b2 = [&](double z) { return beta_derivative(b, z, 2); };
  if (k == 0 && m == 0) return b.value(rho * sh) - b.value(rho * y);
  if (k == 1 && m == 0) return rho * (ch * b1(rho * sh) - b1(rho * y));
  if (k == 0 && m == 1) return sh * b1(rho * sh) - y * b1(rho * y);
  // k == 1, m == 1
  return ch * b1(rho * sh) + rho * sh * ch * b2(rho * sh) - b1(rho * y) -
         rho * y * b2(rho * y);
}

// Tail sup of |beta^(l)(z)| (1+|z|)^{3+m} over |z| >= a, tabulated by suffix
// maxima on a uniform |z| grid.
struct TailSup {
  double dz = 0.0;
  std::vector<double> table;  // table[i] = sup over |z| >= i*dz

  double at(double a) const {
    size_t i = static_cast<size_t>(std::ceil(a / dz));
    if (i >= table.size()) return 0.0;
    return table[i];
  }
};

TailSup build_tail_sup(const BetaProfile& b, int l, int m, double z_max) {
  TailSup t;
  t.dz = 0.05;
  size_t n = static_cast<size_t>(z_max / t.dz) + 2;
  t.table.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double z = i * t.dz;
    double v = l == 0 ? std::abs(b.value(z))
                      : std::abs(beta_derivative(b, z, l));
    double vm = l == 0 ? std::abs(b.value(-z))
                       : std::abs(beta_derivative(b, -z, l));
    t.table[i] = std::max(v, vm) * std::pow(1.0 + z, 3 + m);
  }
  for (size_t i = n - 1; i-- > 0;)
    t.table[i] = std::max(t.table[i], t.table[i + 1]);
  return t;
}

}  // namespace

std::vector<RBetaRatio> r_beta_bound_check(const BetaProfile& beta,
                                           const std::vector<double>& rho_list,
                                           int k_max, int m_max) {
  if (k_max > 1 || m_max > 1 || k_max < 0 || m_max < 0)
    throw ConfigError("r_beta_bound_check covers k, m in {0, 1}");
  double rho_top = 1.0;
  for (double r : rho_list) rho_top = std::max(rho_top, r);
  const double z_max = 2.0 * rho_top + beta.support_radius + 5.0;

  // tail sup tables for every derivative order and both weight powers
  std::vector<std::vector<TailSup>> tails(4);
  for (int l = 0; l <= k_max + 1 + m_max; ++l)
    for (int m = 0; m <= m_max; ++m)
      tails[l].push_back(build_tail_sup(beta, l, m, z_max));

  std::vector<RBetaRatio> out;
  const int n_y = 201;
  for (double rho : rho_list) {
    for (int k = 0; k <= k_max; ++k) {
      for (int m = 0; m <= m_max; ++m) {
        RBetaRatio rec{k, m, rho, 0.0, 0.0};
        double rhs_at_origin = 0.0;
        for (int l = 0; l <= k + 1 + m; ++l)
          rhs_at_origin += tails[l][m].at(0.0);
        rhs_at_origin *= std::pow(rho, k) * std::pow(rho, -(2.0 + m));
        for (int iy = 0; iy < n_y; ++iy) {
          double y = -2.0 + 4.0 * iy / (n_y - 1);
          double lhs = std::abs(remainder_derivative(beta, rho, y, k, m));
          if (std::abs(y) <= 1.0) rec.sup_lhs = std::max(rec.sup_lhs, lhs);
          double tail = 0.0;
          for (int l = 0; l <= k + 1 + m; ++l)
            tail += tails[l][m].at(rho * std::abs(y));
          double rhs = std::pow(rho, k) * std::pow(rho, -(2.0 + m)) * tail;
          if (rhs < 1e-10 * rhs_at_origin) continue;  // below resolvable scale
          rec.ratio = std::max(rec.ratio, lhs / rhs);
        }
        out.push_back(rec);
      }
    }
  }
  return out;
}

}  // namespace kgnf
