#include "kgnf/littlewood_paley.hh"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "kgnf/errors.hh"
#include "kgnf/spectral.hh"

namespace kgnf {
namespace {

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double u = t * (t - 1.0);
  return 30.0 * u * u;
}

void require_threshold(const ProjectionKey& key) {
  if (!(key.threshold >= 1.0))
    throw ConfigError("projection threshold must be at least 1");
}

template <typename FieldT>
FieldT project_impl(const FieldT& f, const ProjectionKey& key) {
  require_threshold(key);
  SpectralField F = dft_forward(f);
  for (int i = 0; i < f.grid.point_count; ++i)
    F.coefficients[i] *= projection_symbol(key, f.grid.frequency(i));
  if constexpr (std::is_same_v<FieldT, RealField>) {
    FieldT out = dft_inverse_real(F);
    out.slice_time = f.slice_time;
    return out;
  } else {
    FieldT out = dft_inverse(F);
    out.slice_time = f.slice_time;
    return out;
  }
}

}  // namespace

double lp_theta(double r) { return smoothstep(std::clamp(2.0 - std::abs(r), 0.0, 1.0)); }

double lp_theta_prime(double r) {
  double a = std::abs(r);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  double d = -smoothstep_prime(2.0 - a);
  return r < 0.0 ? -d : d;
}

double projection_symbol(const ProjectionKey& key, double xi) {
  double a = std::abs(xi);
  switch (key.kind) {
    case ProjKind::low:
      return lp_theta(a / key.threshold);
    case ProjKind::high:
      return 1.0 - lp_theta(a / key.threshold);
    case ProjKind::band:
      return lp_theta(a / (2.0 * key.threshold)) - lp_theta(a / key.threshold);
  }
  return 0.0;
}

RealField project(const RealField& f, const ProjectionKey& key) {
  return project_impl(f, key);
}

ComplexField project(const ComplexField& f, const ProjectionKey& key) {
  return project_impl(f, key);
}

std::vector<double> reconstruction_band_thresholds(const GridSpec& g) {
  std::vector<double> out;
  double nyq = g.nyquist();
  double lambda = 1.0;
  while (true) {
    out.push_back(lambda);
    if (2.0 * lambda >= nyq) break;
    lambda *= 2.0;
  }
  return out;
}

std::vector<double> dyadic_thresholds_up_to(double limit) {
  std::vector<double> out;
  for (double lambda = 1.0; lambda <= limit; lambda *= 2.0)
    out.push_back(lambda);
  return out;
}

BernsteinReport bernstein_check(const RealField& f, double lambda) {
  RealField band = project(f, {ProjKind::band, lambda});
  BernsteinReport rep;
  double sup = linf_norm(band);
  double l2 = l2_norm(band);
  double dl2 = l2_norm(derivative_y(band, 1));
  if (l2 < 1e-300 || dl2 < 1e-300) return rep;
  rep.present = true;
  rep.ratio_l2 = sup / (std::sqrt(lambda) * l2);
  rep.ratio_deriv = sup / (dl2 / std::sqrt(lambda));
  return rep;
}

double b_infinity_norm(const RealField& f, double rho) {
  if (rho < 1.0) throw ConfigError("b_infinity_norm requires rho >= 1");
  double total = linf_norm(project(f, {ProjKind::low, rho}));
  double nyq = f.grid.nyquist();
  double lambda = 1.0;
  while (lambda < rho) lambda *= 2.0;
  for (; lambda <= nyq; lambda *= 2.0) {
    double weight = std::max(std::log(lambda / rho), 1.0);
    total += weight * linf_norm(project(f, {ProjKind::band, lambda}));
  }
  return total;
}

AlgebraCheck b_norm_algebra_check(const RealField& u, const RealField& v,
                                  double rho) {
  AlgebraCheck out;
  double nu = b_infinity_norm(u, rho);
  double nv = b_infinity_norm(v, rho);
  if (nu < 1e-300 || nv < 1e-300) return out;
  RealField prod(u.grid, u.slice_time);
  for (int j = 0; j < u.size(); ++j)
    prod.values[j] = u.values[j] * v.values[j];
  out.present = true;
  out.ratio = b_infinity_norm(prod, rho) / (nu * nv);
  return out;
}

HighLowSplit high_low_split(const RealField& f, double rho, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw ConfigError("high_low_split requires sigma in (0,1)");
  double cut = std::pow(rho, sigma);
  HighLowSplit out{project(f, {ProjKind::low, cut}), RealField(f.grid, f.slice_time)};
  for (int j = 0; j < f.size(); ++j)
    out.high.values[j] = f.values[j] - out.low.values[j];
  double h1 = h1_norm(f);
  if (h1 >= 1e-300) {
    out.report_present = true;
    out.report = std::pow(rho, 0.5 * sigma) * linf_norm(out.high) / h1;
  }
  return out;
}

RealField projection_rho_commutator(const RealField& f, double rho, double c) {
  if (!(c * rho >= 1.0))
    throw ConfigError("commutator threshold c*rho must be at least 1");
  SpectralField F = dft_forward(f);
  for (int i = 0; i < f.grid.point_count; ++i) {
    double r = std::abs(f.grid.frequency(i)) / (c * rho);
    F.coefficients[i] *= -(r * lp_theta_prime(r)) / rho;
  }
  RealField out = dft_inverse_real(F);
  out.slice_time = f.slice_time;
  return out;
}

}  // namespace kgnf
