#include "kgnf/spectral.hh"

#include <algorithm>
#include <cmath>

#include "kgnf/errors.hh"
#include "kgnf/fft.hh"

namespace kgnf {
namespace {

// F_k = h (-1)^k DFT_k maps the raw DFT to the integral convention: with
// y_j = -L + j h and xi_k = pi k / L, e^{-i xi_k y_j} = (-1)^k e^{-2pi i jk/N}.
// Slot parity equals signed-index parity because N is even.
SpectralField forward_impl(const std::vector<cplx>& samples,
                           const GridSpec& g) {
  SpectralField F(g);
  std::vector<cplx> raw;
  dft_raw_forward(samples, raw);
  const double h = g.spacing();
  for (int i = 0; i < g.point_count; ++i)
    F.coefficients[i] = (i % 2 == 0 ? h : -h) * raw[i];
  return F;
}

std::vector<cplx> inverse_impl(const SpectralField& F) {
  const GridSpec& g = F.grid;
  std::vector<cplx> scaled(g.point_count);
  const double w = 1.0 / (2.0 * g.half_width);
  for (int i = 0; i < g.point_count; ++i)
    scaled[i] = (i % 2 == 0 ? w : -w) * F.coefficients[i];
  std::vector<cplx> out;
  dft_raw_backward(scaled, out);
  return out;
}

void require_rho(double rho) {
  if (rho < 1.0) throw ConfigError("semiclassical transform requires rho >= 1");
}

}  // namespace

SpectralField dft_forward(const RealField& f) {
  std::vector<cplx> samples(f.values.begin(), f.values.end());
  return forward_impl(samples, f.grid);
}

SpectralField dft_forward(const ComplexField& f) {
  return forward_impl(f.values, f.grid);
}

ComplexField dft_inverse(const SpectralField& F) {
  ComplexField f(F.grid);
  f.values = inverse_impl(F);
  return f;
}

RealField dft_inverse_real(const SpectralField& F) {
  RealField f(F.grid);
  std::vector<cplx> out = inverse_impl(F);
  for (int j = 0; j < f.size(); ++j) f.values[j] = out[j].real();
  return f;
}

SpectralField semiclassical_forward(const RealField& f, double rho) {
  return semiclassical_forward(to_complex(f), rho);
}

SpectralField semiclassical_forward(const ComplexField& f, double rho) {
  require_rho(rho);
  SpectralField F = dft_forward(f);
  for (auto& c : F.coefficients) c *= rho;
  F.convention = SpectralConvention::semiclassical;
  F.rho = rho;
  return F;
}

ComplexField semiclassical_inverse(const SpectralField& F) {
  SpectralField standard = F;
  if (F.convention == SpectralConvention::semiclassical) {
    for (auto& c : standard.coefficients) c /= F.rho;
    standard.convention = SpectralConvention::standard;
  }
  return dft_inverse(standard);
}

namespace {

template <typename FieldT>
SpectralField derivative_spectrum(const FieldT& f, int order) {
  SpectralField F = dft_forward(f);
  const GridSpec& g = f.grid;
  for (int i = 0; i < g.point_count; ++i) {
    cplx m = std::pow(cplx{0.0, g.frequency(i)}, order);
    F.coefficients[i] *= m;
  }
  if (order % 2 != 0) F.coefficients[g.point_count / 2] = 0.0;
  return F;
}

}  // namespace

RealField derivative_y(const RealField& f, int order) {
  return dft_inverse_real(derivative_spectrum(f, order));
}

ComplexField derivative_y(const ComplexField& f, int order) {
  return dft_inverse(derivative_spectrum(f, order));
}

ComplexField semiclassical_derivative(const RealField& f, double rho,
                                      int order) {
  return semiclassical_derivative(to_complex(f), rho, order);
}

ComplexField semiclassical_derivative(const ComplexField& f, double rho,
                                      int order) {
  require_rho(rho);
  SpectralField F = dft_forward(f);
  const GridSpec& g = f.grid;
  for (int i = 0; i < g.point_count; ++i) {
    double m = std::pow(g.frequency(i) / rho, order);
    F.coefficients[i] *= m;
  }
  if (order % 2 != 0) F.coefficients[g.point_count / 2] = 0.0;
  return dft_inverse(F);
}

void dealias_spectrum(SpectralField& F) {
  const int n = F.grid.point_count;
  const int kmax = n / 3;
  for (int i = 0; i < n; ++i)
    if (std::abs(F.grid.signed_index(i)) > kmax) F.coefficients[i] = 0.0;
}

RealField dealias_two_thirds(const RealField& f) {
  SpectralField F = dft_forward(f);
  dealias_spectrum(F);
  RealField out = dft_inverse_real(F);
  out.slice_time = f.slice_time;
  return out;
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(f.grid.spacing() * s);
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const cplx& v : f.values) s += std::norm(v);
  return std::sqrt(f.grid.spacing() * s);
}

double linf_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double linf_norm(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double h1_norm(const RealField& f) { return l2_norm(f) + l2_norm(derivative_y(f, 1)); }

double h1_norm(const ComplexField& f) {
  return l2_norm(f) + l2_norm(derivative_y(f, 1));
}

double spectral_l2_norm(const SpectralField& F) {
  double s = 0.0;
  for (const cplx& c : F.coefficients) s += std::norm(c);
  double scale = 1.0 / (2.0 * F.grid.half_width);
  if (F.convention == SpectralConvention::semiclassical) scale /= F.rho * F.rho;
  return std::sqrt(scale * s);
}

cplx eval_at(const SpectralField& F, double y) {
  const GridSpec& g = F.grid;
  cplx acc{0.0, 0.0};
  const bool semi = F.convention == SpectralConvention::semiclassical;
  for (int i = 0; i < g.point_count; ++i) {
    double xi = g.frequency(i);
    cplx c = F.coefficients[i];
    if (semi) c /= F.rho;
    acc += c * std::exp(cplx{0.0, xi * y});
  }
  return acc / (2.0 * g.half_width);
}

RealField random_band_limited(const GridSpec& g, double max_freq,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField F(g);
  const double scale = 2.0 * g.half_width / std::sqrt(2.0 * g.point_count);
  for (int k = 1; k < g.point_count / 2; ++k) {
    if (std::abs(g.frequency(k)) > max_freq) continue;
    cplx c{gauss(rng), gauss(rng)};
    F.at_signed(k) = scale * c;
    F.at_signed(-k) = scale * std::conj(c);
  }
  F.at_signed(0) = scale * gauss(rng);
  return dft_inverse_real(F);
}

}  // namespace kgnf
