#include "kgnf/resonant_parametrix.hh"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "kgnf/errors.hh"
#include "kgnf/littlewood_paley.hh"
#include "kgnf/spectral.hh"

namespace kgnf {
namespace {

constexpr double kPi = 3.14159265358979323846;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267,
                                -0.5255324099163290, -0.1834346424956498,
                                0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745,
                                  0.3137066458778873, 0.3626837833783620,
                                  0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

// Antiderivative of sqrt(z^2 + a^2) / z for z > 0 (a = |xi| fixed).
double phase_antiderivative(double z, double a) {
  double r = std::sqrt(z * z + a * a);
  if (a == 0.0) return z;
  return r - a * std::log((a + r) / z);
}

struct SpectrumScan {
  double sup = 0.0;
  double zeta_min = 0.0;  // spectrum vanishes below this frequency
  double zeta_max = 0.0;  // and beyond this one
};

SpectrumScan scan_spectrum(const std::function<cplx(double)>& hat) {
  SpectrumScan s;
  const double fine_step = 1.0 / 256.0;
  std::vector<double> moduli;
  moduli.reserve(16 * 256 + 1);
  for (int k = 0; k <= 16 * 256; ++k) {
    double z = k * fine_step;
    double m = std::max(std::abs(hat(z)), std::abs(hat(-z)));
    moduli.push_back(m);
    s.sup = std::max(s.sup, m);
  }
  for (double z = 16.25; z <= 64.0; z += 0.25)
    s.sup = std::max(s.sup, std::max(std::abs(hat(z)), std::abs(hat(-z))));
  if (s.sup == 0.0) return s;
  const double floor = 1e-9 * s.sup;
  // Innermost frequency carrying mass.
  s.zeta_min = 16.0;
  for (size_t k = 0; k < moduli.size(); ++k) {
    if (moduli[k] > floor) {
      s.zeta_min = k > 0 ? (k - 1) * fine_step : 0.0;
      break;
    }
  }
  // Outermost frequency carrying mass: expand, then walk back down.
  double far = 64.0;
  while (far < 4096.0 &&
         std::max(std::abs(hat(far)), std::abs(hat(-far))) > floor)
    far *= 2.0;
  s.zeta_max = 0.25;
  for (double z = far; z > 0.0; z -= 0.25) {
    if (std::max(std::abs(hat(z)), std::abs(hat(-z))) > floor) {
      s.zeta_max = z + 0.25;
      break;
    }
  }
  return s;
}

}  // namespace

double phase_psi(double rho, double s, double xi) {
  if (!(s >= 1.0 - 1e-12) || !(s <= rho * (1.0 + 1e-12)))
    throw ConfigError("phase requires 1 <= s <= rho");
  double a = std::abs(xi);
  return phase_antiderivative(rho, a) - phase_antiderivative(s, a);
}

double kernel_u(double rho, double s, double xi) {
  double r = xi / s;
  return std::sin(phase_psi(rho, s, xi)) / std::sqrt(r * r + 1.0);
}

double parametrix_window(double zeta) {
  return lp_theta(0.5 * zeta) * (1.0 - lp_theta(4.0 * zeta));
}

ParametrixKernel build_k(int n, const BetaProfile& beta, const GridSpec& g,
                         double rho) {
  if (n != 1 && n != 3) throw ConfigError("kernel index must be 1 or 3");
  if (!(rho >= 1.0)) throw ConfigError("kernel construction needs rho >= 1");
  ParametrixKernel out;
  out.n = n;
  out.rho = rho;
  out.k_hat = SpectralField(g);
  SpectrumScan scan = scan_spectrum(beta.transform);
  if (scan.sup == 0.0) {
    out.k = ComplexField(g, rho);
    return out;
  }
  if (scan.zeta_min < 0.125)
    throw ConfigError(
        "profile spectrum reaches too close to zero frequency for the kernel "
        "construction; use an annular profile");
  if (rho * scan.zeta_max > g.nyquist())
    throw ConfigError(
        "grid Nyquist frequency is below the kernel's frequency support; "
        "increase the point count or reduce rho");

  const double lo_time = std::max(1.0, 0.25 * rho);
  const double tol = 1e-8 * scan.sup;
  const auto& hat = beta.transform;
  for (int i = 0; i < g.point_count; ++i) {
    const double xi = g.frequency(i);
    const double axi = std::abs(xi);
    // The integrand vanishes unless xi/s lies in the spectrum annulus and
    // chi1(s/rho) is active.
    const double a = std::max(lo_time, axi / scan.zeta_max);
    const double b = std::min(rho, scan.zeta_min > 0.0 ? axi / scan.zeta_min
                                                       : rho);
    if (!(b > a)) {
      out.k_hat.coefficients[i] = cplx{0.0, 0.0};
      continue;
    }
    auto integrate = [&](int panels) {
      cplx acc{0.0, 0.0};
      const double w = (b - a) / panels;
      for (int p = 0; p < panels; ++p) {
        const double c0 = a + p * w + 0.5 * w;
        for (int q = 0; q < 8; ++q) {
          const double s = c0 + 0.5 * w * kGlNodes[q];
          const cplx source = hat(xi / s) / s;
          if (source == cplx{0.0, 0.0}) continue;
          acc += 0.5 * w * kGlWeights[q] *
                 std::exp(cplx{0.0, n * s}) * kernel_u(rho, s, xi) * source *
                 parametrix_window(s / rho);
        }
      }
      return acc;
    };
    int panels = std::max(1, (int)std::ceil((b - a) / (kPi / 6.0)));
    cplx coarse = integrate(panels);
    bool converged = false;
    for (int doubling = 0; doubling < 8; ++doubling) {
      panels *= 2;
      cplx fine = integrate(panels);
      if (std::abs(fine - coarse) <= tol) {
        coarse = fine;
        converged = true;
        break;
      }
      coarse = fine;
    }
    if (!converged)
      throw NumericalFailure(
          "time quadrature for the oscillatory kernel did not converge");
    out.k_hat.coefficients[i] = coarse;
  }
  out.k = dft_inverse(out.k_hat);
  out.k.slice_time = rho;
  return out;
}

ParametrixResidual parametrix_residual(int n, const BetaProfile& beta,
                                       const GridSpec& g, double rho,
                                       double drho) {
  if (!(drho > 0.0) || drho > 0.05)
    throw ConfigError("residual step must lie in (0, 0.05]");
  if (!(rho - drho >= 2.0))
    throw ConfigError("kernel residual needs rho - drho >= 2");

  ParametrixKernel k0 = build_k(n, beta, g, rho);
  ParametrixKernel kp = build_k(n, beta, g, rho + drho);
  ParametrixKernel km = build_k(n, beta, g, rho - drho);
  ParametrixKernel kph = build_k(n, beta, g, rho + 0.5 * drho);
  ParametrixKernel kmh = build_k(n, beta, g, rho - 0.5 * drho);

  ComplexField kyy = derivative_y(k0.k, 2);
  const cplx phase = std::exp(cplx{0.0, n * rho});
  auto defect = [&](const ComplexField& plus, const ComplexField& minus,
                    double d) {
    ComplexField e(g, rho);
    for (int i = 0; i < g.point_count; ++i) {
      cplx second = (plus.values[i] - 2.0 * k0.k.values[i] + minus.values[i]) /
                    (d * d);
      e.values[i] = second + k0.k.values[i] - kyy.values[i] / (rho * rho) -
                    phase * beta.value(rho * g.point(i));
    }
    return e;
  };
  auto windowed_sup = [&](const ComplexField& f) {
    double m = 0.0;
    for (int i = 0; i < g.point_count; ++i)
      if (std::abs(g.point(i)) <= 1.0)
        m = std::max(m, std::abs(f.values[i]));
    return m;
  };

  ParametrixResidual r;
  r.n = n;
  r.rho = rho;
  r.e = defect(kp.k, km.k, drho);
  r.windowed_sup = windowed_sup(r.e);
  double fine_sup = windowed_sup(defect(kph.k, kmh.k, 0.5 * drho));
  r.step_too_coarse =
      std::abs(r.windowed_sup - fine_sup) > 0.5 * fine_sup + 1e-14;
  r.kernel_windowed_sup = windowed_sup(k0.k);

  // Dyadic-block norm of the windowed kernel triple.
  ComplexField chik(g, rho), drk(g, rho);
  for (int i = 0; i < g.point_count; ++i) {
    double chi = lp_theta(g.point(i));
    chik.values[i] = chi * k0.k.values[i];
    drk.values[i] =
        chi * (kp.k.values[i] - km.k.values[i]) / (2.0 * drho);
  }
  ComplexField dychik = derivative_y(chik, 1);
  for (int i = 0; i < g.point_count; ++i) dychik.values[i] /= rho;
  double triple = 0.0;
  for (const ComplexField* f : {&chik, &dychik, &drk}) {
    RealField re(g, rho), im(g, rho);
    for (int i = 0; i < g.point_count; ++i) {
      re.values[i] = f->values[i].real();
      im.values[i] = f->values[i].imag();
    }
    triple = std::max({triple, b_infinity_norm(re, rho),
                       b_infinity_norm(im, rho)});
  }
  r.triple_b_norm = triple;
  return r;
}

}  // namespace kgnf
