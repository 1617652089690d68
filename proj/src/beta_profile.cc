#include "kgnf/beta_profile.hh"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "kgnf/errors.hh"
#include "kgnf/littlewood_paley.hh"
#include "kgnf/spectral.hh"

namespace kgnf {
namespace {

constexpr double kPi = 3.14159265358979323846;

double scan_support(const std::function<double(double)>& value, double z_max) {
  // walk inward from far out; return the first |z| where values exceed 1e-12
  for (double z = z_max; z > 0.0; z -= 1.0) {
    if (std::abs(value(z)) > 1e-12 || std::abs(value(-z)) > 1e-12)
      return z + 2.0;
  }
  return 1.0;
}

}  // namespace

BetaProfile beta_zero() {
  return {"zero", [](double) { return 0.0; }, [](double) { return cplx{0.0, 0.0}; },
          1.0};
}

BetaProfile beta_gaussian() {
  return {"gaussian", [](double z) { return std::exp(-z * z); },
          [](double zeta) {
            return cplx{std::sqrt(kPi) * std::exp(-0.25 * zeta * zeta), 0.0};
          },
          5.5};
}

BetaProfile beta_gaussian_dd() {
  return {"gaussian_dd",
          [](double z) { return (4.0 * z * z - 2.0) * std::exp(-z * z); },
          [](double zeta) {
            return cplx{-zeta * zeta * std::sqrt(kPi) *
                            std::exp(-0.25 * zeta * zeta),
                        0.0};
          },
          6.0};
}

BetaProfile beta_sech_pow(int p) {
  if (p == 1) {
    return {"sech", [](double z) { return 1.0 / std::cosh(z); },
            [](double zeta) {
              return cplx{kPi / std::cosh(0.5 * kPi * zeta), 0.0};
            },
            29.0};
  }
  if (p == 2) {
    return {"sech2",
            [](double z) {
              double s = 1.0 / std::cosh(z);
              return s * s;
            },
            [](double zeta) {
              if (std::abs(zeta) < 1e-8) {
                double a = 0.5 * kPi * zeta;
                return cplx{2.0 / (1.0 + a * a / 6.0), 0.0};
              }
              return cplx{kPi * zeta / std::sinh(0.5 * kPi * zeta), 0.0};
            },
            15.0};
  }
  throw ConfigError("beta_sech_pow supports p = 1 or 2");
}

namespace {

double bump(double t) {
  double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

// Lazily built sample table for the inverse transform of a compactly
// supported spectrum; outside [-radius, radius] the function is below the
// support-scan floor and reads as zero.  Only z >= 0 is stored (the profile
// is even) and the samples are mirror-symmetrized so lookups at +-z agree
// exactly.
struct BumpTable {
  std::once_flag built;
  double radius = 0.0;
  double spacing = 0.0;
  std::vector<double> samples;  // f(m * spacing), m = 0..M
};

// Build a profile from a real, even transform supported in |zeta| <=
// zeta_max.  The value callable synthesizes beta(z) from the transform.
BetaProfile synthesized_profile(const std::string& tag,
                                std::function<double(double)> hat_even,
                                double zeta_max) {
  if (!(zeta_max > 0.0))
    throw ConfigError("transform support radius must be positive");
  auto hat = [hat_even](double zeta) { return cplx{hat_even(zeta), 0.0}; };
  // Tabulate the transform once; the trapezoid sum on a C-infinity compactly
  // supported integrand converges beyond all orders, so the inversion below is
  // exact to rounding for |z| well inside 2*pi/dzeta.
  const int n = 2048;
  auto nodes = std::make_shared<std::vector<double>>();
  auto weights = std::make_shared<std::vector<double>>();
  const double dzeta = zeta_max / n;
  for (int j = 0; j <= n; ++j) {
    double zeta = j * dzeta;
    nodes->push_back(zeta);
    double w = (j == 0 || j == n) ? 0.5 : 1.0;
    weights->push_back(w * hat_even(zeta) * dzeta / kPi);
  }
  auto direct = [nodes, weights](double z) {
    double acc = 0.0;
    for (size_t j = 0; j < nodes->size(); ++j)
      acc += (*weights)[j] * std::cos(z * (*nodes)[j]);
    return acc;
  };
  const double radius = scan_support(direct, 2000.0);
  // Cubic interpolation on a grid fine enough that the error sits below the
  // 1e-12 support-scan floor.  The table is synthesized in one shot by
  // sampling the transform on a frequency lattice and inverting; with the
  // half-period well beyond the scanned support the periodization aliases
  // are below the same floor.
  auto table = std::make_shared<BumpTable>();
  table->radius = radius + 126.0;  // keep the sub-floor tail out to the edge
  auto value = [hat_even, table, radius, zeta_max](double z) {
    std::call_once(table->built, [&] {
      const double half = std::ceil(radius) + 136.0;
      const double target = 1.0 / (2048.0 * std::max(1.0, 0.5 * zeta_max));
      int n = 2;
      while (2.0 * half / n > target) n *= 2;
      GridSpec g(half, n);
      SpectralField F(g);
      for (int i = 0; i < n; ++i)
        F.coefficients[i] = cplx{hat_even(g.frequency(i)), 0.0};
      RealField f = dft_inverse_real(F);
      table->spacing = g.spacing();
      int m_top = static_cast<int>((radius + 130.0) / g.spacing());
      table->samples.resize(m_top + 1);
      for (int m = 0; m <= m_top; ++m)
        table->samples[m] =
            0.5 * (f.values[n / 2 + m] + f.values[n / 2 - m]);
    });
    double a = std::abs(z);
    if (a >= table->radius) return 0.0;
    double t = a / table->spacing;
    int m0 = static_cast<int>(t);
    t -= m0;
    const auto& s = table->samples;
    double fm = m0 > 0 ? s[m0 - 1] : s[1];  // even reflection through zero
    double f0 = s[m0], f1 = s[m0 + 1], f2 = s[m0 + 2];
    // Catmull-Rom weights
    return f0 + 0.5 * t * (f1 - fm + t * (2.0 * fm - 5.0 * f0 + 4.0 * f1 - f2 +
                                          t * (3.0 * (f0 - f1) + f2 - fm)));
  };
  return {tag, value, hat, radius};
}

BetaProfile bump_profile(const std::string& tag, double support, bool dd) {
  if (!(support > 0.0)) throw ConfigError("bump support must be positive");
  auto hat = [support, dd](double zeta) {
    double b = bump(zeta / support);
    if (dd) b *= zeta * zeta;
    return b;
  };
  return synthesized_profile(tag, hat, support);
}

}  // namespace

BetaProfile beta_fourier_bump(double support) {
  return bump_profile("fourier_bump", support, false);
}

BetaProfile beta_fourier_bump_dd(double support) {
  return bump_profile("fourier_bump_dd", support, true);
}

BetaProfile beta_fourier_annulus(double center, double halfwidth) {
  if (!(halfwidth > 0.0) || !(center > halfwidth))
    throw ConfigError(
        "annulus profile needs center > halfwidth > 0 so the spectrum stays "
        "away from zero frequency");
  auto hat = [center, halfwidth](double zeta) {
    return bump((std::abs(zeta) - center) / halfwidth);
  };
  return synthesized_profile("fourier_annulus", hat, center + halfwidth);
}

BetaProfile beta_lowpass(const BetaProfile& b, double cutoff) {
  if (!(cutoff > 0.0)) throw ConfigError("low-pass cutoff must be positive");
  // The synthesis assumes a real, even transform; reject anything else.
  for (double probe : {0.31, 0.77, 1.93}) {
    cplx p = b.transform(probe), m = b.transform(-probe);
    if (std::abs(p.imag()) > 1e-12 * (1.0 + std::abs(p)) ||
        std::abs(p - m) > 1e-12 * (1.0 + std::abs(p)))
      throw ConfigError(
          "low-pass piece requires a profile with a real even transform");
  }
  auto hat = [inner = b.transform, cutoff](double zeta) {
    return lp_theta(zeta / cutoff) * inner(zeta).real();
  };
  return synthesized_profile(b.tag + "_lowpass", hat, 2.0 * cutoff);
}

BetaProfile beta_translate(const BetaProfile& b, double shift) {
  auto value = [inner = b.value, shift](double z) { return inner(z - shift); };
  auto hat = [inner = b.transform, shift](double zeta) {
    return std::exp(cplx{0.0, -shift * zeta}) * inner(zeta);
  };
  return {b.tag + "_shift", value, hat, b.support_radius + std::abs(shift)};
}

double beta_derivative(const BetaProfile& b, double z, int order) {
  const auto& f = b.value;
  switch (order) {
    case 1: {
      const double h = 1e-3;
      return (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) /
             (12 * h);
    }
    case 2: {
      const double h = 1e-3;
      return (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h) -
              f(z - 2 * h)) /
             (12 * h * h);
    }
    case 3: {
      const double h = 5e-3;
      return (f(z + 2 * h) - 2 * f(z + h) + 2 * f(z - h) - f(z - 2 * h)) /
             (2 * h * h * h);
    }
    default:
      throw ConfigError("beta_derivative supports orders 1..3");
  }
}

}  // namespace kgnf
