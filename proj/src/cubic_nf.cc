#include "kgnf/cubic_nf.hh"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kgnf/errors.hh"
#include "kgnf/littlewood_paley.hh"
#include "kgnf/quadratic_nf.hh"
#include "kgnf/spectral.hh"

namespace kgnf {
namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt8 = std::sqrt(8.0);
constexpr double kResonanceTol = 1e-6;
// Division guards: lattice points this close to an obstruction frequency must
// carry no spectral mass.  The zero-frequency window is small because a
// double zero makes the quotient 3 beta_hat / zeta^2 regular, so only the
// point zeta = 0 itself needs protection.
constexpr double kZeroWindow = 1e-3;
constexpr double kSqrt8Window = 0.15;

// chi1: the dyadic band window of the projection family at threshold 1,
// supported in 1 <= |s| <= 4.
double band_window(double s) { return lp_theta(0.5 * s) - lp_theta(s); }

void require_same_grid(const RealField& a, const RealField& b) {
  if (!(a.grid == b.grid))
    throw ConfigError("fields live on different grids");
}

double transform_sup_scan(const std::function<cplx(double)>& hat) {
  double sup = 0.0;
  for (int k = 0; k <= 2048; ++k) {
    double z = k / 128.0;
    sup = std::max({sup, std::abs(hat(z)), std::abs(hat(-z))});
  }
  for (double z = 16.25; z <= 64.0; z += 0.25)
    sup = std::max({sup, std::abs(hat(z)), std::abs(hat(-z))});
  return sup;
}

// g0_hat = 3 b / zeta^2 and g2_hat = b / (zeta^2 - 8) with the division
// guards; `thr` is the admissible leakage at the obstruction frequencies.
std::pair<cplx, cplx> divided_g_pair(cplx b, double zeta, double thr) {
  cplx g0{0.0, 0.0}, g2{0.0, 0.0};
  if (std::abs(zeta) < kZeroWindow) {
    if (std::abs(b) > thr)
      throw ConfigError(
          "profile transform carries mass at zero frequency; the undamped "
          "coefficient equation is unsolvable there");
  } else {
    g0 = 3.0 * b / (zeta * zeta);
  }
  if (std::abs(std::abs(zeta) - kSqrt8) < kSqrt8Window) {
    if (std::abs(b) > thr)
      throw ConfigError(
          "profile transform carries mass at the resonant frequency "
          "sqrt(8); the damped coefficient equation is unsolvable there");
  } else {
    g2 = b / (zeta * zeta - 8.0);
  }
  return {g0, g2};
}

// Sample a spectrum callable at z = rho * y for y on the simulation grid.
// The synthesis grid covers [-8 rho L, 8 rho L) and is aligned so that the
// dilated points are lattice points; the margin keeps periodization aliases
// of rapidly decaying profiles negligible.
RealField synthesize_scaled(const std::function<cplx(double)>& fhat,
                            double zeta_top, const GridSpec& g, double rho,
                            int deriv) {
  if (rho < 1.0) throw ConfigError("synthesis requires rho >= 1");
  const int ny = g.point_count;
  const double need = 1.1 * std::max(zeta_top, 0.5);
  const int p = std::max(
      1, static_cast<int>(std::ceil(2.0 * rho * g.half_width * need /
                                    (kPi * ny))));
  const long nz_wide = 8L * p * ny;
  if (nz_wide > (1L << 24))
    throw ConfigError("synthesis grid too large for this rho and spectrum");
  const int nz = static_cast<int>(nz_wide);
  GridSpec zg(8.0 * rho * g.half_width, nz);
  SpectralField F(zg);
  for (int idx = 0; idx < nz; ++idx) {
    double zeta = zg.frequency(idx);
    cplx c = fhat(zeta);
    if (c != cplx{0.0, 0.0}) {
      const cplx iz{0.0, zeta};
      for (int k = 0; k < deriv; ++k) c *= iz;
    }
    F.coefficients[idx] = c;
  }
  if (deriv % 2 == 1) F.coefficients[nz / 2] = cplx{0.0, 0.0};
  RealField fz = dft_inverse_real(F);
  RealField out(g, rho);
  const int base = p * (7 * ny / 2);
  for (int n = 0; n < ny; ++n) out.values[n] = fz.values[base + p * n];
  return out;
}

}  // namespace

RealField cubic_monomial(int i, const RealField& v, const RealField& v_dot) {
  require_same_grid(v, v_dot);
  RealField out(v.grid, v.slice_time);
  if (i < 0 || i > 3) return out;
  for (int n = 0; n < out.size(); ++n) {
    double p = 1.0;
    for (int k = 0; k < 3 - i; ++k) p *= v.values[n];
    for (int k = 0; k < i; ++k) p *= v_dot.values[n];
    out.values[n] = p;
  }
  return out;
}

RealField cubic_monomial_d1(int i, const RealField& v,
                            const RealField& v_dot) {
  require_same_grid(v, v_dot);
  RealField out(v.grid, v.slice_time);
  if (i < 0 || i > 3) return out;
  RealField up = cubic_monomial(i + 1, v, v_dot);
  RealField down = cubic_monomial(i - 1, v, v_dot);
  for (int n = 0; n < out.size(); ++n)
    out.values[n] = (3 - i) * up.values[n] - i * down.values[n];
  return out;
}

RealField cubic_monomial_d2(int i, const RealField& v,
                            const RealField& v_dot) {
  require_same_grid(v, v_dot);
  RealField out(v.grid, v.slice_time);
  if (i < 0 || i > 3) return out;
  RealField up = cubic_monomial(i + 2, v, v_dot);
  RealField down = cubic_monomial(i - 2, v, v_dot);
  RealField same = cubic_monomial(i, v, v_dot);
  const double cu = (3 - i) * (2 - i);
  const double cd = i * (i - 1);
  const double cs = (3 - i) * (i + 1) + (4 - i) * i;
  for (int n = 0; n < out.size(); ++n)
    out.values[n] =
        cu * up.values[n] + cd * down.values[n] - cs * same.values[n];
  return out;
}

ResonanceReport classify_resonance(const BetaProfile& beta, double tol) {
  if (!(tol > 0.0)) throw ConfigError("resonance tolerance must be positive");
  const auto& hat = beta.transform;
  ResonanceReport r;
  r.at_zero = hat(0.0);
  r.at_sqrt8 = hat(kSqrt8);
  r.at_minus_sqrt8 = hat(-kSqrt8);
  r.transform_sup = std::max(
      {transform_sup_scan(hat), std::abs(r.at_zero), std::abs(r.at_sqrt8)});
  // Centered slope at zero, cross-checked at half step; disagreement means
  // the callable is not resolved at the stencil scale.
  const double h = 1e-3;
  cplx d_full = (hat(h) - hat(-h)) / (2.0 * h);
  cplx d_half = (hat(0.5 * h) - hat(-0.5 * h)) / h;
  double scale = r.transform_sup > 0.0 ? r.transform_sup : 1.0;
  if (std::abs(d_full - d_half) > 1e-4 * scale + 1e-12)
    throw ConfigError("profile transform is not resolved near zero frequency");
  r.slope_at_zero = (4.0 * d_half - d_full) / 3.0;
  const double thr = tol * r.transform_sup;
  r.double_zero_at_0 =
      std::abs(r.at_zero) <= thr && std::abs(r.slope_at_zero) <= thr;
  r.zero_at_sqrt8 =
      std::abs(r.at_sqrt8) <= thr && std::abs(r.at_minus_sqrt8) <= thr;
  if (r.double_zero_at_0 && r.zero_at_sqrt8)
    r.classification = ResonanceClass::non_resonant;
  else if (r.double_zero_at_0)
    r.classification = ResonanceClass::resonant_at_sqrt8;
  else if (r.zero_at_sqrt8)
    r.classification = ResonanceClass::resonant_at_0;
  else
    r.classification = ResonanceClass::both;
  return r;
}

NFCoefficients solve_g_system(const BetaProfile& beta, const GridSpec& zgrid) {
  if (zgrid.point_count <= 0 || !(zgrid.half_width > 0.0))
    throw ConfigError("empty z-grid");
  const double dzeta = kPi / zgrid.half_width;
  if (dzeta > 0.25 || zgrid.nyquist() < 6.0)
    throw ConfigError(
        "z-grid does not resolve the transform near the resonant "
        "frequencies");
  const auto& hat = beta.transform;
  const double thr = kResonanceTol * transform_sup_scan(hat);
  SpectralField G0(zgrid), G2(zgrid);
  for (int idx = 0; idx < zgrid.point_count; ++idx) {
    const double zeta = zgrid.frequency(idx);
    auto [g0, g2] = divided_g_pair(hat(zeta), zeta, thr);
    G0.coefficients[idx] = g0;
    G2.coefficients[idx] = g2;
  }
  NFCoefficients out;
  out.g0 = dft_inverse_real(G0);
  out.g2 = dft_inverse_real(G2);
  std::tie(out.f0, out.f2) = f_from_g(out.g0, out.g2);
  return out;
}

std::pair<RealField, RealField> f_from_g(const RealField& g0,
                                         const RealField& g2) {
  require_same_grid(g0, g2);
  RealField f0(g0.grid, g0.slice_time), f2(g0.grid, g0.slice_time);
  for (int n = 0; n < g0.size(); ++n) {
    f0.values[n] = 0.25 * (g0.values[n] + g2.values[n]);
    f2.values[n] = 0.25 * (g0.values[n] - 3.0 * g2.values[n]);
  }
  return {f0, f2};
}

std::pair<RealField, RealField> g_from_f(const RealField& f0,
                                         const RealField& f2) {
  require_same_grid(f0, f2);
  RealField g0(f0.grid, f0.slice_time), g2(f0.grid, f0.slice_time);
  for (int n = 0; n < f0.size(); ++n) {
    g0.values[n] = 3.0 * f0.values[n] + f2.values[n];
    g2.values[n] = f0.values[n] - f2.values[n];
  }
  return {g0, g2};
}

BetaBandDecomposition dyadic_beta_bands(const BetaProfile& beta, double rho) {
  if (rho < 1.0) throw ConfigError("band decomposition requires rho >= 1");
  BetaBandDecomposition out;
  const auto hat = beta.transform;
  out.transform_sup = transform_sup_scan(hat);
  // Outermost frequency carrying mass above the scan floor.
  const double floor_lvl =
      1e-14 * (out.transform_sup > 0.0 ? out.transform_sup : 1.0);
  double far = 64.0;
  while (far <= 4096.0 &&
         (std::abs(hat(far)) > floor_lvl || std::abs(hat(-far)) > floor_lvl))
    far *= 2.0;
  double zsup = 0.25;
  for (double z = far; z >= 0.5; z -= 0.25) {
    if (std::abs(hat(z)) > floor_lvl || std::abs(hat(-z)) > floor_lvl) {
      zsup = z + 0.25;
      break;
    }
  }
  out.spectrum_radius = zsup;
  out.j_max = static_cast<int>(std::floor(std::log2(rho) / 2.0 + 1e-12));
  out.j_min = std::min(
      out.j_max, 1 - static_cast<int>(std::ceil(std::log2(zsup) - 1e-12)));
  for (int j = out.j_min; j <= out.j_max; ++j) {
    BetaBand band;
    band.j = j;
    band.transform_sup = out.transform_sup;
    if (j == out.j_min) {
      // high-pass complement: everything above the ladder's top edge
      band.zeta_top = std::max(std::ldexp(4.0, -j), zsup);
      band.transform = [hat, j](double zeta) {
        return (1.0 - lp_theta(std::ldexp(std::abs(zeta), j))) * hat(zeta);
      };
    } else {
      band.zeta_top = std::ldexp(4.0, -j);
      band.transform = [hat, j](double zeta) {
        return band_window(std::ldexp(zeta, j)) * hat(zeta);
      };
    }
    out.bands.push_back(std::move(band));
  }
  out.leftover = [hat, jm = out.j_max](double zeta) {
    return lp_theta(std::ldexp(std::abs(zeta), jm)) * hat(zeta);
  };
  return out;
}

RealField band_scaled_samples(const BetaBand& band, const GridSpec& g,
                              double rho, int derivative_order) {
  if (derivative_order < 0) throw ConfigError("derivative order must be >= 0");
  return synthesize_scaled(band.transform, band.zeta_top, g, rho,
                           derivative_order);
}

RealField band_f_samples(const BetaBand& band, int which, const GridSpec& g,
                         double rho, int derivative_order) {
  if (which != 0 && which != 2)
    throw ConfigError("coefficient index must be 0 or 2");
  if (derivative_order < 0) throw ConfigError("derivative order must be >= 0");
  const double thr = kResonanceTol * band.transform_sup;
  auto fhat = [t = band.transform, which, thr](double zeta) -> cplx {
    cplx b = t(zeta);
    if (b == cplx{0.0, 0.0}) return b;
    auto [g0, g2] = divided_g_pair(b, zeta, thr);
    return which == 0 ? 0.25 * (g0 + g2) : 0.25 * (g0 - 3.0 * g2);
  };
  return synthesize_scaled(fhat, band.zeta_top, g, rho, derivative_order);
}

CubicNF build_w2_zero_resonance(const RealField& w, const RealField& w_dot,
                                const BetaProfile& beta, double rho) {
  require_same_grid(w, w_dot);
  if (rho < 1.0) throw ConfigError("normal form requires rho >= 1");
  CubicNF out;
  out.rho = rho;
  out.w2 = RealField(w.grid, rho);
  BetaBandDecomposition bands = dyadic_beta_bands(beta, rho);
  const double sqrt_rho = std::sqrt(rho);
  for (const BetaBand& band : bands.bands) {
    const double c = std::ldexp(1.0, -band.j);
    const double weight = lp_theta(std::ldexp(1.0, band.j) / sqrt_rho);
    const ProjectionKey key{ProjKind::low, c * rho};
    RealField wj = project(w, key);
    RealField wdj = project(w_dot, key);
    RealField comm = projection_rho_commutator(w, rho, c);
    for (int n = 0; n < wdj.size(); ++n) wdj.values[n] += comm.values[n];
    RealField f0 = band_f_samples(band, 0, w.grid, rho);
    RealField f2 = band_f_samples(band, 2, w.grid, rho);
    RealField piece(w.grid, rho);
    for (int n = 0; n < piece.size(); ++n) {
      const double a = wj.values[n], b = wdj.values[n];
      piece.values[n] = weight / rho *
                        (f0.values[n] * a * a * a + f2.values[n] * a * b * b);
    }
    for (int n = 0; n < piece.size(); ++n)
      out.w2.values[n] += piece.values[n];
    out.band_j.push_back(band.j);
    out.band_pieces.push_back(std::move(piece));
  }
  return out;
}

namespace {

// The quadratically-corrected unknown on a slice; the correction vanishes
// identically when the quadratic coupling is off.
std::pair<RealField, RealField> corrected_pair(const SimulationState& st) {
  if (st.params.alpha0 == 0.0) return {st.v, st.v_dot};
  QuadraticNF q = build_w1(st);
  RealField w = st.v, wd = st.v_dot;
  for (int n = 0; n < w.size(); ++n) {
    w.values[n] -= q.w1.values[n];
    wd.values[n] -= q.w1_dot.values[n];
  }
  return {w, wd};
}

}  // namespace

CubicResidual cubic_error_residual(const SimulationState& state,
                                   const BetaProfile& beta, double drho) {
  if (!(drho > 0.0) || drho > 0.05)
    throw ConfigError("residual step must lie in (0, 0.05]");
  if (state.rho < 1.0) throw ConfigError("residual requires rho >= 1");
  require_same_grid(state.v, state.v_dot);

  auto residual_at = [&](double d) {
    SimulationState st = state;
    st.drho = d;
    auto [wa, wda] = corrected_pair(st);
    CubicNF nfa = build_w2_zero_resonance(wa, wda, beta, st.rho);
    step(st);
    SimulationState mid = st;
    auto [wb, wdb] = corrected_pair(mid);
    CubicNF nfb = build_w2_zero_resonance(wb, wdb, beta, mid.rho);
    step(st);
    auto [wc, wdc] = corrected_pair(st);
    CubicNF nfc = build_w2_zero_resonance(wc, wdc, beta, st.rho);

    const double rm = mid.rho;
    const GridSpec& g = state.v.grid;
    RealField wlow = project(wb, ProjectionKey{ProjKind::low, rm});
    RealField src(g, rm), high(g, rm);
    for (int n = 0; n < g.point_count; ++n) {
      const double bz = beta.value(rm * g.point(n)) / rm;
      const double lw = wlow.values[n], fw = wb.values[n];
      src.values[n] = bz * lw * lw * lw;
      high.values[n] = bz * (fw * fw * fw - lw * lw * lw);
    }
    RealField w2yy = derivative_y(nfb.w2, 2);
    CubicResidual r;
    r.rho = rm;
    r.e_cubic = RealField(g, rm);
    for (int n = 0; n < g.point_count; ++n)
      r.e_cubic.values[n] =
          (nfa.w2.values[n] - 2.0 * nfb.w2.values[n] + nfc.w2.values[n]) /
              (d * d) +
          nfb.w2.values[n] - w2yy.values[n] / (rm * rm) - src.values[n];
    r.residual_h1 = h1_norm(r.e_cubic);
    r.source_h1 = h1_norm(src);
    r.high_leftover_h1 = h1_norm(high);
    RealField w2dot(g, rm);
    for (int n = 0; n < g.point_count; ++n)
      w2dot.values[n] =
          (nfc.w2.values[n] - nfa.w2.values[n]) / (2.0 * d);
    RealField w2y = derivative_y(nfb.w2, 1);
    const double na = h1_norm(nfb.w2), nb = h1_norm(w2dot),
                 nc = h1_norm(w2y) / rm;
    r.triple_h1 = std::sqrt(na * na + nb * nb + nc * nc);
    const double vb =
        b_infinity_norm(mid.v, rm) + b_infinity_norm(mid.v_dot, rm);
    const double vh = h1_norm(mid.v) + h1_norm(mid.v_dot);
    if (vb > 0.0 && vh > 0.0)
      r.scaled_residual = rm * r.residual_h1 / (vb * vb * vh);
    r.nf = std::move(nfb);
    return r;
  };

  CubicResidual coarse = residual_at(drho);
  CubicResidual fine = residual_at(0.5 * drho);
  coarse.step_too_coarse =
      std::abs(coarse.residual_h1 - fine.residual_h1) >
      0.5 * fine.residual_h1 + 1e-14;
  return coarse;
}

ResonantCoefficients sqrt8_coefficients_from_parametrix(const ComplexField& k1,
                                                        const ComplexField& k3,
                                                        double rho) {
  if (!(k1.grid == k3.grid))
    throw ConfigError("kernel fields live on different grids");
  const cplx e1 = std::exp(cplx{0.0, -rho});
  const cplx e3 = std::exp(cplx{0.0, -3.0 * rho});
  ResonantCoefficients out;
  const GridSpec& g = k1.grid;
  out.g0 = RealField(g, rho);
  out.g1 = RealField(g, rho);
  out.g2 = RealField(g, rho);
  out.g3 = RealField(g, rho);
  out.f0 = RealField(g, rho);
  out.f1 = RealField(g, rho);
  out.f2 = RealField(g, rho);
  out.f3 = RealField(g, rho);
  for (int n = 0; n < g.point_count; ++n) {
    const cplx a = 3.0 * k1.values[n] * e1;
    const cplx b = k3.values[n] * e3;
    out.g0.values[n] = a.real();
    out.g1.values[n] = a.imag();
    out.g2.values[n] = b.real();
    out.g3.values[n] = b.imag();
    out.f0.values[n] = 0.25 * (a.real() + b.real());
    out.f2.values[n] = 0.25 * (a.real() - 3.0 * b.real());
    out.f1.values[n] = 0.25 * (a.imag() + 3.0 * b.imag());
    out.f3.values[n] = 0.25 * (a.imag() - b.imag());
  }
  return out;
}

}  // namespace kgnf
