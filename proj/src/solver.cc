#include "kgnf/solver.hh"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "kgnf/coordinates.hh"
#include "kgnf/errors.hh"
#include "kgnf/fitting.hh"
#include "kgnf/littlewood_paley.hh"
#include "kgnf/spectral.hh"

namespace kgnf {
namespace {

double smooth_bump(double s) {
  double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s2));
}

double smooth_bump_prime(double s) {
  double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  double d = 1.0 - s2;
  return smooth_bump(s) * (-2.0 * s) / (d * d);
}

// beta0 + beta sampled at rho sinh y (full coupling) or rho y.
RealField effective_cubic_coefficient(const NonlinearityParams& p, double rho,
                                      const GridSpec& g) {
  RealField c(g, rho);
  for (int j = 0; j < g.point_count; ++j) {
    double y = g.point(j);
    double z = p.include_r_beta ? rho * std::sinh(y) : rho * y;
    c.values[j] = p.beta0 + p.beta.value(z);
  }
  return c;
}

RealField nonlinear_forcing(const SimulationState& s, double rho) {
  const GridSpec& g = s.v.grid;
  RealField coeff = effective_cubic_coefficient(s.params, rho, g);
  RealField n(g, rho);
  const double qs = s.params.alpha0 / std::sqrt(rho);
  for (int j = 0; j < g.point_count; ++j) {
    double v = s.v.values[j];
    n.values[j] = qs * v * v + coeff.values[j] / rho * v * v * v;
  }
  return dealias_two_thirds(n);
}

void half_kick(SimulationState& s, double h, double rho) {
  if (s.params.alpha0 == 0.0 && s.params.beta0 == 0.0 &&
      s.params.beta.tag == "zero")
    return;
  RealField n = nonlinear_forcing(s, rho);
  for (int j = 0; j < s.v.size(); ++j) s.v_dot.values[j] += h * n.values[j];
}

void rotate(SimulationState& s, double drho, double rho_mid) {
  SpectralField V = dft_forward(s.v);
  SpectralField W = dft_forward(s.v_dot);
  const GridSpec& g = s.v.grid;
  const double q = s.params.include_quarter_term ? 0.25 : 0.0;
  for (int i = 0; i < g.point_count; ++i) {
    double mu = g.frequency(i) / rho_mid;
    double omega = std::sqrt(1.0 + q / (rho_mid * rho_mid) + mu * mu);
    double c = std::cos(omega * drho), sn = std::sin(omega * drho);
    cplx a = V.coefficients[i], b = W.coefficients[i];
    V.coefficients[i] = c * a + sn / omega * b;
    W.coefficients[i] = -omega * sn * a + c * b;
  }
  s.v = dft_inverse_real(V);
  s.v_dot = dft_inverse_real(W);
}

void require_finite(const SimulationState& s) {
  for (double x : s.v.values)
    if (!std::isfinite(x))
      throw NumericalFailure("solution lost finiteness at rho = " +
                             std::to_string(s.rho));
  for (double x : s.v_dot.values)
    if (!std::isfinite(x))
      throw NumericalFailure("derivative lost finiteness at rho = " +
                             std::to_string(s.rho));
}

double trapezoid(const RealField& f) {
  double acc = 0.0;
  for (double x : f.values) acc += x;
  return acc * f.grid.spacing();
}

}  // namespace

std::pair<RealField, RealField> initial_data_bump(const GridSpec& g, double eps,
                                                  double width, double center,
                                                  double rho0) {
  if (!(width > 0.0 && width <= 0.5))
    throw ConfigError("bump width must lie in (0, 1/2]");
  if (std::abs(center) + width > 0.5)
    throw ConfigError("bump support must stay inside |x| <= 1/2");
  if (rho0 < 1.0) throw ConfigError("initial slice must have rho0 >= 1");
  RealField v(g, rho0), v_dot(g, rho0);
  const double sr = std::sqrt(rho0);
  for (int j = 0; j < g.point_count; ++j) {
    double y = g.point(j);
    double x = rho0 * std::sinh(y);
    double s = (x - center) / width;
    double u0 = eps * smooth_bump(s);
    double u0x = eps * smooth_bump_prime(s) / width;
    v.values[j] = sr * u0;
    v_dot.values[j] = 0.5 / sr * u0 + sr * std::sinh(y) * u0x;
  }
  return {v, v_dot};
}

void step(SimulationState& state) {
  if (!(state.drho > 0.0 && state.drho <= 0.1))
    throw ConfigError("step size must lie in (0, 0.1]");
  const double d = state.drho;
  half_kick(state, 0.5 * d, state.rho);
  rotate(state, d, state.rho + 0.5 * d);
  state.rho += d;
  half_kick(state, 0.5 * d, state.rho);
  state.v = dealias_two_thirds(state.v);
  state.v_dot = dealias_two_thirds(state.v_dot);
  state.v.slice_time = state.v_dot.slice_time = state.rho;
  require_finite(state);
}

RealField nonlinear_source(const SimulationState& state) {
  return nonlinear_forcing(state, state.rho);
}

RealField acceleration(const SimulationState& state) {
  const GridSpec& g = state.v.grid;
  const double rho = state.rho;
  const double q = state.params.include_quarter_term ? 0.25 : 0.0;
  RealField vyy = derivative_y(state.v, 2);
  RealField n = nonlinear_forcing(state, rho);
  RealField a(g, rho);
  const double mass = 1.0 + q / (rho * rho);
  for (int j = 0; j < g.point_count; ++j)
    a.values[j] = vyy.values[j] / (rho * rho) - mass * state.v.values[j] +
                  n.values[j];
  return a;
}

namespace {

LedgerRow make_row(const SimulationState& s) {
  LedgerRow row;
  row.rho = s.rho;
  row.energy_e0 = energy_e0(s).value;
  RealField vy = derivative_y(s.v, 1);
  for (auto& x : vy.values) x /= s.rho;
  double a = h1_norm(s.v), b = h1_norm(s.v_dot), c = h1_norm(vy);
  row.h1_triple = std::sqrt(a * a + b * b + c * c);
  row.sup_v = linf_norm(s.v);
  row.sup_v_dot = linf_norm(s.v_dot);
  row.b_norm = b_infinity_norm(s.v, std::max(1.0, s.rho));
  return row;
}

}  // namespace

EnergyLedger run(SimulationState& state, double rho_end,
                 const StepCallback& after_step) {
  if (!(rho_end >= state.rho)) throw ConfigError("rho_end must not precede rho");
  EnergyLedger ledger;
  ledger.rows.push_back(make_row(state));
  const double sup0 = linf_norm(state.v);
  double next_cp = 1.0;
  while (next_cp <= state.rho + 1e-12) next_cp *= 2.0;

  const double d = state.drho;
  while (state.rho < rho_end - 1e-12) {
    state.drho = std::min(d, rho_end - state.rho);
    step(state);
    if (after_step) after_step(state);
    double sup = linf_norm(state.v);
    if (sup0 > 0.0 && sup > 1e3 * sup0)
      throw NumericalFailure("blow-up detected at rho = " +
                             std::to_string(state.rho) + ": sup " +
                             std::to_string(sup));
    if (state.rho >= next_cp - 1e-9 && state.rho < rho_end - 1e-12) {
      ledger.rows.push_back(make_row(state));
      while (next_cp <= state.rho + 1e-12) next_cp *= 2.0;
    }
  }
  state.drho = d;
  if (ledger.rows.back().rho < state.rho) ledger.rows.push_back(make_row(state));
  return ledger;
}

EnergyReport energy_e0(const SimulationState& s) {
  const GridSpec& g = s.v.grid;
  const double rho = s.rho;
  const double q = s.params.include_quarter_term ? 0.25 : 0.0;
  RealField vy = derivative_y(s.v, 1);
  RealField coeff = effective_cubic_coefficient(s.params, rho, g);
  RealField integrand(g, rho);
  for (int j = 0; j < g.point_count; ++j) {
    double v = s.v.values[j], w = s.v_dot.values[j], dy = vy.values[j];
    integrand.values[j] =
        0.5 * w * w + 0.5 * dy * dy / (rho * rho) +
        0.5 * (1.0 + q / (rho * rho)) * v * v -
        s.params.alpha0 / (3.0 * std::sqrt(rho)) * v * v * v -
        coeff.values[j] / (4.0 * rho) * v * v * v * v;
  }
  EnergyReport rep;
  rep.value = trapezoid(integrand);

  // positivity margin: K = 1 / (1 + 16 (|alpha0| + sup(|b| + |z||b'|)^{1/2}))
  static std::mutex mu;
  static std::map<std::string, double> cache;
  std::string key = s.params.beta.tag + "/" +
                    std::to_string(s.params.beta.support_radius) + "/" +
                    std::to_string(s.params.alpha0) + "/" +
                    std::to_string(s.params.beta0);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      rep.threshold = it->second;
    } else {
      double sup = 0.0;
      double zmax = s.params.beta.support_radius + 5.0;
      for (double z = 0.0; z <= zmax; z += 0.01) {
        for (double sgn : {-1.0, 1.0}) {
          double b = std::abs(s.params.beta0 + s.params.beta.value(sgn * z));
          double bp = s.params.beta.tag == "zero"
                          ? 0.0
                          : std::abs(beta_derivative(s.params.beta, sgn * z, 1));
          sup = std::max(sup, b + z * bp);
        }
      }
      rep.threshold =
          1.0 / (1.0 + 16.0 * (std::abs(s.params.alpha0) + std::sqrt(sup)));
      cache[key] = rep.threshold;
    }
  }
  rep.small_enough =
      std::max(linf_norm(s.v), linf_norm(s.v_dot)) <= rep.threshold;
  return rep;
}

BootstrapReport bootstrap_monitor(const EnergyLedger& ledger, double delta) {
  if (!(delta > 0.0 && delta < 0.125))
    throw ConfigError("bootstrap exponent delta must lie in (0, 1/8)");
  std::vector<double> rho, h1;
  for (const LedgerRow& row : ledger.rows) {
    rho.push_back(row.rho);
    h1.push_back(row.h1_triple);
  }
  LineFit fit = fit_power_law(rho, h1);
  BootstrapReport rep;
  rep.exponent = fit.slope;
  rep.delta = delta;
  rep.within = fit.slope <= delta;
  rep.r_squared = fit.r_squared;
  return rep;
}

LowFreqTerms low_frequency_ode_monitor(const SimulationState& s, double sigma,
                                       double delta) {
  if (!(6.0 * delta < sigma && sigma < 1.0 - delta && sigma <= 2.0 / 3.0))
    throw ConfigError(
        "low frequency window requires 6 delta < sigma < 1 - delta, "
        "sigma <= 2/3");
  const GridSpec& g = s.v.grid;
  const double rho = s.rho;
  const double cut = std::pow(rho, sigma);

  LowFreqTerms out;

  // moving-cutoff band term (sigma/rho) [r theta'(r)] at r = |xi| / rho^sigma
  SpectralField F = dft_forward(s.v);
  for (int i = 0; i < g.point_count; ++i) {
    double r = std::abs(g.frequency(i)) / cut;
    F.coefficients[i] *= sigma / rho * r * lp_theta_prime(r);
  }
  out.commutator_term = linf_norm(dft_inverse_real(F));

  RealField v1 = project(s.v, {ProjKind::low, std::max(1.0, cut)});
  RealField cubes(g, rho);
  for (int j = 0; j < g.point_count; ++j) {
    double a = s.v.values[j], b = v1.values[j];
    cubes.values[j] = a * a * a - b * b * b;
  }
  out.cubic_mismatch = linf_norm(cubes);

  RealField bfield = beta_scaled_field(s.params.beta, rho, g);
  RealField bp(g, rho);
  for (int j = 0; j < g.point_count; ++j) {
    double a = s.v.values[j];
    bp.values[j] = bfield.values[j] * a * a * a;
  }
  out.beta_lowpass = linf_norm(project(bp, {ProjKind::low, std::max(1.0, cut)}));
  double h1 = h1_norm(s.v);
  if (h1 > 1e-300) {
    double scale = std::pow(rho, sigma - 1.0) + std::pow(rho, -0.5 * sigma);
    out.beta_lowpass_ratio = out.beta_lowpass / (scale * h1 * h1 * h1);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CartesianSlice> cartesian_reference_run(
    const RealField& u0, const RealField& u1, double t_end, double dt,
    const NonlinearityParams& params, const std::vector<double>& sample_times) {
  const GridSpec& g = u0.grid;
  RealField u = dealias_two_thirds(u0);
  RealField ut = dealias_two_thirds(u1);
  double t = u0.slice_time;

  RealField beta_x(g);
  for (int j = 0; j < g.point_count; ++j)
    beta_x.values[j] = params.beta0 + params.beta.value(g.point(j));

  auto kick = [&](double h) {
    RealField n(g);
    for (int j = 0; j < g.point_count; ++j) {
      double w = u.values[j];
      n.values[j] = params.alpha0 * w * w + beta_x.values[j] * w * w * w;
    }
    n = dealias_two_thirds(n);
    for (int j = 0; j < g.point_count; ++j) ut.values[j] += h * n.values[j];
  };

  std::vector<CartesianSlice> out;
  auto maybe_sample = [&]() {
    for (double target : sample_times)
      if (std::abs(t - target) <= 0.5 * dt + 1e-12) {
        bool seen = false;
        for (const CartesianSlice& s : out)
          if (std::abs(s.t - target) <= 0.5 * dt + 1e-12) seen = true;
        if (!seen) {
          RealField cu = u, cut_ = ut;
          cu.slice_time = cut_.slice_time = t;
          out.push_back({t, cu, cut_});
        }
      }
  };
  maybe_sample();

  const double sup0 = linf_norm(u);
  while (t < t_end - 1e-12) {
    double h = std::min(dt, t_end - t);
    kick(0.5 * h);
    SpectralField U = dft_forward(u), W = dft_forward(ut);
    for (int i = 0; i < g.point_count; ++i) {
      double xi = g.frequency(i);
      double omega = std::sqrt(1.0 + xi * xi);
      double c = std::cos(omega * h), sn = std::sin(omega * h);
      cplx a = U.coefficients[i], b = W.coefficients[i];
      U.coefficients[i] = c * a + sn / omega * b;
      W.coefficients[i] = -omega * sn * a + c * b;
    }
    u = dft_inverse_real(U);
    ut = dft_inverse_real(W);
    kick(0.5 * h);
    u = dealias_two_thirds(u);
    ut = dealias_two_thirds(ut);
    t += h;
    u.slice_time = ut.slice_time = t;
    double sup = linf_norm(u);
    if (!std::isfinite(sup) || (sup0 > 0.0 && sup > 1e3 * sup0))
      throw NumericalFailure("cartesian run blew up at t = " +
                             std::to_string(t));
    maybe_sample();
  }
  return out;
}

std::pair<RealField, RealField> sample_on_plane(
    const std::vector<StoredSlice>& slices, double t_plane,
    const GridSpec& x_grid) {
  if (slices.size() < 4)
    throw ConfigError("plane sampling needs at least four stored slices");
  std::vector<SpectralField> sv, sw, svy;
  sv.reserve(slices.size());
  for (const StoredSlice& s : slices) {
    sv.push_back(dft_forward(s.v));
    sw.push_back(dft_forward(s.v_dot));
    svy.push_back(dft_forward(derivative_y(s.v, 1)));
  }

  RealField u(x_grid, t_plane), ut(x_grid, t_plane);
  for (int j = 0; j < x_grid.point_count; ++j) {
    double x = x_grid.point(j);
    if (!(t_plane > std::abs(x))) continue;  // outside the cone: zero
    double rho = std::sqrt((t_plane - x) * (t_plane + x));
    if (rho < slices.front().rho - 1e-9 || rho > slices.back().rho + 1e-9)
      continue;  // outside the stored shell: causal zero fill
    double y = std::atanh(x / t_plane);

    // one-past bracketing index
    size_t hi = 1;
    while (hi < slices.size() && slices[hi].rho < rho) ++hi;
    size_t i0 = hi >= 2 ? hi - 2 : 0;
    i0 = std::min(i0, slices.size() - 4);

    double vv = 0.0, ww = 0.0, dy = 0.0;
    for (size_t a = i0; a < i0 + 4; ++a) {
      double lag = 1.0;
      for (size_t b = i0; b < i0 + 4; ++b)
        if (b != a) lag *= (rho - slices[b].rho) / (slices[a].rho - slices[b].rho);
      vv += lag * eval_at(sv[a], y).real();
      ww += lag * eval_at(sw[a], y).real();
      dy += lag * eval_at(svy[a], y).real();
    }

    double sr = std::sqrt(rho);
    double u_val = vv / sr;
    double du_drho = -0.5 * vv / (rho * sr) + ww / sr;
    double du_dy = dy / sr;
    u.values[j] = u_val;
    ut.values[j] = std::cosh(y) * du_drho - std::sinh(y) / rho * du_dy;
  }
  return {u, ut};
}

}  // namespace kgnf
