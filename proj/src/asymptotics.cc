#include "kgnf/asymptotics.hh"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "kgnf/errors.hh"
#include "kgnf/fitting.hh"
#include "kgnf/spectral.hh"

namespace kgnf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Line-integral transform at an arbitrary frequency by direct summation.
cplx transform_at(const RealField& f, double xi) {
  cplx acc{0.0, 0.0};
  for (int j = 0; j < f.size(); ++j) {
    acc += f.values[j] * std::exp(cplx{0.0, -xi * f.grid.point(j)});
  }
  return f.grid.spacing() * acc;
}

cplx profile_value_interpolated(const SpectralField& amplitude_hat, double y) {
  return eval_at(amplitude_hat, y);
}

double phase_at(const AsymptoticProfile& p, double rho, double mod_a) {
  return rho - p.c_phase * mod_a * mod_a * std::log(rho) + kPi / 4.0;
}

// Solves the small dense normal-equation system M c = b in place.
std::vector<long double> solve_dense(std::vector<std::vector<long double>> m,
                                     std::vector<long double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(static_cast<double>(m[r][col])) >
          std::fabs(static_cast<double>(m[pivot][col])))
        pivot = r;
    }
    std::swap(m[pivot], m[col]);
    std::swap(b[pivot], b[col]);
    if (m[col][col] == 0.0L)
      throw NumericalFailure("secular phase fit basis is degenerate");
    for (int r = col + 1; r < n; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (int k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> c(n, 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    long double acc = b[r];
    for (int k = r + 1; k < n; ++k) acc -= m[r][k] * c[k];
    c[r] = acc / m[r][r];
  }
  return c;
}

}  // namespace

AsymptoticProfile free_profile_from_data(const RealField& u0,
                                         const RealField& u1,
                                         const GridSpec& y_grid) {
  if (!(u0.grid == u1.grid))
    throw ConfigError("initial data fields must share one x-grid");
  if (y_grid.point_count <= 0)
    throw ConfigError("profile grid must be non-empty");

  AsymptoticProfile p;
  p.grid = y_grid;
  p.amplitude = ComplexField(y_grid);
  p.source = ProfileSource::from_data;
  const double norm = std::sqrt(2.0 / kPi);
  for (int j = 0; j < y_grid.point_count; ++j) {
    const double y = y_grid.point(j);
    const double xi = -std::sinh(y);
    const cplx f0 = transform_at(u0, xi);
    const cplx f1 = transform_at(u1, xi);
    const cplx u_plus =
        0.5 * (f0 - cplx{0.0, 1.0} / std::sqrt(xi * xi + 1.0) * f1);
    p.amplitude.values[j] = norm * std::cosh(y) * u_plus;
  }
  return p;
}

double delort_phase_coefficient(double alpha0, double beta0) {
  return (3.0 / 8.0) * beta0 + (5.0 / 12.0) * alpha0 * alpha0;
}

RealField profile_prediction_v(const AsymptoticProfile& p, double rho) {
  if (!(rho >= 1.0))
    throw ConfigError("profile prediction requires rho >= 1");
  RealField v(p.grid, rho);
  for (int j = 0; j < p.grid.point_count; ++j) {
    const cplx a = p.amplitude.values[j];
    const double theta = phase_at(p, rho, std::abs(a));
    v.values[j] = (a * std::exp(cplx{0.0, theta})).real();
  }
  return v;
}

double profile_prediction_u(const AsymptoticProfile& p, double t, double x) {
  const double rho_sq = t * t - x * x;
  if (!(rho_sq >= 1.0))
    throw ConfigError("profile prediction requires t^2 - x^2 >= 1");
  const double rho = std::sqrt(rho_sq);
  const double y = std::asinh(x / rho);
  if (std::abs(y) > p.grid.half_width)
    throw ConfigError("profile prediction point maps beyond the profile grid");
  const SpectralField amp_hat = dft_forward(p.amplitude);
  const cplx a = profile_value_interpolated(amp_hat, y);
  const double theta = phase_at(p, rho, std::abs(a));
  return (a * std::exp(cplx{0.0, theta})).real() / std::sqrt(rho);
}

RealField profile_prediction_on_plane(const AsymptoticProfile& p,
                                      double t_plane, const GridSpec& x_grid) {
  if (!(t_plane > 1.0))
    throw ConfigError("plane prediction requires t_plane > 1");
  const SpectralField amp_hat = dft_forward(p.amplitude);
  RealField u(x_grid, t_plane);
  for (int j = 0; j < x_grid.point_count; ++j) {
    const double x = x_grid.point(j);
    const double rho_sq = t_plane * t_plane - x * x;
    if (rho_sq < 1.0) continue;
    const double rho = std::sqrt(rho_sq);
    const double y = std::asinh(x / rho);
    if (std::abs(y) > p.grid.half_width) continue;
    const cplx a = profile_value_interpolated(amp_hat, y);
    const double theta = phase_at(p, rho, std::abs(a));
    u.values[j] = (a * std::exp(cplx{0.0, theta})).real() / std::sqrt(rho);
  }
  return u;
}

LogPhaseFit fit_log_phase(const PhaseSeries& series, double rho1,
                          double rho2) {
  if (!(rho1 > 0.0) || !(rho2 >= 10.0 * rho1))
    throw ConfigError("phase fit window must satisfy rho2 >= 10 rho1 > 0");
  if (series.rho.size() != series.v.size() ||
      series.rho.size() != series.v_dot.size())
    throw ConfigError("phase series columns must have matching lengths");

  std::vector<double> r, phase, modulus;
  double prev_rho = -1.0;
  double prev_arg = 0.0;
  double unwrapped = 0.0;
  double mod_sum = 0.0;
  bool ambiguous = false;
  for (std::size_t k = 0; k < series.rho.size(); ++k) {
    const double rho = series.rho[k];
    if (rho <= prev_rho)
      throw ConfigError("phase series must be strictly increasing in rho");
    prev_rho = rho;
    if (rho < rho1 || rho > rho2) continue;
    const cplx z{series.v[k], -series.v_dot[k]};
    const double mod = std::abs(z);
    const double arg = std::arg(z);
    if (r.empty()) {
      unwrapped = arg;
    } else {
      double jump = arg - prev_arg;
      while (jump > kPi) jump -= 2.0 * kPi;
      while (jump < -kPi) jump += 2.0 * kPi;
      unwrapped += jump;
    }
    prev_arg = arg;
    mod_sum += mod;
    if (mod < 0.1 * (mod_sum / (r.size() + 1))) ambiguous = true;
    r.push_back(rho);
    phase.push_back(unwrapped - rho);
    modulus.push_back(mod);
  }
  const int n = static_cast<int>(r.size());
  if (n < 32)
    throw ConfigError("phase fit needs at least 32 samples in the window");

  // Least squares on the secular model  phase - rho = c0 + c1 ln(rho)
  // + c2 / rho + c3 / rho^2.
  std::vector<std::vector<long double>> gram(4,
                                             std::vector<long double>(4, 0.0L));
  std::vector<long double> rhs(4, 0.0L);
  for (int k = 0; k < n; ++k) {
    const long double b[4] = {1.0L, std::log((long double)r[k]),
                              1.0L / r[k], 1.0L / ((long double)r[k] * r[k])};
    for (int i = 0; i < 4; ++i) {
      rhs[i] += b[i] * (long double)phase[k];
      for (int j = 0; j < 4; ++j) gram[i][j] += b[i] * b[j];
    }
  }
  const auto coef = solve_dense(gram, rhs);

  long double mean = 0.0L;
  for (int k = 0; k < n; ++k) mean += phase[k];
  mean /= n;
  long double ss_res = 0.0L, ss_tot = 0.0L;
  for (int k = 0; k < n; ++k) {
    const long double b[4] = {1.0L, std::log((long double)r[k]),
                              1.0L / r[k], 1.0L / ((long double)r[k] * r[k])};
    long double fitted = 0.0L;
    for (int i = 0; i < 4; ++i) fitted += coef[i] * b[i];
    ss_res += (phase[k] - fitted) * (phase[k] - fitted);
    ss_tot += (phase[k] - mean) * (phase[k] - mean);
  }

  LogPhaseFit fit;
  fit.slope = static_cast<double>(coef[1]);
  fit.sample_count = n;
  fit.unwrap_ambiguous = ambiguous;
  std::nth_element(modulus.begin(), modulus.begin() + n / 2, modulus.end());
  fit.amplitude = modulus[n / 2];
  fit.r_squared =
      ss_tot > 0.0L ? static_cast<double>(1.0L - ss_res / ss_tot) : 1.0;
  return fit;
}

DecayReport decay_rate_report(const EnergyLedger& ledger) {
  const auto& rows = ledger.rows;
  if (rows.size() < 4)
    throw ConfigError("decay report needs at least four ledger rows");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!(rows[k].rho > rows[k - 1].rho))
      throw ConfigError("decay report needs strictly increasing rho");
  }
  const double rho_min = rows.front().rho;
  const double rho_max = rows.back().rho;
  if (!(rho_max >= 100.0 * rho_min))
    throw ConfigError("decay report needs at least two decades of rho");

  DecayReport rep;
  double sup_all = 0.0;
  for (const auto& row : rows) {
    rep.rho.push_back(row.rho);
    rep.sup_v.push_back(row.sup_v);
    rep.scaled_sup_u.push_back(row.sup_v *
                               std::sqrt((1.0 + row.rho) / row.rho));
    sup_all = std::max(sup_all, row.sup_v);
  }
  rep.fit_rho_min = std::min(64.0, rho_max / 16.0);
  if (sup_all == 0.0) return rep;  // trivial run

  std::vector<double> lx, ly;
  for (const auto& row : rows) {
    if (row.rho >= rep.fit_rho_min && row.sup_v > 0.0) {
      lx.push_back(std::log(row.rho));
      ly.push_back(std::log(row.sup_v));
    }
  }
  const int n = static_cast<int>(lx.size());
  if (n < 3)
    throw ConfigError("decay report fit window has fewer than three rows");
  const LineFit fit = linear_fit(lx, ly);
  rep.exponent = fit.slope;
  rep.r_squared = fit.r_squared;

  double mx = 0.0, my = 0.0;
  for (int k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, ss_res = 0.0;
  for (int k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    const double resid = ly[k] - (fit.intercept + fit.slope * lx[k]);
    ss_res += resid * resid;
  }
  if (n > 2 && sxx > 0.0)
    rep.ci95 = 1.96 * std::sqrt(ss_res / (n - 2) / sxx);

  double tail_max = 0.0, tail_min = 1e300;
  for (const auto& row : rows) {
    if (row.rho >= rho_max / 10.0) {
      tail_max = std::max(tail_max, row.sup_v);
      tail_min = std::min(tail_min, row.sup_v);
    }
  }
  if (tail_min > 0.0) rep.tail_ratio = tail_max / tail_min;
  return rep;
}

}  // namespace kgnf
