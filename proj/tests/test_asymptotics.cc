// Tests for the late-time oscillation profile, the logarithmic phase drift
// of the constant-coefficient nonlinearities, and decay-rate reporting.
#include "doctest.h"

#include "kgnf/asymptotics.hh"
#include "kgnf/errors.hh"
#include "kgnf/solver.hh"

#include <cmath>
#include <complex>
#include <vector>

using namespace kgnf;

namespace {

// Gaussian bump posed directly on the first hyperboloid, evolved with the
// requested constant coefficients; collects a probe series at y = 0.
EnergyLedger run_gaussian(double alpha0, double beta0, double eps,
                          double rho_end, double drho,
                          PhaseSeries* series = nullptr) {
  GridSpec g(8.0, 128);
  SimulationState st;
  st.rho = 1.0;
  st.v = RealField(g, 1.0);
  st.v_dot = RealField(g, 1.0);
  for (int j = 0; j < g.point_count; ++j) {
    const double y = g.point(j);
    st.v.values[j] = eps * std::exp(-y * y);
  }
  st.drho = drho;
  st.params.alpha0 = alpha0;
  st.params.beta0 = beta0;
  st.params.include_r_beta = false;
  const int mid = g.point_count / 2;
  return run(st, rho_end, [&](const SimulationState& cur) {
    if (series && cur.rho >= 8.0) {
      series->rho.push_back(cur.rho);
      series->v.push_back(cur.v.values[mid]);
      series->v_dot.push_back(cur.v_dot.values[mid]);
    }
  });
}

}  // namespace

TEST_CASE("phase drift coefficient arithmetic") {
  CHECK(delort_phase_coefficient(0.0, 0.0) == 0.0);
  CHECK(delort_phase_coefficient(0.0, 8.0 / 3.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(delort_phase_coefficient(1.0, 1.0) ==
        doctest::Approx(19.0 / 24.0).epsilon(1e-15));
  // additive in the cubic coefficient, quadratic in the quadratic one
  CHECK(delort_phase_coefficient(0.0, 1.3 + 0.4) ==
        doctest::Approx(delort_phase_coefficient(0.0, 1.3) +
                        delort_phase_coefficient(0.0, 0.4))
            .epsilon(1e-15));
  CHECK(delort_phase_coefficient(2.0 * 0.7, 0.0) ==
        doctest::Approx(4.0 * delort_phase_coefficient(0.7, 0.0))
            .epsilon(1e-15));
}

TEST_CASE("free profile matches closed forms for gaussian data") {
  GridSpec xg(64.0, 1024);
  RealField gauss(xg, 0.0), zero(xg, 0.0);
  for (int j = 0; j < xg.point_count; ++j) {
    const double x = xg.point(j);
    gauss.values[j] = std::exp(-x * x);
  }
  GridSpec yg(2.0, 128);

  // position data only: a(y) = 2^{-1/2} cosh(y) exp(-sinh(y)^2 / 4)
  auto p0 = free_profile_from_data(gauss, zero, yg);
  CHECK(p0.source == ProfileSource::from_data);
  double worst = 0.0;
  for (int j = 0; j < yg.point_count; ++j) {
    const double y = yg.point(j);
    const cplx expect = std::cosh(y) *
                        std::exp(-std::pow(std::sinh(y), 2) / 4.0) /
                        std::sqrt(2.0);
    worst = std::max(worst, std::abs(p0.amplitude.values[j] - expect));
  }
  CHECK(worst < 1e-13);

  // velocity data only: the cosh factor cancels the frequency weight,
  // a(y) = -i 2^{-1/2} exp(-sinh(y)^2 / 4)
  auto p1 = free_profile_from_data(zero, gauss, yg);
  worst = 0.0;
  for (int j = 0; j < yg.point_count; ++j) {
    const double y = yg.point(j);
    const cplx expect = cplx{0.0, -1.0} *
                        std::exp(-std::pow(std::sinh(y), 2) / 4.0) /
                        std::sqrt(2.0);
    worst = std::max(worst, std::abs(p1.amplitude.values[j] - expect));
  }
  CHECK(worst < 1e-13);

  RealField other(GridSpec(32.0, 512), 0.0);
  CHECK_THROWS_AS(free_profile_from_data(gauss, other, yg), ConfigError);
}

TEST_CASE("free prediction matches a reference evolution at late time") {
  GridSpec xg(256.0, 4096);
  RealField u0(xg, 0.0), u1(xg, 0.0);
  for (int j = 0; j < xg.point_count; ++j) {
    const double x = xg.point(j);
    u0.values[j] = std::exp(-x * x);
  }
  NonlinearityParams params;  // all couplings off
  auto slices = cartesian_reference_run(u0, u1, 200.0, 0.25, params, {200.0});
  REQUIRE(slices.size() == 1);

  GridSpec yg(2.0, 256);
  auto prof = free_profile_from_data(u0, u1, yg);
  auto pred = profile_prediction_on_plane(prof, 200.0, xg);

  double sup_pred = 0.0, sup_err = 0.0;
  for (int j = 0; j < xg.point_count; ++j) {
    if (std::abs(xg.point(j)) > 100.0) continue;
    sup_pred = std::max(sup_pred, std::abs(pred.values[j]));
    sup_err =
        std::max(sup_err, std::abs(pred.values[j] - slices[0].u.values[j]));
  }
  CHECK(sup_pred > 0.01);
  CHECK(sup_err < 0.02 * sup_pred);

  // the scalar evaluator agrees with the plane sweep at a grid point
  int idx = -1;
  for (int j = 0; j < xg.point_count; ++j)
    if (std::abs(xg.point(j) - 50.0) < 1e-9) idx = j;
  REQUIRE(idx >= 0);
  CHECK(profile_prediction_u(prof, 200.0, 50.0) ==
        doctest::Approx(pred.values[idx]).epsilon(1e-12));

  // outside the cone the plane prediction is zero and the scalar one throws
  for (int j = 0; j < xg.point_count; ++j) {
    if (std::abs(xg.point(j)) >= 200.0) CHECK(pred.values[j] == 0.0);
  }
  CHECK_THROWS_AS(profile_prediction_u(prof, 10.0, 11.0), ConfigError);
  CHECK_THROWS_AS(profile_prediction_v(prof, 0.5), ConfigError);

  // slice prediction: v = rho^{1/2} u along the hyperboloid, so at y = 0
  // (x = 0, t = rho) the two evaluators describe the same number
  auto v_slice = profile_prediction_v(prof, 200.0);
  CHECK(v_slice.values[yg.point_count / 2] ==
        doctest::Approx(std::sqrt(200.0) *
                        profile_prediction_u(prof, 200.0, 0.0))
            .epsilon(1e-12));
}

TEST_CASE("synthetic secular phase is recovered by the fit") {
  PhaseSeries s;
  const double lam = 0.37;
  for (double r = 5.0; r <= 2100.0; r += 0.01) {
    const double th = r + lam * std::log(r);
    s.rho.push_back(r);
    s.v.push_back(std::cos(th) / std::sqrt(r));
    s.v_dot.push_back(-(1.0 + lam / r) * std::sin(th) / std::sqrt(r) -
                      0.5 * std::cos(th) / (r * std::sqrt(r)));
  }
  auto fit = fit_log_phase(s, 10.0, 2000.0);
  CHECK(std::abs(fit.slope - lam) < 0.01 * lam);
  CHECK(fit.r_squared > 0.999);
  CHECK(!fit.unwrap_ambiguous);
  CHECK(fit.amplitude > 0.0);
  CHECK(fit.sample_count > 100000);

  // window and input validation
  CHECK_THROWS_AS(fit_log_phase(s, 10.0, 50.0), ConfigError);
  CHECK_THROWS_AS(fit_log_phase(s, 25000.0, 250000.0), ConfigError);
  PhaseSeries bad = s;
  bad.v.pop_back();
  CHECK_THROWS_AS(fit_log_phase(bad, 10.0, 2000.0), ConfigError);
  PhaseSeries unsorted;
  unsorted.rho = {10.0, 9.0, 11.0};
  unsorted.v = {1.0, 1.0, 1.0};
  unsorted.v_dot = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(fit_log_phase(unsorted, 1.0, 100.0), ConfigError);

  // collapsing modulus raises the ambiguity flag
  PhaseSeries dip;
  for (double r = 10.0; r <= 110.0; r += 0.01) {
    const double c = r < 60.0 ? 1.0 : 1e-3;
    dip.rho.push_back(r);
    dip.v.push_back(c * std::cos(r));
    dip.v_dot.push_back(-c * std::sin(r));
  }
  auto dip_fit = fit_log_phase(dip, 10.0, 110.0);
  CHECK(dip_fit.unwrap_ambiguous);
}

TEST_CASE("secular drift vanishes for the free run and tracks the "
          "coefficient for the nonlinear ones") {
  PhaseSeries free_series;
  run_gaussian(0.0, 0.0, 0.05, 1000.0, 0.01, &free_series);
  auto free_fit = fit_log_phase(free_series, 10.0, 1000.0);
  CHECK(!free_fit.unwrap_ambiguous);
  const double free_ref =
      delort_phase_coefficient(0.0, 1.0) * free_fit.amplitude *
      free_fit.amplitude;
  CHECK(std::abs(free_fit.slope) < 0.02 * free_ref);

  // cubic coefficient: drift = -(3/8) A^2 ln rho
  PhaseSeries cubic_series;
  run_gaussian(0.0, 1.0, 0.05, 1000.0, 0.01, &cubic_series);
  auto cubic_fit = fit_log_phase(cubic_series, 10.0, 1000.0);
  const double cubic_ratio =
      -cubic_fit.slope / (cubic_fit.amplitude * cubic_fit.amplitude);
  CHECK(cubic_ratio ==
        doctest::Approx(delort_phase_coefficient(0.0, 1.0)).epsilon(0.10));

  // quadratic coefficient: drift = -(5/12) A^2 ln rho; the dispersive
  // transient of the quadratic coupling dies slowly, so the window starts
  // later and the amplitude is larger to lift the signal above it
  PhaseSeries quad_series;
  run_gaussian(1.0, 0.0, 0.2, 3000.0, 0.01, &quad_series);
  auto quad_fit = fit_log_phase(quad_series, 100.0, 3000.0);
  const double quad_ratio =
      -quad_fit.slope / (quad_fit.amplitude * quad_fit.amplitude);
  CHECK(quad_ratio ==
        doctest::Approx(delort_phase_coefficient(1.0, 0.0)).epsilon(0.12));
}

TEST_CASE("decay report: free evolution is flat and scale invariant") {
  // free steps are exact per mode, so a coarse step is allowed
  auto ledger = run_gaussian(0.0, 0.0, 0.05, 8192.0, 0.05);
  auto rep = decay_rate_report(ledger);
  CHECK(std::abs(rep.exponent) < 0.05);
  CHECK(rep.tail_ratio < 3.0);
  CHECK(rep.fit_rho_min == 64.0);
  CHECK(rep.rho.size() == ledger.rows.size());
  for (std::size_t k = 0; k < rep.rho.size(); ++k) {
    CHECK(rep.scaled_sup_u[k] ==
          doctest::Approx(rep.sup_v[k] *
                          std::sqrt((1.0 + rep.rho[k]) / rep.rho[k]))
              .epsilon(1e-14));
  }

  // linearity: tripling the data rescales the ledger, not the exponent
  auto ledger3 = run_gaussian(0.0, 0.0, 0.15, 8192.0, 0.05);
  auto rep3 = decay_rate_report(ledger3);
  CHECK(std::abs(rep.exponent - rep3.exponent) < 1e-10);
}

TEST_CASE("decay report: trivial and malformed ledgers") {
  auto zero_ledger = run_gaussian(0.0, 0.0, 0.0, 128.0, 0.05);
  auto rep = decay_rate_report(zero_ledger);
  CHECK(rep.exponent == 0.0);
  CHECK(rep.ci95 == 0.0);
  CHECK(rep.tail_ratio == 1.0);
  for (double s : rep.sup_v) CHECK(s == 0.0);

  EnergyLedger tiny;
  for (double r : {1.0, 2.0, 4.0}) {
    LedgerRow row;
    row.rho = r;
    row.sup_v = 1.0;
    tiny.rows.push_back(row);
  }
  CHECK_THROWS_AS(decay_rate_report(tiny), ConfigError);  // too few rows

  EnergyLedger narrow;
  for (double r : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    LedgerRow row;
    row.rho = r;
    row.sup_v = 1.0;
    narrow.rows.push_back(row);
  }
  CHECK_THROWS_AS(decay_rate_report(narrow), ConfigError);  // one decade

  EnergyLedger unsorted;
  for (double r : {1.0, 4.0, 2.0, 200.0}) {
    LedgerRow row;
    row.rho = r;
    row.sup_v = 1.0;
    unsorted.rows.push_back(row);
  }
  CHECK_THROWS_AS(decay_rate_report(unsorted), ConfigError);
}
