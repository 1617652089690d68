#pragma once

// Least-squares line fits used by the decay/growth monitors.

#include <cmath>
#include <cstddef>
#include <vector>

#include "kgnf/errors.hh"

namespace kgnf {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

inline LineFit linear_fit(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("linear_fit needs two or more paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ConfigError("linear_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// Fit y ~ C x^p on positive data; returns slope p in LineFit::slope and
// ln C in LineFit::intercept.
inline LineFit fit_power_law(const std::vector<double>& x,
                             const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return linear_fit(lx, ly);
}

}  // namespace kgnf
