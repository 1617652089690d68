//============================================================================
// grid.hh -- uniform periodic grids and sampled fields.
//
// A GridSpec describes the periodic interval [-L, L) sampled at N points
// y_j = -L + j*h, h = 2L/N, together with the conjugate frequency grid
// xi_k = pi*k/L for k in [-N/2, N/2).  Fields are plain value types: a grid,
// a sample vector, and the time slice rho they belong to.
//============================================================================
#pragma once

#include <cassert>
#include <complex>
#include <vector>

namespace kgnf {

using cplx = std::complex<double>;

struct GridSpec {
  double half_width = 0.0;  // L
  int point_count = 0;      // N, even

  GridSpec() = default;
  GridSpec(double L, int N) : half_width(L), point_count(N) {
    assert(N > 0 && N % 2 == 0);
  }

  double spacing() const { return 2.0 * half_width / point_count; }
  double point(int j) const { return -half_width + j * spacing(); }

  // Signed frequency index for storage slot i (FFT layout: 0..N/2-1, -N/2..-1).
  int signed_index(int i) const {
    return i < point_count / 2 ? i : i - point_count;
  }
  // Storage slot for signed index k in [-N/2, N/2).
  int storage_index(int k) const { return k >= 0 ? k : k + point_count; }

  double frequency(int i) const {
    return 3.14159265358979323846 * signed_index(i) / half_width;
  }
  double nyquist() const {
    return 3.14159265358979323846 * (point_count / 2) / half_width;
  }

  bool operator==(const GridSpec&) const = default;
};

struct RealField {
  GridSpec grid;
  std::vector<double> values;
  double slice_time = 1.0;  // rho

  RealField() = default;
  RealField(const GridSpec& g, double rho = 1.0)
      : grid(g), values(g.point_count, 0.0), slice_time(rho) {}

  int size() const { return grid.point_count; }
};

struct ComplexField {
  GridSpec grid;
  std::vector<cplx> values;
  double slice_time = 1.0;

  ComplexField() = default;
  ComplexField(const GridSpec& g, double rho = 1.0)
      : grid(g), values(g.point_count, cplx{0.0, 0.0}), slice_time(rho) {}

  int size() const { return grid.point_count; }
};

enum class SpectralConvention { standard, semiclassical };

// Coefficients stored in FFT layout, indexed by storage slot; slot i holds the
// coefficient of frequency xi_k with k = grid.signed_index(i).  Under the
// semiclassical convention the coefficient at slot i belongs to the rescaled
// frequency xi_k / rho and carries an extra factor rho.
struct SpectralField {
  GridSpec grid;
  std::vector<cplx> coefficients;
  SpectralConvention convention = SpectralConvention::standard;
  double rho = 1.0;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g)
      : grid(g), coefficients(g.point_count, cplx{0.0, 0.0}) {}

  int size() const { return grid.point_count; }

  double frequency(int i) const {
    double base = grid.frequency(i);
    return convention == SpectralConvention::semiclassical ? base / rho : base;
  }
  cplx& at_signed(int k) { return coefficients[grid.storage_index(k)]; }
  const cplx& at_signed(int k) const {
    return coefficients[grid.storage_index(k)];
  }
};

inline ComplexField to_complex(const RealField& f) {
  ComplexField g(f.grid, f.slice_time);
  for (int j = 0; j < f.size(); ++j) g.values[j] = f.values[j];
  return g;
}

}  // namespace kgnf
