#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hardydisc/grids.hpp"

namespace hdisc {

/// Values of a function on the uniform angular grid of the unit circle,
/// with a Fourier-coefficient view (computed once at construction).
/// Immutable after construction; all operations return new objects.
class CircleFunction {
 public:
  CircleFunction(AngleGrid grid, std::vector<std::complex<double>> values);
  CircleFunction(AngleGrid grid, const std::vector<double>& values);

  static CircleFunction constant(AngleGrid grid, std::complex<double> v);
  static CircleFunction from_coefficients(AngleGrid grid,
                                          std::vector<std::complex<double>> coeffs_fft_order);
  static CircleFunction sample(AngleGrid grid, const std::function<std::complex<double>(double)>& f);
  static CircleFunction sample_real(AngleGrid grid, const std::function<double(double)>& f);

  const AngleGrid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  double theta(int k) const { return grid_.theta(k); }

  const std::vector<std::complex<double>>& values() const { return values_; }
  std::complex<double> value(int k) const { return values_[k]; }

  /// FFT-bin-order coefficients (1/n convention).
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  /// Coefficient for signed frequency m, |m| <= n/2.
  std::complex<double> coeff(int m) const;

  bool is_real(double tol = 1e-12) const;
  std::vector<double> real_values() const;
  bool all_finite() const;

  std::complex<double> mean() const { return coeffs_[0]; }

  /// Spectral derivative d^order/dtheta^order.
  CircleFunction derivative(int order = 1) const;
  /// Spectral resampling to a finer/coarser grid (zero-pad / truncate coefficients).
  CircleFunction resample(AngleGrid target) const;

  CircleFunction conjugated() const;
  CircleFunction abs() const;
  CircleFunction log_abs() const;

 private:
  AngleGrid grid_;
  std::vector<std::complex<double>> values_;
  std::vector<std::complex<double>> coeffs_;
};

CircleFunction operator+(const CircleFunction& a, const CircleFunction& b);
CircleFunction operator-(const CircleFunction& a, const CircleFunction& b);
CircleFunction operator*(const CircleFunction& a, const CircleFunction& b);
CircleFunction operator/(const CircleFunction& a, const CircleFunction& b);
CircleFunction operator*(std::complex<double> s, const CircleFunction& a);
CircleFunction operator+(const CircleFunction& a, std::complex<double> s);

}  // namespace hdisc
