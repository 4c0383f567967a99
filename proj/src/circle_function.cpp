#include "hardydisc/circle_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardydisc/fft.hpp"

namespace hdisc {

CircleFunction::CircleFunction(AngleGrid grid, std::vector<std::complex<double>> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.n)
    throw std::invalid_argument("CircleFunction: value count does not match grid");
  coeffs_ = fft::forward(values_);
}

CircleFunction::CircleFunction(AngleGrid grid, const std::vector<double>& values)
    : CircleFunction(grid, std::vector<std::complex<double>>(values.begin(), values.end())) {}

CircleFunction CircleFunction::constant(AngleGrid grid, std::complex<double> v) {
  return CircleFunction(grid, std::vector<std::complex<double>>(grid.n, v));
}

CircleFunction CircleFunction::from_coefficients(AngleGrid grid,
                                                 std::vector<std::complex<double>> coeffs) {
  if (static_cast<int>(coeffs.size()) != grid.n)
    throw std::invalid_argument("CircleFunction: coefficient count does not match grid");
  return CircleFunction(grid, fft::inverse(coeffs));
}

CircleFunction CircleFunction::sample(AngleGrid grid,
                                      const std::function<std::complex<double>(double)>& f) {
  std::vector<std::complex<double>> v(grid.n);
  for (int k = 0; k < grid.n; ++k) v[k] = f(grid.theta(k));
  return CircleFunction(grid, std::move(v));
}

CircleFunction CircleFunction::sample_real(AngleGrid grid, const std::function<double(double)>& f) {
  std::vector<std::complex<double>> v(grid.n);
  for (int k = 0; k < grid.n; ++k) v[k] = f(grid.theta(k));
  return CircleFunction(grid, std::move(v));
}

std::complex<double> CircleFunction::coeff(int m) const {
  const int n = grid_.n;
  if (m < -n / 2 || m > n / 2) throw std::out_of_range("CircleFunction::coeff: |m| > n/2");
  return coeffs_[(m % n + n) % n];
}

bool CircleFunction::is_real(double tol) const {
  double scale = 0.0;
  for (const auto& v : values_) scale = std::max(scale, std::abs(v));
  const double bound = tol * (1.0 + scale);
  return std::all_of(values_.begin(), values_.end(),
                     [&](const std::complex<double>& v) { return std::abs(v.imag()) <= bound; });
}

std::vector<double> CircleFunction::real_values() const {
  if (!is_real()) throw std::invalid_argument("CircleFunction: real values requested from complex data");
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [](const std::complex<double>& v) { return v.real(); });
  return out;
}

bool CircleFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

CircleFunction CircleFunction::derivative(int order) const {
  const int n = grid_.n;
  std::vector<std::complex<double>> c = coeffs_;
  for (int bin = 0; bin < n; ++bin) {
    const int m = fft::bin_frequency(bin, n);
    std::complex<double> factor = std::pow(std::complex<double>(0.0, m), order);
    // the unmatched Nyquist bin has no symmetric partner; drop it for odd derivatives
    if (m == -n / 2 && order % 2 == 1) factor = 0.0;
    c[bin] *= factor;
  }
  return from_coefficients(grid_, std::move(c));
}

CircleFunction CircleFunction::resample(AngleGrid target) const {
  const int n = grid_.n;
  const int nt = target.n;
  std::vector<std::complex<double>> c(nt, 0.0);
  const int keep = std::min(n, nt);
  for (int bin = 0; bin < keep / 2; ++bin) c[bin] = coeffs_[bin];
  for (int j = 1; j <= keep / 2; ++j) c[nt - j] = coeffs_[n - j];
  return from_coefficients(target, std::move(c));
}

CircleFunction CircleFunction::conjugated() const {
  std::vector<std::complex<double>> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(),
                 [](const std::complex<double>& x) { return std::conj(x); });
  return CircleFunction(grid_, std::move(v));
}

CircleFunction CircleFunction::abs() const {
  std::vector<std::complex<double>> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(),
                 [](const std::complex<double>& x) { return std::complex<double>(std::abs(x), 0.0); });
  return CircleFunction(grid_, std::move(v));
}

CircleFunction CircleFunction::log_abs() const {
  std::vector<std::complex<double>> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](const std::complex<double>& x) {
    return std::complex<double>(std::log(std::abs(x)), 0.0);
  });
  return CircleFunction(grid_, std::move(v));
}

namespace {
CircleFunction zip(const CircleFunction& a, const CircleFunction& b,
                   std::complex<double> (*op)(const std::complex<double>&, const std::complex<double>&)) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("CircleFunction: grid mismatch");
  std::vector<std::complex<double>> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = op(a.value(k), b.value(k));
  return CircleFunction(a.grid(), std::move(v));
}
}  // namespace

CircleFunction operator+(const CircleFunction& a, const CircleFunction& b) {
  return zip(a, b, +[](const std::complex<double>& x, const std::complex<double>& y) { return x + y; });
}
CircleFunction operator-(const CircleFunction& a, const CircleFunction& b) {
  return zip(a, b, +[](const std::complex<double>& x, const std::complex<double>& y) { return x - y; });
}
CircleFunction operator*(const CircleFunction& a, const CircleFunction& b) {
  return zip(a, b, +[](const std::complex<double>& x, const std::complex<double>& y) { return x * y; });
}
CircleFunction operator/(const CircleFunction& a, const CircleFunction& b) {
  return zip(a, b, +[](const std::complex<double>& x, const std::complex<double>& y) { return x / y; });
}
CircleFunction operator*(std::complex<double> s, const CircleFunction& a) {
  std::vector<std::complex<double>> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = s * a.value(k);
  return CircleFunction(a.grid(), std::move(v));
}
CircleFunction operator+(const CircleFunction& a, std::complex<double> s) {
  std::vector<std::complex<double>> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = a.value(k) + s;
  return CircleFunction(a.grid(), std::move(v));
}

}  // namespace hdisc
