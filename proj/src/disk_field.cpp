#include "hardydisc/disk_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hdisc {

DiskField::DiskField(PolarGrid grid, std::vector<double> values, double center)
    : grid_(grid), values_(std::move(values)), center_(center) {
  if (values_.size() != static_cast<size_t>(grid_.n_radii) * grid_.n_angles)
    throw std::invalid_argument("DiskField: value count does not match grid");
}

DiskField DiskField::zero(PolarGrid grid) {
  return DiskField(grid, std::vector<double>(static_cast<size_t>(grid.n_radii) * grid.n_angles, 0.0), 0.0);
}

DiskField DiskField::constant(PolarGrid grid, double v) {
  return DiskField(grid, std::vector<double>(static_cast<size_t>(grid.n_radii) * grid.n_angles, v), v);
}

bool DiskField::all_finite(bool include_center) const {
  if (include_center && !std::isfinite(center_)) return false;
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double DiskField::interpolate_radial(double r, int k) const {
  const int n = grid_.n_radii;
  const double h = grid_.dr();
  if (r < 0.0 || r > 1.0 + 1e-14) throw std::domain_error("DiskField: interpolation radius outside [0,1]");
  r = std::min(r, 1.0);
  // virtual node index i corresponds to radius i*h (i = 0 is the center)
  auto node_value = [&](int i) { return i == 0 ? center_ : (*this)(i - 1, k); };
  int i0 = static_cast<int>(std::floor(r / h)) - 1;
  i0 = std::clamp(i0, 0, n - 3);
  double w[4], x[4];
  for (int t = 0; t < 4; ++t) x[t] = (i0 + t) * h;
  for (int t = 0; t < 4; ++t) {
    double num = 1.0, den = 1.0;
    for (int s = 0; s < 4; ++s) {
      if (s == t) continue;
      num *= r - x[s];
      den *= x[t] - x[s];
    }
    w[t] = num / den;
  }
  double out = 0.0;
  for (int t = 0; t < 4; ++t) out += w[t] * node_value(i0 + t);
  return out;
}

double DiskField::mean_value_residual() const {
  // harmonic fields have circle means equal to the center value
  double worst = 0.0;
  for (int j = 0; j < grid_.n_radii; ++j) {
    auto rw = row(j);
    const double mean = std::accumulate(rw.begin(), rw.end(), 0.0) / grid_.n_angles;
    worst = std::max(worst, std::abs(mean - center_));
  }
  return worst;
}

}  // namespace hdisc
