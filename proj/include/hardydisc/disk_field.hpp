#pragma once

#include <span>
#include <vector>

#include "hardydisc/grids.hpp"

namespace hdisc {

/// Real scalar field on the polar grid of the closed disk: values at
/// (r_j, theta_k) for j = 0..n_radii-1 (r = 1/n..1) plus a center value.
class DiskField {
 public:
  DiskField(PolarGrid grid, std::vector<double> values, double center);
  static DiskField zero(PolarGrid grid);
  static DiskField constant(PolarGrid grid, double v);

  const PolarGrid& grid() const { return grid_; }
  int n_radii() const { return grid_.n_radii; }
  int n_angles() const { return grid_.n_angles; }

  double operator()(int j, int k) const { return values_[static_cast<size_t>(j) * grid_.n_angles + k]; }
  double& at(int j, int k) { return values_[static_cast<size_t>(j) * grid_.n_angles + k]; }
  std::span<const double> row(int j) const {
    return {values_.data() + static_cast<size_t>(j) * grid_.n_angles, static_cast<size_t>(grid_.n_angles)};
  }
  std::span<double> row_mut(int j) {
    return {values_.data() + static_cast<size_t>(j) * grid_.n_angles, static_cast<size_t>(grid_.n_angles)};
  }
  const std::vector<double>& values() const { return values_; }
  double center() const { return center_; }
  void set_center(double c) { center_ = c; }

  bool all_finite(bool include_center = true) const;

  /// 4-point Lagrange interpolation in r along the ray theta_k, using the
  /// center node for small radii. r in [0, 1].
  double interpolate_radial(double r, int k) const;

  /// Max |discrete mean-value residual| over interior nodes; small for harmonic fields.
  double mean_value_residual() const;

 private:
  PolarGrid grid_;
  std::vector<double> values_;
  double center_ = 0.0;
};

}  // namespace hdisc
