#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hdisc {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform angular grid theta_k = 2 pi k / n, k = 0..n-1.
struct AngleGrid {
  int n = 0;

  explicit AngleGrid(int n_angles) : n(n_angles) {
    if (n < 8 || !is_power_of_two(n))
      throw std::invalid_argument("AngleGrid: n_angles must be a power of two >= 8");
  }

  double theta(int k) const { return 2.0 * std::numbers::pi * k / n; }
  double spacing() const { return 2.0 * std::numbers::pi / n; }

  friend bool operator==(const AngleGrid& a, const AngleGrid& b) { return a.n == b.n; }
};

/// Polar grid: radii r_j = (j+1)/n_radii for j = 0..n_radii-1 (last radius exactly 1)
/// plus the center handled as a distinguished node.
struct PolarGrid {
  int n_radii = 0;
  int n_angles = 0;

  PolarGrid(int n_radii_, int n_angles_) : n_radii(n_radii_), n_angles(n_angles_) {
    if (n_radii < 8 || !is_power_of_two(n_radii))
      throw std::invalid_argument("PolarGrid: n_radii must be a power of two >= 8");
    AngleGrid check(n_angles);  // validates angle count
    (void)check;
  }

  double radius(int j) const { return static_cast<double>(j + 1) / n_radii; }
  double dr() const { return 1.0 / n_radii; }
  double theta(int k) const { return 2.0 * std::numbers::pi * k / n_angles; }
  AngleGrid angle_grid() const { return AngleGrid(n_angles); }

  friend bool operator==(const PolarGrid& a, const PolarGrid& b) {
    return a.n_radii == b.n_radii && a.n_angles == b.n_angles;
  }
};

}  // namespace hdisc
