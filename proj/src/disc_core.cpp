#include "hardydisc/disc_core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hardydisc/fft.hpp"

namespace hdisc {

double poisson_kernel(double r, double t, double zeta_angle) {
  if (r < 0.0) throw std::domain_error("poisson_kernel: negative radius");
  if (r >= 1.0) throw std::domain_error("poisson_kernel: radius must be < 1");
  const double num = 1.0 - r * r;
  const double den = 1.0 - 2.0 * r * std::cos(t - zeta_angle) + r * r;
  return num / den;
}

DiskField harmonic_extension(const CircleFunction& bf, const PolarGrid& grid, kernels::Execution ex) {
  if (grid.n_angles != bf.size()) throw std::invalid_argument("harmonic_extension: grid mismatch");
  if (!bf.all_finite()) throw std::invalid_argument("harmonic_extension: non-finite boundary data");
  if (!bf.is_real()) throw std::invalid_argument("harmonic_extension: boundary data must be real");
  std::vector<double> out(static_cast<size_t>(grid.n_radii) * grid.n_angles);
  kernels::extension_rows(bf.coeffs(), grid, ex, out);
  return DiskField(grid, std::move(out), bf.mean().real());
}

CircleFunction radial_boundary_derivative(const DiskField& field) {
  const PolarGrid& g = field.grid();
  if (g.n_radii < 3) throw std::invalid_argument("radial_boundary_derivative: need at least 3 radial nodes");
  const double h = g.dr();
  const int n = g.n_radii;
  std::vector<double> out(g.n_angles);
  for (int k = 0; k < g.n_angles; ++k)
    out[k] = (3.0 * field(n - 1, k) - 4.0 * field(n - 2, k) + field(n - 3, k)) / (2.0 * h);
  return CircleFunction(g.angle_grid(), out);
}

DiskField laplacian(const DiskField& field, kernels::Execution ex) {
  const PolarGrid& g = field.grid();
  const int na = g.n_angles;
  const int nr = g.n_radii;
  std::vector<double> interior(static_cast<size_t>(nr - 1) * na);
  kernels::laplacian_rows(field, ex, interior);
  std::vector<double> out(static_cast<size_t>(nr) * na);
  std::copy(interior.begin(), interior.end(), out.begin());
  // boundary row: quadratic extrapolation from the last three interior rows
  for (int k = 0; k < na; ++k) {
    const double a = interior[static_cast<size_t>(nr - 2) * na + k];
    const double b = interior[static_cast<size_t>(nr - 3) * na + k];
    const double c = interior[static_cast<size_t>(nr - 4) * na + k];
    out[static_cast<size_t>(nr - 1) * na + k] = 3.0 * a - 3.0 * b + c;
  }
  // center: mean-value formula on the first ring
  auto ring = field.row(0);
  const double mean = std::accumulate(ring.begin(), ring.end(), 0.0) / na;
  const double h = g.dr();
  const double center = 4.0 * (mean - field.center()) / (h * h);
  return DiskField(g, std::move(out), center);
}

double area_integral(const DiskField& field, bool riesz_normalization, kernels::Execution ex) {
  const PolarGrid& g = field.grid();
  std::vector<double> partial(g.n_radii);
  kernels::area_partials(field, ex, partial);
  // Simpson over radii 0, h, .., 1; the r weight zeroes the center node
  auto w = kernels::simpson_weights(g.n_radii);
  double total = 0.0;
  for (int j = 0; j < g.n_radii; ++j) total += w[j + 1] * partial[j];
  if (riesz_normalization) total /= 2.0 * std::numbers::pi;
  return total;
}

std::complex<double> boundary_integral(const CircleFunction& bf) { return bf.mean(); }

CircleFunction analytic_completion(const CircleFunction& bf) {
  if (!bf.is_real()) throw std::invalid_argument("analytic_completion: input must be real-valued");
  const int n = bf.size();
  std::vector<std::complex<double>> c = bf.coeffs();
  for (int bin = 0; bin < n; ++bin) {
    const int m = fft::bin_frequency(bin, n);
    if (m > 0)
      c[bin] *= 2.0;
    else if (m < 0)
      c[bin] = 0.0;
  }
  return CircleFunction::from_coefficients(bf.grid(), std::move(c));
}

}  // namespace hdisc
