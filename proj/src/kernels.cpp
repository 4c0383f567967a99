#include "hardydisc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardydisc/fft.hpp"

#ifdef HDISC_HAVE_OPENMP
#include <omp.h>
#endif

namespace hdisc::kernels {

Execution default_execution() {
#ifdef HDISC_HAVE_OPENMP
  return Execution::Parallel;
#else
  return Execution::Serial;
#endif
}

void for_rows(int n_rows, Execution ex, const std::function<void(int)>& body) {
  if (ex == Execution::Parallel) {
#ifdef HDISC_HAVE_OPENMP
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_rows; ++j) body(j);
    return;
#endif
  }
  for (int j = 0; j < n_rows; ++j) body(j);
}

void extension_rows(const std::vector<std::complex<double>>& coeffs, const PolarGrid& grid,
                    Execution ex, std::span<double> out) {
  const int na = grid.n_angles;
  const int nr = grid.n_radii;
  if (static_cast<int>(coeffs.size()) != na) throw std::invalid_argument("extension_rows: size mismatch");
  if (out.size() != static_cast<size_t>(nr) * na) throw std::invalid_argument("extension_rows: bad output span");
  for_rows(nr, ex, [&](int j) {
    const double r = grid.radius(j);
    std::vector<std::complex<double>> buf(na);
    for (int bin = 0; bin < na; ++bin) {
      const int m = std::abs(fft::bin_frequency(bin, na));
      buf[bin] = coeffs[bin] * std::pow(r, m);
    }
    fft::inverse_row(buf.data(), na);
    double* row = out.data() + static_cast<size_t>(j) * na;
    for (int k = 0; k < na; ++k) row[k] = buf[k].real();
  });
}

void laplacian_rows(const DiskField& f, Execution ex, std::span<double> out_interior) {
  const PolarGrid& g = f.grid();
  const int na = g.n_angles;
  const int nr = g.n_radii;
  if (nr < 8) throw std::invalid_argument("laplacian_rows: too few radii");
  if (out_interior.size() != static_cast<size_t>(nr - 1) * na)
    throw std::invalid_argument("laplacian_rows: bad output span");
  const double h = g.dr();

  // virtual radial index i = 0..nr at radius i*h; i = 0 is the center
  auto val = [&](int i, int k) { return i == 0 ? f.center() : f(i - 1, k); };

  for_rows(nr - 1, ex, [&](int row) {
    const int i = row + 1;  // radius i*h, i = 1..nr-1
    const double r = i * h;
    std::vector<std::complex<double>> buf(na);
    for (int k = 0; k < na; ++k) buf[k] = val(i, k);
    fft::forward_row(buf.data(), na);
    double ceil_mag = 0.0;
    for (auto& c : buf) ceil_mag = std::max(ceil_mag, std::abs(c));
    const double floor_mag = 1e-12 * ceil_mag;
    for (int bin = 0; bin < na; ++bin) {
      const int m = fft::bin_frequency(bin, na);
      if (std::abs(m) >= 2 && std::abs(buf[bin]) < floor_mag)
        buf[bin] = 0.0;
      else
        buf[bin] *= -static_cast<double>(m) * m;
    }
    fft::inverse_row(buf.data(), na);

    double* out = out_interior.data() + static_cast<size_t>(row) * na;
    for (int k = 0; k < na; ++k) {
      const double urr = (val(i + 1, k) - 2.0 * val(i, k) + val(i - 1, k)) / (h * h);
      double ur;
      if (i == 1) {
        ur = (-2.0 * val(0, k) - 3.0 * val(1, k) + 6.0 * val(2, k) - val(3, k)) / (6.0 * h);
      } else if (i >= nr - 1) {
        ur = (2.0 * val(i + 1, k) + 3.0 * val(i, k) - 6.0 * val(i - 1, k) + val(i - 2, k)) / (6.0 * h);
      } else {
        ur = (-val(i + 2, k) + 8.0 * val(i + 1, k) - 8.0 * val(i - 1, k) + val(i - 2, k)) / (12.0 * h);
      }
      out[k] = urr + ur / r + buf[k].real() / (r * r);
    }
  });
}

void balayage_modes(const std::function<void(double, std::span<double>)>& density_row,
                    std::span<const double> radii, std::span<const double> weights, int n_angles,
                    Execution ex, std::vector<std::complex<double>>& modes) {
  if (radii.size() != weights.size()) throw std::invalid_argument("balayage_modes: rule size mismatch");
  if (static_cast<int>(modes.size()) != n_angles) throw std::invalid_argument("balayage_modes: bad modes size");
  const int n_nodes = static_cast<int>(radii.size());
  constexpr int kChunk = 256;
  std::vector<std::complex<double>> slot(static_cast<size_t>(kChunk) * n_angles);
  for (int lo = 0; lo < n_nodes; lo += kChunk) {
    const int hi = std::min(lo + kChunk, n_nodes);
    for_rows(hi - lo, ex, [&](int t) {
      const double r = radii[lo + t];
      const double w = weights[lo + t];
      std::vector<double> row(n_angles);
      density_row(r, row);
      std::complex<double>* dst = slot.data() + static_cast<size_t>(t) * n_angles;
      for (int k = 0; k < n_angles; ++k) dst[k] = row[k];
      fft::forward_row(dst, n_angles);
      for (int bin = 0; bin < n_angles; ++bin) {
        const int m = std::abs(fft::bin_frequency(bin, n_angles));
        dst[bin] *= w * std::pow(r, m + 1);
      }
    });
    // fixed-order combine keeps the result independent of thread count
    for (int t = 0; t < hi - lo; ++t) {
      const std::complex<double>* src = slot.data() + static_cast<size_t>(t) * n_angles;
      for (int k = 0; k < n_angles; ++k) modes[k] += src[k];
    }
  }
}

void area_partials(const DiskField& f, Execution ex, std::span<double> partial) {
  const PolarGrid& g = f.grid();
  if (partial.size() != static_cast<size_t>(g.n_radii)) throw std::invalid_argument("area_partials: bad span");
  const double dtheta = g.angle_grid().spacing();
  for_rows(g.n_radii, ex, [&](int j) {
    auto row = f.row(j);
    double s = 0.0;
    for (double v : row) s += v;
    partial[j] = s * dtheta * g.radius(j);
  });
}

std::vector<double> simpson_weights(int n_intervals) {
  if (n_intervals < 2 || n_intervals % 2 != 0)
    throw std::invalid_argument("simpson_weights: interval count must be even and >= 2");
  std::vector<double> w(n_intervals + 1, 1.0);
  for (int i = 1; i < n_intervals; ++i) w[i] = (i % 2 == 1) ? 4.0 : 2.0;
  const double h = 1.0 / n_intervals;
  for (auto& x : w) x *= h / 3.0;
  return w;
}

}  // namespace hdisc::kernels
