#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hardydisc/disk_field.hpp"
#include "hardydisc/grids.hpp"

namespace hdisc::kernels {

enum class Execution { Serial, Parallel };

/// Parallel when built with OpenMP, otherwise Serial.
Execution default_execution();

/// Run body(j) for j = 0..n_rows-1. Rows must be independent; outputs are
/// deterministic regardless of thread count.
void for_rows(int n_rows, Execution ex, const std::function<void(int)>& body);

/// Fill the harmonic-extension field rows: out(j,k) = sum_m c_m r_j^{|m|} e^{i m theta_k}.
/// coeffs are FFT-bin-order circle coefficients, out has n_radii*n_angles slots.
void extension_rows(const std::vector<std::complex<double>>& coeffs, const PolarGrid& grid,
                    Execution ex, std::span<double> out);

/// Discrete polar Laplacian rows for interior radii r = h..1-h (j = 0..n_radii-2 of out).
/// Radial second derivative: central differences; radial first derivative: 4th-order
/// stencils (one-sided at the first and last interior rows) so the 1/r term stays
/// second-order accurate near the center; angular part spectral with a relative
/// noise floor that zeroes sub-roundoff modes |m| >= 2.
void laplacian_rows(const DiskField& f, Execution ex, std::span<double> out_interior);

/// Accumulate balayage modes: modes[m] += sum_q w_q * fft(density_row(r_q))[m] * r_q^{|m|+1}.
/// density_row fills n_angles values for a given radius. Deterministic chunked reduction.
void balayage_modes(const std::function<void(double, std::span<double>)>& density_row,
                    std::span<const double> radii, std::span<const double> weights, int n_angles,
                    Execution ex, std::vector<std::complex<double>>& modes);

/// Per-radius angular integrals for area quadrature: partial[j] = (2 pi / n_angles) * sum_k f(j,k) * r_j.
void area_partials(const DiskField& f, Execution ex, std::span<double> partial);

/// Composite Simpson weights for n+1 uniform nodes spanning [0, 1]; n must be even.
std::vector<double> simpson_weights(int n_intervals);

}  // namespace hdisc::kernels
