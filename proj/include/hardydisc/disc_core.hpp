#pragma once

#include <complex>

#include "hardydisc/circle_function.hpp"
#include "hardydisc/disk_field.hpp"
#include "hardydisc/kernels.hpp"

namespace hdisc {

/// P(z, e^{i zeta}) = (1-r^2)/(1 - 2 r cos(t-zeta) + r^2) for z = r e^{it}.
/// Pairs with the normalized measure d nu = d theta / (2 pi): its boundary mean is 1.
double poisson_kernel(double r, double t, double zeta_angle);

/// Harmonic extension of real boundary data: Fourier multiplier r^{|m|}.
/// Boundary row reproduces bf; center value is the mean of bf.
DiskField harmonic_extension(const CircleFunction& bf, const PolarGrid& grid,
                             kernels::Execution ex = kernels::default_execution());

/// One-sided 3-point estimate of d/dr at r = 1 per angle.
CircleFunction radial_boundary_derivative(const DiskField& field);

/// Classical Laplacian on the grid; interior rows by finite differences in r and
/// spectral differentiation in theta, boundary row extrapolated, center by the
/// mean-value formula.
DiskField laplacian(const DiskField& field, kernels::Execution ex = kernels::default_execution());

/// Integral over the disk of field against r dr dtheta (composite Simpson in r,
/// trapezoid in theta). With riesz_normalization the result is divided by 2 pi,
/// so that the Riesz measure of log|z| has total mass 1.
double area_integral(const DiskField& field, bool riesz_normalization,
                     kernels::Execution ex = kernels::default_execution());

/// Normalized boundary integral against d nu = d theta / (2 pi): (1/n) sum of values.
std::complex<double> boundary_integral(const CircleFunction& bf);

/// Herglotz transform of real boundary data: c_0 -> c_0, c_m -> 2 c_m (m > 0),
/// c_m -> 0 (m < 0). The real part of the result extends bf harmonically.
CircleFunction analytic_completion(const CircleFunction& bf);

}  // namespace hdisc
