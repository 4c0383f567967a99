#pragma once

#include <complex>
#include <vector>

namespace hdisc::fft {

/// Forward DFT with the 1/n convention: c_m = (1/n) sum_k v_k e^{-i m theta_k}.
/// Coefficients are returned in FFT bin order (bin m for m >= 0, bin n+m for m < 0).
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& values);

/// Inverse of forward: v_k = sum_m c_m e^{i m theta_k}.
std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& coeffs);

/// In-place row transforms operating on contiguous buffers of length n.
void forward_row(std::complex<double>* data, int n);
void inverse_row(std::complex<double>* data, int n);

/// Signed frequency of FFT bin b for size n: b <= n/2-1 -> b, else b-n.
inline int bin_frequency(int bin, int n) { return bin < n - n / 2 ? bin : bin - n; }

}  // namespace hdisc::fft
