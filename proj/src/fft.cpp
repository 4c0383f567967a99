#include "hardydisc/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace hdisc::fft {

namespace {

// Plan cache. Plan creation is not thread safe in FFTW; execution via
// fftw_execute_dft on caller buffers is. Plans are created with
// FFTW_UNALIGNED so they accept arbitrary std::complex<double> storage.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::unordered_map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> scratch(static_cast<size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fft: plan creation failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward_row(std::complex<double>* data, int n) {
  if (n <= 0) throw std::invalid_argument("fft: empty input");
  auto& p = plans_for(n);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.fwd, buf, buf);
  const double scale = 1.0 / n;
  for (int i = 0; i < n; ++i) data[i] *= scale;
}

void inverse_row(std::complex<double>* data, int n) {
  if (n <= 0) throw std::invalid_argument("fft: empty input");
  auto& p = plans_for(n);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.bwd, buf, buf);
}

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& values) {
  std::vector<std::complex<double>> out = values;
  forward_row(out.data(), static_cast<int>(out.size()));
  return out;
}

std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& coeffs) {
  std::vector<std::complex<double>> out = coeffs;
  inverse_row(out.data(), static_cast<int>(out.size()));
  return out;
}

}  // namespace hdisc::fft
