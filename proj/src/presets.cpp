#include "hardydisc/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace hdisc::presets {

CircleFunction weight_exp(AngleGrid grid) {
  return CircleFunction::sample_real(grid, [](double t) { return std::exp(2.0 - 2.0 * std::cos(t)); });
}

CircleFunction weight_trig(AngleGrid grid, const std::vector<double>& a) {
  if (a.empty()) throw std::invalid_argument("weight_trig: no coefficients");
  auto f = [&a](double t) {
    double s = a[0];
    for (size_t j = 1; j < a.size(); ++j) s += a[j] * std::cos(j * t);
    return s;
  };
  CircleFunction out = CircleFunction::sample_real(grid, f);
  auto v = out.real_values();
  for (double x : v)
    if (x <= 0.0) throw std::invalid_argument("weight_trig: coefficients give a non-positive weight");
  return out;
}

AnalyticFunction phi_halfplus(AngleGrid grid) {
  return AnalyticFunction::from_taylor(grid, {0.5, 0.5});
}

NamedExhaustion make_exhaustion(const std::string& preset, int n_angles,
                                const std::vector<double>& trig_coeffs) {
  AngleGrid grid(n_angles);
  if (preset == "green-disk") {
    return {green_exhaustion(n_angles), CircleFunction::constant(grid, 1.0), 1e-10};
  }
  if (preset == "biharmonic-const") {
    return {construct_biharmonic(CircleFunction::constant(grid, 0.0), 1.0),
            CircleFunction::constant(grid, 1.0), 1e-6};
  }
  if (preset == "exp-weight") {
    CircleFunction psi = weight_exp(grid);
    return {construct_exhaustion_c2(psi), psi, 1e-3};
  }
  if (preset == "trig-weight") {
    CircleFunction psi = weight_trig(grid, trig_coeffs.empty() ? std::vector<double>{2.0, 1.0}
                                                               : trig_coeffs);
    return {construct_exhaustion_c2(psi), psi, 1e-4};
  }
  throw std::invalid_argument("unknown exhaustion preset '" + preset + "'");
}

bool is_weight_preset(const std::string& preset) {
  return preset == "green-disk" || preset == "biharmonic-const" || preset == "exp-weight" ||
         preset == "trig-weight";
}

}  // namespace hdisc::presets
