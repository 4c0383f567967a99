#pragma once

#include <string>
#include <vector>

#include "hardydisc/exhaustion.hpp"
#include "hardydisc/hardy.hpp"

namespace hdisc::presets {

/// Named boundary weights with closed-form oracles.
/// trig coefficients give psi(theta) = a0 + sum_j a_j cos(j theta).
CircleFunction weight_exp(AngleGrid grid);                                  // exp(2 - 2 cos theta)
CircleFunction weight_trig(AngleGrid grid, const std::vector<double>& a);   // trig polynomial
AnalyticFunction phi_halfplus(AngleGrid grid);                              // (1 + z)/2

struct NamedExhaustion {
  Exhaustion exhaustion;
  CircleFunction reference_weight;  // closed-form V_u target
  double weight_tolerance = 1e-6;
};

/// green-disk | biharmonic-const | exp-weight | trig-weight
NamedExhaustion make_exhaustion(const std::string& preset, int n_angles,
                                const std::vector<double>& trig_coeffs);

bool is_weight_preset(const std::string& preset);

}  // namespace hdisc::presets
