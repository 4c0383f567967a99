#include "hardydisc/kappa.hpp"

#include <cmath>
#include <stdexcept>

namespace hdisc {

SmoothingKappa::SmoothingKappa(double c) : c_(c), s_(-c) {
  if (!(c > -1.0 && c < 0.0)) throw std::invalid_argument("SmoothingKappa: c must lie in (-1, 0)");
  a_ = -std::log(s_) / std::numbers::e;
  b_ = -1.0 / std::log(s_);
}

double SmoothingKappa::eval(double t) const {
  if (t <= c_) return c_;
  const double w = t - c_;
  // c + s^((s/w)^b): the exponent is exactly 1 at t = 0, giving kappa(0) = 0 exactly
  const double expo = std::pow(s_ / w, b_);
  return c_ + std::pow(s_, expo);
}

double SmoothingKappa::deriv(double t) const {
  if (t <= c_) return 0.0;
  const double w = t - c_;
  // log-space evaluation: kappa' = exp(-1 - (b+1) ln w - a w^{-b})
  const double ex = -1.0 - (b_ + 1.0) * std::log(w) - a_ * std::pow(w, -b_);
  if (ex < -745.0) return 0.0;
  return std::exp(ex);
}

double SmoothingKappa::second(double t) const {
  if (t <= c_) return 0.0;
  const double w = t - c_;
  // kappa'' = kappa' * (a b w^{-b-1} - (b+1)/w)
  const double d1 = deriv(t);
  if (d1 == 0.0) return 0.0;
  return d1 * (a_ * b_ * std::pow(w, -b_ - 1.0) - (b_ + 1.0) / w);
}

}  // namespace hdisc
