#pragma once

namespace hdisc {

/// Smooth flattening function kappa_c on (-inf, 0]: identically c below level c,
/// kappa(0) = 0 (exact in IEEE arithmetic via the power form), kappa'(0) = 1.
/// kappa(t) = c + exp(-a/(t-c)^b) for t > c with a = -ln(-c)/e, b = -1/ln(-c).
class SmoothingKappa {
 public:
  explicit SmoothingKappa(double c);

  double c() const { return c_; }
  double a() const { return a_; }
  double b() const { return b_; }

  /// Value; the analytic branch extends to any t > c.
  double eval(double t) const;
  /// First derivative: kappa'(t) = (1/(e (t-c)^{b+1})) e^{-a/(t-c)^b}, 0 for t <= c.
  double deriv(double t) const;
  /// Second derivative of the analytic branch, 0 for t <= c.
  double second(double t) const;

 private:
  double c_, s_, a_, b_;
};

}  // namespace hdisc
