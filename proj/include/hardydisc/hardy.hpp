#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "hardydisc/circle_function.hpp"
#include "hardydisc/exhaustion.hpp"

namespace hdisc {

/// sgn(alpha) = |alpha|/alpha, sgn(0) = 0.
inline std::complex<double> sgn(std::complex<double> a) {
  const double m = std::abs(a);
  return m == 0.0 ? std::complex<double>(0.0) : std::abs(a) / a;
}

struct FactoredForm {
  std::vector<std::complex<double>> blaschke_zeros;
  std::vector<std::pair<double, double>> singular_atoms;  // (boundary angle, mass >= 0)
  std::optional<CircleFunction> outer_log_modulus;
};

/// Element of H^p: truncated Taylor coefficients plus boundary samples,
/// optionally in factored form. Interior evaluation prefers the factored form
/// (exact products) and falls back to Horner on the Taylor coefficients.
class AnalyticFunction {
 public:
  static AnalyticFunction from_taylor(AngleGrid grid, std::vector<std::complex<double>> taylor);
  static AnalyticFunction from_boundary(CircleFunction boundary);

  const CircleFunction& boundary() const { return boundary_; }
  const std::vector<std::complex<double>>& taylor() const { return taylor_; }
  /// Max modulus over negative-frequency bins of the boundary samples.
  double negative_frequency_residual() const { return neg_residual_; }

  std::complex<double> at(std::complex<double> z) const;
  std::complex<double> at_zero() const { return at(0.0); }

  const std::optional<FactoredForm>& factored() const { return factored_; }
  void set_factored(FactoredForm f) { factored_ = std::move(f); }

 private:
  AnalyticFunction(CircleFunction boundary, std::vector<std::complex<double>> taylor);
  CircleFunction boundary_;
  std::vector<std::complex<double>> taylor_;
  std::optional<FactoredForm> factored_;
  double neg_residual_ = 0.0;
};

/// A weight V >= 1 with its singular u-inner outer function phi (|phi*|^2 V = 1)
/// and the exponent p. The stored phi is the canonical outer representative,
/// normalized positive at the origin.
struct HardyContext {
  CircleFunction weight;
  AnalyticFunction phi;
  double p = 2.0;
  double scale = 1.0;              // multiple applied to reach V >= 1
  CircleFunction herglotz;         // h with phi = exp(h); empty meaning for excluded contexts
  std::vector<int> excluded;       // angle indices where the weight is not finite
  double inner_residual = 0.0;     // sup | |phi|^2 V - 1 | off the excluded set

  /// Boundary samples of phi^alpha on the principal (positive-at-0) branch.
  CircleFunction phi_power(double alpha) const;
};

/// Zero-free analytic function with prescribed boundary modulus:
/// exp(analytic_completion(log w)); positive at the origin.
AnalyticFunction outer_from_modulus(const CircleFunction& w);

/// Context with phi = outer_from_modulus(V^{-1/2}); rescales V by 1/min V when min V < 1.
HardyContext context_from_weight(const CircleFunction& V, double p);

/// Inverse problem: weight V = 1/|phi*|^2 and an exhaustion realizing it
/// (smooth construction when V is finite on the grid, the monotone-limit
/// construction with mollified truncations otherwise).
std::pair<HardyContext, Exhaustion> context_from_phi(const AnalyticFunction& phi, double p,
                                                     int lsc_depth = 4);

/// Finite Blaschke product with the given interior zeros.
AnalyticFunction blaschke(const std::vector<std::complex<double>>& zeros, AngleGrid grid);

/// S(z) = exp(-sum m_k (zeta_k + z)/(zeta_k - z)).
AnalyticFunction singular_inner(const std::vector<std::pair<double, double>>& atoms, AngleGrid grid);

/// f = B S phi^{2/p} F.
AnalyticFunction compose_factorization(const AnalyticFunction& B, const AnalyticFunction& S,
                                       const HardyContext& ctx, const AnalyticFunction& F);

struct RecoveredOuter {
  AnalyticFunction F;
  std::vector<int> excluded_samples;
};

/// F = f / (B S phi^{2/p}) on boundary samples; near-zero denominators are
/// excluded and filled by interpolation (too many exclusions is an error).
RecoveredOuter recover_outer_part(const AnalyticFunction& f, const AnalyticFunction& B,
                                  const AnalyticFunction& S, const HardyContext& ctx);

/// ||f||_{u,p} = (int |f*|^p V d nu)^{1/p}.
double weighted_norm(const AnalyticFunction& f, const HardyContext& ctx);
double weighted_norm_lp(const CircleFunction& g, const CircleFunction& V, double p);

struct MembershipReport {
  double classical_norm = 0.0;
  double weighted_norm = 0.0;
  bool diverges = false;
  double refine_ratio_1 = 0.0;  // I(2n)/I(n)
  double refine_ratio_2 = 0.0;  // I(4n)/I(2n)
  int excluded_samples = 0;
};

/// Classical and weighted norms plus a divergence flag from a grid-refinement
/// ratio test (weight resampled through phi's Taylor data).
MembershipReport membership(const AnalyticFunction& f, const HardyContext& ctx);

/// F = phi^{-2/p} f; isometric onto H^p.
AnalyticFunction transfer_to_classical(const AnalyticFunction& f, const HardyContext& ctx);
AnalyticFunction transfer_from_classical(const AnalyticFunction& F, const HardyContext& ctx);

enum class TransferDirection { ToClassical, FromClassical };
/// Multiplication by phi^{-2/p} (ToClassical) or phi^{2/p} (FromClassical) on L^p data.
CircleFunction transfer_lp(const CircleFunction& g, const HardyContext& ctx, TransferDirection dir);

/// |log|f(0)| - int log|f*| d nu|; small residual certifies outer on the grid.
double is_outer(const AnalyticFunction& f);

}  // namespace hdisc
