#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "hardydisc/hardy.hpp"

namespace hdisc {

/// Conjugate exponent: q = p/(p-1), with q = inf for p = 1.
double conjugate_exponent(double p);

/// L^q norm on the circle against d nu (q = inf gives the max).
double lq_norm(const CircleFunction& g, double q);

/// Linear functional data: g in L^q(V d nu) together with its classical transfer
/// G, related by g = phi^{2/q} sgn(phi^2) G.
struct BoundaryFunctional {
  CircleFunction g;
  CircleFunction G;
  double q = 2.0;
  std::shared_ptr<const HardyContext> ctx;
  double transfer_residual = 0.0;  // | ||g||_{q,u} - ||G||_q |
};

BoundaryFunctional functional_from_classical(const CircleFunction& G,
                                             std::shared_ptr<const HardyContext> ctx);

/// L_G(f) = int F G d nu with F = transfer_to_classical(f). (The displayed integral
/// elsewhere uses d theta; ours differs by the constant 2 pi, which cancels in all
/// orthogonality and duality statements.)
std::complex<double> functional_LG(const CircleFunction& G, const AnalyticFunction& f,
                                   const HardyContext& ctx, double q);

struct AnnihilatorReport {
  double max_residual = 0.0;
  double norm_g_weighted = 0.0;
  double norm_G_classical = 0.0;
};

/// max over the test set of |int f g V d nu| for g built from analytic G with G(0) = 0;
/// also reports the norm transfer ||g||_{u,q} = ||G||_q.
AnnihilatorReport annihilator_check(const AnalyticFunction& G,
                                    const std::vector<AnalyticFunction>& test_set,
                                    const HardyContext& ctx);

/// lambda(f) = int F G e^{i theta} d nu.
std::complex<double> lambda_functional(const AnalyticFunction& f, const BoundaryFunctional& bf);

struct PrimalResult {
  double value = 0.0;
  std::vector<std::complex<double>> coefficients;  // maximizer F, ||F||_p = 1
  int iterations = 0;
  bool converged = false;
};

struct DualResult {
  double value = 0.0;
  std::vector<std::complex<double>> coefficients;  // minimizer H
  int iterations = 0;
  bool converged = false;
};

/// sup{|lambda(f)| : ||f||_{p,u} <= 1} over transferred polynomials of degree N,
/// by scale-invariant projected gradient ascent (closed form for p = 2).
PrimalResult primal_extremal(const BoundaryFunctional& bf, int degree, int iterations,
                             unsigned seed = 0, bool random_start = false);

/// inf{||g - h||_{q,u} : h in H^q_u} over transferred polynomials of degree N:
/// orthogonal projection for q = 2, damped IRLS otherwise.
DualResult dual_extremal(const BoundaryFunctional& bf, int degree, int iterations);

struct ExtremalSolution {
  double lambda_value = 0.0;
  double gamma_value = 0.0;
  double gap = 0.0;
  std::optional<AnalyticFunction> maximizer;  // in H^p_u coordinates
  std::optional<AnalyticFunction> minimizer;  // g0 in H^q_u coordinates
  int primal_iterations = 0;
  int dual_iterations = 0;
  bool weak_duality_ok = true;
  bool certified = true;          // false at the p = 1 / q = inf endpoints or on solver failure
  double restart_distance = 0.0;  // coefficient distance between two primal initializations
  unsigned seed = 0;
};

/// Runs both solvers, reports the gap |Lambda - Gamma|, flags weak-duality
/// violations, and probes uniqueness with a second random initialization.
ExtremalSolution duality_certificate(const BoundaryFunctional& bf, int degree, int iterations,
                                     unsigned seed = 0);

/// Predual pairing Gamma(f + H^q_{u,0}) = int [f phi^{-2/q}] [G phi^{-2/p}] d nu.
std::complex<double> predual_pairing(const AnalyticFunction& G_rep, const CircleFunction& coset_rep,
                                     const HardyContext& ctx, double q);

}  // namespace hdisc
