#include "hardydisc/duality.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hdisc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool conjugate_pair(double p, double q) {
  if (p == 1.0) return q == kInf;
  if (q == 1.0) return p == kInf;
  return std::abs(1.0 / p + 1.0 / q - 1.0) < 1e-12;
}

std::vector<std::complex<double>> eval_poly_on_grid(const std::vector<std::complex<double>>& b,
                                                    const AngleGrid& grid) {
  std::vector<std::complex<double>> coeffs(grid.n, 0.0);
  std::copy(b.begin(), b.end(), coeffs.begin());
  return CircleFunction::from_coefficients(grid, std::move(coeffs)).values();
}

double lp_mean_norm(const std::vector<std::complex<double>>& v, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (const auto& x : v) acc += std::pow(std::abs(x), p);
  return std::pow(acc / v.size(), 1.0 / p);
}
}  // namespace

double conjugate_exponent(double p) {
  if (p < 1.0) throw std::invalid_argument("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

double lq_norm(const CircleFunction& g, double q) { return lp_mean_norm(g.values(), q); }

BoundaryFunctional functional_from_classical(const CircleFunction& G,
                                             std::shared_ptr<const HardyContext> ctx) {
  const double q = conjugate_exponent(ctx->p);
  const int n = G.size();
  const CircleFunction pq = ctx->phi_power(q == kInf ? 0.0 : 2.0 / q);
  std::vector<std::complex<double>> gv(n);
  for (int k = 0; k < n; ++k) {
    const std::complex<double> ph = ctx->phi.boundary().value(k);
    gv[k] = pq.value(k) * sgn(ph * ph) * G.value(k);
  }
  BoundaryFunctional bf{CircleFunction(G.grid(), std::move(gv)), G, q, ctx, 0.0};
  if (q != kInf) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += std::pow(std::abs(bf.g.value(k)), q) * ctx->weight.value(k).real();
    const double norm_g = std::pow(acc / n, 1.0 / q);
    bf.transfer_residual = std::abs(norm_g - lq_norm(G, q));
  }
  return bf;
}

std::complex<double> functional_LG(const CircleFunction& G, const AnalyticFunction& f,
                                   const HardyContext& ctx, double q) {
  if (!conjugate_pair(ctx.p, q))
    throw std::invalid_argument("functional_LG: exponents are not conjugate");
  const AnalyticFunction F = transfer_to_classical(f, ctx);
  return boundary_integral(F.boundary() * G);
}

AnnihilatorReport annihilator_check(const AnalyticFunction& G,
                                    const std::vector<AnalyticFunction>& test_set,
                                    const HardyContext& ctx) {
  double gscale = 0.0;
  for (const auto& v : G.boundary().values()) gscale = std::max(gscale, std::abs(v));
  if (std::abs(G.at_zero()) > 1e-12 * (1.0 + gscale))
    throw std::invalid_argument("annihilator_check: G(0) must vanish");
  const double q = conjugate_exponent(ctx.p);
  const int n = G.boundary().size();
  const CircleFunction pq = ctx.phi_power(q == kInf ? 0.0 : 2.0 / q);
  std::vector<std::complex<double>> gv(n);
  for (int k = 0; k < n; ++k) {
    const std::complex<double> ph = ctx.phi.boundary().value(k);
    gv[k] = pq.value(k) * sgn(ph * ph) * G.boundary().value(k);
  }
  const CircleFunction g(G.boundary().grid(), std::move(gv));

  AnnihilatorReport rep;
  for (const auto& f : test_set) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += f.boundary().value(k) * g.value(k) * ctx.weight.value(k).real();
    rep.max_residual = std::max(rep.max_residual, std::abs(acc) / n);
  }
  double accq = 0.0;
  for (int k = 0; k < n; ++k)
    accq += std::pow(std::abs(g.value(k)), q) * ctx.weight.value(k).real();
  rep.norm_g_weighted = std::pow(accq / n, 1.0 / q);
  rep.norm_G_classical = lq_norm(G.boundary(), q);
  return rep;
}

std::complex<double> lambda_functional(const AnalyticFunction& f, const BoundaryFunctional& bf) {
  const AnalyticFunction F = transfer_to_classical(f, *bf.ctx);
  const int n = F.boundary().size();
  std::complex<double> acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = F.boundary().theta(k);
    acc += F.boundary().value(k) * bf.G.value(k) * std::polar(1.0, th);
  }
  return acc / static_cast<double>(n);
}

namespace {

// lambda picks the coefficient pairing sum_n a_n Ghat(-1-n)
std::vector<std::complex<double>> lambda_weights(const CircleFunction& G, int degree) {
  std::vector<std::complex<double>> tau(degree + 1);
  for (int nn = 0; nn <= degree; ++nn) tau[nn] = G.coeff(-(nn + 1));
  return tau;
}

std::complex<double> lambda_of_coeffs(const std::vector<std::complex<double>>& a,
                                      const std::vector<std::complex<double>>& tau) {
  std::complex<double> s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * tau[i];
  return s;
}

}  // namespace

PrimalResult primal_extremal(const BoundaryFunctional& bf, int degree, int iterations, unsigned seed,
                             bool random_start) {
  const double p = bf.ctx->p;
  const AngleGrid grid = bf.G.grid();
  const int n = grid.n;
  if (degree < 0 || degree > n / 2 - 1)
    throw std::invalid_argument("primal_extremal: degree out of range for the grid");
  const auto tau = lambda_weights(bf.G, degree);

  PrimalResult res;
  double tau_norm2 = 0.0;
  for (const auto& t : tau) tau_norm2 += std::norm(t);
  if (tau_norm2 == 0.0) {  // analytic G: the functional vanishes identically
    res.value = 0.0;
    res.coefficients.assign(degree + 1, 0.0);
    res.coefficients[0] = 1.0;
    res.converged = true;
    return res;
  }

  std::vector<std::complex<double>> a(degree + 1);
  if (random_start) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (auto& x : a) x = std::complex<double>(dist(rng), dist(rng));
  } else {
    for (int i = 0; i <= degree; ++i) a[i] = std::conj(tau[i]);
  }

  auto normalize = [&](std::vector<std::complex<double>>& b) {
    const double nb = lp_mean_norm(eval_poly_on_grid(b, grid), p);
    for (auto& x : b) x /= nb;
    return nb;
  };
  normalize(a);
  double J = std::abs(lambda_of_coeffs(a, tau));

  double step = 1.0;
  int it = 0;
  const double pw = p - 2.0;
  for (; it < iterations; ++it) {
    const auto Fv = eval_poly_on_grid(a, grid);
    const std::complex<double> lam = lambda_of_coeffs(a, tau);
    const std::complex<double> phase = std::abs(lam) > 0 ? lam / std::abs(lam) : 1.0;
    // gradient of |lambda(F)| / ||F||_p on the unit sphere
    std::vector<std::complex<double>> grad(degree + 1);
    for (int m = 0; m <= degree; ++m) {
      std::complex<double> gm = 0.0;
      for (int k = 0; k < n; ++k) {
        const double af = std::max(std::abs(Fv[k]), 1e-12);
        gm += std::pow(af, pw) * Fv[k] * std::polar(1.0, -m * grid.theta(k));
      }
      grad[m] = phase * std::conj(tau[m]) - std::abs(lam) * gm / static_cast<double>(n);
    }
    double gnorm = 0.0;
    for (const auto& g : grad) gnorm += std::norm(g);
    if (std::sqrt(gnorm) < 1e-13 * (1.0 + J)) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    double t = step;
    for (int ls = 0; ls < 60; ++ls) {
      auto trial = a;
      for (int m = 0; m <= degree; ++m) trial[m] += t * grad[m];
      normalize(trial);
      const double Jt = std::abs(lambda_of_coeffs(trial, tau));
      if (Jt > J * (1.0 + 1e-16)) {
        a = std::move(trial);
        J = Jt;
        step = std::min(t * 1.5, 1e3);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.converged = true;
      break;
    }
  }
  // rotate so that lambda(F) > 0 (the extremal function is unique with this normalization)
  const std::complex<double> lam = lambda_of_coeffs(a, tau);
  if (std::abs(lam) > 0) {
    const std::complex<double> rot = std::conj(lam) / std::abs(lam);
    for (auto& x : a) x *= rot;
  }
  res.value = J;
  res.coefficients = std::move(a);
  res.iterations = it;
  if (p == 1.0) res.converged = false;  // endpoint: existence is conditional, never certified
  return res;
}

DualResult dual_extremal(const BoundaryFunctional& bf, int degree, int iterations) {
  const double q = bf.q;
  const AngleGrid grid = bf.G.grid();
  const int n = grid.n;
  if (degree < 0 || degree > n / 2 - 1)
    throw std::invalid_argument("dual_extremal: degree out of range for the grid");

  DualResult res;
  std::vector<std::complex<double>> b(degree + 1);
  for (int m = 0; m <= degree; ++m) b[m] = bf.G.coeff(m);  // analytic projection

  if (q == 2.0) {
    auto Hv = eval_poly_on_grid(b, grid);
    std::vector<std::complex<double>> resid(n);
    for (int k = 0; k < n; ++k) resid[k] = bf.G.value(k) - Hv[k];
    res.value = lp_mean_norm(resid, 2.0);
    res.coefficients = std::move(b);
    res.converged = true;
    return res;
  }

  const double q_eff = (q == kInf) ? 64.0 : q;  // desk-scale surrogate at the endpoint
  auto objective = [&](const std::vector<std::complex<double>>& bb) {
    auto Hv = eval_poly_on_grid(bb, grid);
    std::vector<std::complex<double>> r(n);
    for (int k = 0; k < n; ++k) r[k] = bf.G.value(k) - Hv[k];
    return lp_mean_norm(r, q == kInf ? kInf : q);
  };

  double cur = objective(b);
  int it = 0;
  for (; it < iterations; ++it) {
    auto Hv = eval_poly_on_grid(b, grid);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(degree + 1, degree + 1);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(degree + 1);
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) {
      const double r = std::abs(bf.G.value(k) - Hv[k]);
      w[k] = std::clamp(std::pow(std::max(r, 1e-300), q_eff - 2.0), 1e-8, 1e8);
    }
    for (int m = 0; m <= degree; ++m) {
      for (int l = m; l <= degree; ++l) {
        std::complex<double> s = 0.0;
        for (int k = 0; k < n; ++k) s += w[k] * std::polar(1.0, (l - m) * grid.theta(k));
        A(m, l) = s;
        A(l, m) = std::conj(s);
      }
      std::complex<double> r = 0.0;
      for (int k = 0; k < n; ++k) r += w[k] * bf.G.value(k) * std::polar(1.0, -m * grid.theta(k));
      rhs(m) = r;
    }
    Eigen::VectorXcd sol = A.ldlt().solve(rhs);
    std::vector<std::complex<double>> bn(degree + 1);
    for (int m = 0; m <= degree; ++m) bn[m] = sol(m);
    // damped step, accepted only on objective decrease
    bool improved = false;
    double t = 1.0;
    for (int ls = 0; ls < 30; ++ls) {
      std::vector<std::complex<double>> trial(degree + 1);
      for (int m = 0; m <= degree; ++m) trial[m] = b[m] + t * (bn[m] - b[m]);
      const double val = objective(trial);
      if (val < cur - 1e-15 * (1.0 + cur)) {
        b = std::move(trial);
        cur = val;
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) {
      res.converged = true;
      break;
    }
  }
  res.value = cur;
  res.coefficients = std::move(b);
  res.iterations = it;
  if (q == kInf) res.converged = false;  // surrogate endpoint, never certified
  return res;
}

ExtremalSolution duality_certificate(const BoundaryFunctional& bf, int degree, int iterations,
                                     unsigned seed) {
  ExtremalSolution out;
  out.seed = seed;
  const PrimalResult pr = primal_extremal(bf, degree, iterations, seed, false);
  const PrimalResult pr2 = primal_extremal(bf, degree, iterations, seed + 1, true);
  const DualResult du = dual_extremal(bf, degree, iterations);

  out.lambda_value = std::max(pr.value, pr2.value);
  out.gamma_value = du.value;
  out.gap = std::abs(out.gamma_value - out.lambda_value);
  out.primal_iterations = pr.iterations + pr2.iterations;
  out.dual_iterations = du.iterations;
  out.weak_duality_ok = out.lambda_value <= out.gamma_value + 1e-6 * (1.0 + out.gamma_value);

  double dist2 = 0.0;
  for (size_t i = 0; i < pr.coefficients.size(); ++i)
    dist2 += std::norm(pr.coefficients[i] - pr2.coefficients[i]);
  out.restart_distance = std::sqrt(dist2);

  const AngleGrid grid = bf.G.grid();
  auto to_uf = [&](const std::vector<std::complex<double>>& coeffs) {
    AnalyticFunction F = AnalyticFunction::from_taylor(grid, coeffs);
    return transfer_from_classical(F, *bf.ctx);
  };
  out.maximizer = to_uf(pr.value >= pr2.value ? pr.coefficients : pr2.coefficients);
  out.minimizer = to_uf(du.coefficients);

  const double p = bf.ctx->p;
  out.certified = pr.converged && pr2.converged && du.converged && p > 1.0 && bf.q != kInf;
  return out;
}

std::complex<double> predual_pairing(const AnalyticFunction& G_rep, const CircleFunction& coset_rep,
                                     const HardyContext& ctx, double q) {
  if (!conjugate_pair(ctx.p, q))
    throw std::invalid_argument("predual_pairing: exponents are not conjugate");
  const CircleFunction rhs = G_rep.boundary() * ctx.phi_power(-2.0 / ctx.p);
  double scale = 0.0;
  for (const auto& v : rhs.values()) scale = std::max(scale, std::abs(v));
  if (AnalyticFunction::from_boundary(rhs).negative_frequency_residual() > 1e-6 * (1.0 + scale))
    throw std::invalid_argument("predual_pairing: representative is not in H^p_u");
  const CircleFunction lhs = coset_rep * ctx.phi_power(q == kInf ? 0.0 : -2.0 / q);
  return boundary_integral(lhs * rhs);
}

}  // namespace hdisc
