#include "hardydisc/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hardydisc/fft.hpp"

namespace hdisc {

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}
}  // namespace

AnalyticFunction::AnalyticFunction(CircleFunction boundary, std::vector<std::complex<double>> taylor)
    : boundary_(std::move(boundary)), taylor_(std::move(taylor)) {
  const int n = boundary_.size();
  double res = 0.0;
  for (int bin = 0; bin < n; ++bin)
    if (fft::bin_frequency(bin, n) < 0) res = std::max(res, std::abs(boundary_.coeffs()[bin]));
  neg_residual_ = res;
}

AnalyticFunction AnalyticFunction::from_taylor(AngleGrid grid, std::vector<std::complex<double>> taylor) {
  if (static_cast<int>(taylor.size()) > grid.n / 2)
    throw std::invalid_argument("AnalyticFunction: Taylor degree exceeds n_angles/2");
  std::vector<std::complex<double>> coeffs(grid.n, 0.0);
  std::copy(taylor.begin(), taylor.end(), coeffs.begin());
  return AnalyticFunction(CircleFunction::from_coefficients(grid, std::move(coeffs)), std::move(taylor));
}

AnalyticFunction AnalyticFunction::from_boundary(CircleFunction boundary) {
  const int n = boundary.size();
  std::vector<std::complex<double>> taylor(n / 2);
  for (int m = 0; m < n / 2; ++m) taylor[m] = boundary.coeffs()[m];
  return AnalyticFunction(std::move(boundary), std::move(taylor));
}

std::complex<double> AnalyticFunction::at(std::complex<double> z) const {
  if (factored_) {
    std::complex<double> out = 1.0;
    for (const auto& zk : factored_->blaschke_zeros) {
      if (std::abs(zk) == 0.0)
        out *= z;
      else
        out *= (std::abs(zk) / zk) * (zk - z) / (1.0 - std::conj(zk) * z);
    }
    for (const auto& [ang, mass] : factored_->singular_atoms) {
      const std::complex<double> zeta = std::polar(1.0, ang);
      out *= std::exp(-mass * (zeta + z) / (zeta - z));
    }
    if (factored_->outer_log_modulus) {
      const auto& lm = *factored_->outer_log_modulus;
      const int n = lm.size();
      std::complex<double> h = lm.coeffs()[0];
      std::complex<double> zp = 1.0;
      for (int m = 1; m < n / 2; ++m) {
        zp *= z;
        h += 2.0 * lm.coeffs()[m] * zp;
      }
      out *= std::exp(h);
    }
    return out;
  }
  std::complex<double> acc = 0.0;
  for (auto it = taylor_.rbegin(); it != taylor_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CircleFunction HardyContext::phi_power(double alpha) const {
  const int n = weight.size();
  if (excluded.empty()) {
    std::vector<std::complex<double>> v(n);
    for (int k = 0; k < n; ++k) v[k] = std::exp(alpha * herglotz.value(k));
    return CircleFunction(weight.grid(), std::move(v));
  }
  // branch through phase unwrapping (zero-free in the disk means total winding 0)
  const auto& pb = phi.boundary();
  std::vector<double> arg(n, 0.0);
  double prev = std::arg(pb.value(0));
  arg[0] = prev;
  for (int k = 1; k < n; ++k) {
    double a = std::arg(pb.value(k));
    while (a - prev > kPi) a -= 2.0 * kPi;
    while (a - prev < -kPi) a += 2.0 * kPi;
    arg[k] = a;
    prev = a;
  }
  std::vector<std::complex<double>> v(n);
  for (int k = 0; k < n; ++k) {
    const double mod = std::abs(pb.value(k));
    v[k] = mod == 0.0 ? 0.0 : std::polar(std::pow(mod, alpha), alpha * arg[k]);
  }
  return CircleFunction(weight.grid(), std::move(v));
}

AnalyticFunction outer_from_modulus(const CircleFunction& w) {
  if (!w.is_real()) throw std::invalid_argument("outer_from_modulus: modulus data must be real");
  auto wv = w.real_values();
  if (*std::min_element(wv.begin(), wv.end()) <= 0.0)
    throw std::invalid_argument("outer_from_modulus: modulus must be strictly positive");
  std::vector<double> lw(wv.size());
  std::transform(wv.begin(), wv.end(), lw.begin(), [](double x) { return std::log(x); });
  CircleFunction h = analytic_completion(CircleFunction(w.grid(), lw));
  std::vector<std::complex<double>> v(w.size());
  for (int k = 0; k < w.size(); ++k) v[k] = std::exp(h.value(k));
  auto out = AnalyticFunction::from_boundary(CircleFunction(w.grid(), std::move(v)));
  FactoredForm ff;
  ff.outer_log_modulus = CircleFunction(w.grid(), lw);
  out.set_factored(std::move(ff));
  return out;
}

HardyContext context_from_weight(const CircleFunction& V, double p) {
  if (!V.is_real()) throw std::invalid_argument("context_from_weight: weight must be real");
  if (p < 1.0) throw std::invalid_argument("context_from_weight: p must be >= 1");
  auto vv = V.real_values();
  const double vmin = *std::min_element(vv.begin(), vv.end());
  if (!(vmin > 0.0))
    throw std::invalid_argument("context_from_weight: weight has vanishing samples (log not integrable)");
  double scale = 1.0;
  if (vmin < 1.0) {
    scale = 1.0 / vmin;
    for (auto& x : vv) x *= scale;
  }
  CircleFunction weight(V.grid(), vv);
  std::vector<double> lw(vv.size());
  std::transform(vv.begin(), vv.end(), lw.begin(), [](double x) { return -0.5 * std::log(x); });
  CircleFunction h = analytic_completion(CircleFunction(V.grid(), lw));
  std::vector<std::complex<double>> pv(V.size());
  for (int k = 0; k < V.size(); ++k) pv[k] = std::exp(h.value(k));
  AnalyticFunction phi = AnalyticFunction::from_boundary(CircleFunction(V.grid(), std::move(pv)));
  double resid = 0.0;
  for (int k = 0; k < V.size(); ++k)
    resid = std::max(resid, std::abs(std::norm(phi.boundary().value(k)) * vv[k] - 1.0));
  if (resid > 1e-6)
    throw std::runtime_error("context_from_weight: u-inner identity failed (weight too rough for grid)");
  return HardyContext{std::move(weight), std::move(phi), p, scale, std::move(h), {}, resid};
}

std::pair<HardyContext, Exhaustion> context_from_phi(const AnalyticFunction& phi, double p,
                                                     int lsc_depth) {
  const auto& pb = phi.boundary();
  const int n = pb.size();
  const double pmax = [&] {
    double m = 0.0;
    for (int k = 0; k < n; ++k) m = std::max(m, std::abs(pb.value(k)));
    return m;
  }();
  if (!(pmax > 0.0) || !pb.all_finite())
    throw std::invalid_argument("context_from_phi: phi boundary data degenerate");

  // zero-free check by the argument principle on boundary samples
  {
    double winding = 0.0;
    std::complex<double> prev = 0.0;
    int prev_k = -1;
    for (int k = 0; k <= n; ++k) {
      const std::complex<double> v = pb.value(k % n);
      if (std::abs(v) < 1e-13 * pmax) continue;  // isolated boundary zeros skipped
      if (prev_k >= 0) winding += std::arg(v / prev);
      prev = v;
      prev_k = k;
    }
    if (std::abs(winding) > 1.0)
      throw std::invalid_argument("context_from_phi: phi has zeros in the disk (nonzero winding)");
  }

  std::vector<int> excluded;
  std::vector<double> V(n);
  for (int k = 0; k < n; ++k) {
    const double m2 = std::norm(pb.value(k));
    if (m2 < 1e-26 * pmax * pmax) {
      V[k] = std::numeric_limits<double>::infinity();
      excluded.push_back(k);
    } else {
      V[k] = 1.0 / m2;
    }
  }

  if (excluded.empty()) {
    CircleFunction Vf(pb.grid(), V);
    HardyContext ctx = context_from_weight(Vf, p);
    Exhaustion e = construct_exhaustion_c2(Vf);
    return {std::move(ctx), std::move(e)};
  }

  // unbounded weight: monotone smooth truncations (E-only mode)
  const double vfinite_min = [&] {
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k)
      if (std::isfinite(V[k])) m = std::min(m, V[k]);
    return m;
  }();
  std::vector<CircleFunction> seq;
  const int width = std::max(2, n / 64);
  for (int d = 0; d < lsc_depth; ++d) {
    const double cap = vfinite_min * std::pow(4.0, d + 1);
    std::vector<double> trunc(n), smooth(n, 0.0);
    for (int k = 0; k < n; ++k) trunc[k] = std::min(V[k], cap);
    // positive smoothing kernel keeps the truncations ordered and C^2 on the grid
    double wsum = 0.0;
    std::vector<double> kern(2 * width + 1);
    for (int t = -width; t <= width; ++t) {
      kern[t + width] = std::exp(-0.5 * (3.0 * t / width) * (3.0 * t / width));
      wsum += kern[t + width];
    }
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int t = -width; t <= width; ++t) acc += kern[t + width] * trunc[(k + t + n) % n];
      smooth[k] = acc / wsum;
    }
    seq.emplace_back(pb.grid(), smooth);
  }
  Exhaustion e = construct_exhaustion_lsc(seq, lsc_depth);
  e.total_mass = std::nullopt;  // mass grows without bound under refinement

  // context with the raw (unbounded) weight and the given phi, rotated positive at 0
  std::vector<std::complex<double>> pv(n);
  const std::complex<double> z0 = phi.at(0.0);
  const std::complex<double> rot = std::abs(z0) > 0 ? std::abs(z0) / z0 : 1.0;
  for (int k = 0; k < n; ++k) pv[k] = rot * pb.value(k);
  AnalyticFunction phin = AnalyticFunction::from_boundary(CircleFunction(pb.grid(), std::move(pv)));
  if (phi.factored()) phin.set_factored(*phi.factored());
  double resid = 0.0;
  for (int k = 0; k < n; ++k)
    if (std::isfinite(V[k]))
      resid = std::max(resid, std::abs(std::norm(phin.boundary().value(k)) * V[k] - 1.0));
  HardyContext ctx{CircleFunction(pb.grid(), V),
                   std::move(phin),
                   p,
                   1.0,
                   CircleFunction::constant(pb.grid(), 0.0),
                   std::move(excluded),
                   resid};
  return {std::move(ctx), std::move(e)};
}

AnalyticFunction blaschke(const std::vector<std::complex<double>>& zeros, AngleGrid grid) {
  for (const auto& z : zeros)
    if (std::abs(z) >= 1.0)
      throw std::invalid_argument("blaschke: zeros must lie strictly inside the disk");
  std::vector<std::complex<double>> v(grid.n, 1.0);
  for (int k = 0; k < grid.n; ++k) {
    const std::complex<double> z = std::polar(1.0, grid.theta(k));
    for (const auto& zk : zeros) {
      if (std::abs(zk) == 0.0)
        v[k] *= z;
      else
        v[k] *= (std::abs(zk) / zk) * (zk - z) / (1.0 - std::conj(zk) * z);
    }
  }
  auto out = AnalyticFunction::from_boundary(CircleFunction(grid, std::move(v)));
  FactoredForm ff;
  ff.blaschke_zeros = zeros;
  out.set_factored(std::move(ff));
  return out;
}

AnalyticFunction singular_inner(const std::vector<std::pair<double, double>>& atoms, AngleGrid grid) {
  for (const auto& [ang, mass] : atoms)
    if (mass < 0.0) throw std::invalid_argument("singular_inner: masses must be nonnegative");
  std::vector<std::complex<double>> v(grid.n, 1.0);
  for (int k = 0; k < grid.n; ++k) {
    const std::complex<double> z = std::polar(1.0, grid.theta(k));
    std::complex<double> expo = 0.0;
    for (const auto& [ang, mass] : atoms) {
      const std::complex<double> zeta = std::polar(1.0, ang);
      expo -= mass * (zeta + z) / (zeta - z);
    }
    v[k] = std::exp(expo);
  }
  auto out = AnalyticFunction::from_boundary(CircleFunction(grid, std::move(v)));
  FactoredForm ff;
  ff.singular_atoms = atoms;
  out.set_factored(std::move(ff));
  return out;
}

AnalyticFunction compose_factorization(const AnalyticFunction& B, const AnalyticFunction& S,
                                       const HardyContext& ctx, const AnalyticFunction& F) {
  const CircleFunction pp = ctx.phi_power(2.0 / ctx.p);
  CircleFunction boundary = B.boundary() * S.boundary() * pp * F.boundary();
  auto out = AnalyticFunction::from_boundary(std::move(boundary));
  FactoredForm ff;
  if (B.factored()) ff.blaschke_zeros = B.factored()->blaschke_zeros;
  if (S.factored()) ff.singular_atoms = S.factored()->singular_atoms;
  // outer part: phi^{2/p} F
  std::vector<double> lm(pp.size());
  for (int k = 0; k < pp.size(); ++k)
    lm[k] = std::log(std::abs(pp.value(k))) + std::log(std::abs(F.boundary().value(k)));
  ff.outer_log_modulus = CircleFunction(pp.grid(), lm);
  out.set_factored(std::move(ff));
  return out;
}

RecoveredOuter recover_outer_part(const AnalyticFunction& f, const AnalyticFunction& B,
                                  const AnalyticFunction& S, const HardyContext& ctx) {
  const CircleFunction denom = B.boundary() * S.boundary() * ctx.phi_power(2.0 / ctx.p);
  const int n = denom.size();
  double fmax = 0.0;
  for (int k = 0; k < n; ++k) fmax = std::max(fmax, std::abs(f.boundary().value(k)));
  std::vector<std::complex<double>> Fv(n);
  std::vector<int> excluded;
  for (int k = 0; k < n; ++k) {
    const std::complex<double> d = denom.value(k);
    if (std::abs(d) < 1e-8) {
      excluded.push_back(k);
      Fv[k] = 0.0;
    } else {
      Fv[k] = f.boundary().value(k) / d;
    }
  }
  if (static_cast<int>(excluded.size()) > n / 16)
    throw std::runtime_error("recover_outer_part: too many near-zero boundary samples");
  for (int k : excluded) {
    // periodic 4-point fill from the nearest valid neighbors
    std::complex<double> acc = 0.0;
    int cnt = 0;
    for (int off : {-2, -1, 1, 2}) {
      const int kk = (k + off + n) % n;
      if (std::find(excluded.begin(), excluded.end(), kk) == excluded.end()) {
        acc += Fv[kk];
        ++cnt;
      }
    }
    Fv[k] = cnt ? acc / static_cast<double>(cnt) : 0.0;
  }
  auto F = AnalyticFunction::from_boundary(CircleFunction(denom.grid(), std::move(Fv)));
  if (F.negative_frequency_residual() > 1e-4 * (1.0 + fmax))
    throw std::runtime_error("recover_outer_part: quotient is far from analytic");
  return RecoveredOuter{std::move(F), std::move(excluded)};
}

double weighted_norm_lp(const CircleFunction& g, const CircleFunction& V, double p) {
  const int n = g.size();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::pow(std::abs(g.value(k)), p) * V.value(k).real();
  return std::pow(acc / n, 1.0 / p);
}

double weighted_norm(const AnalyticFunction& f, const HardyContext& ctx) {
  return weighted_norm_lp(f.boundary(), ctx.weight, ctx.p);
}

MembershipReport membership(const AnalyticFunction& f, const HardyContext& ctx) {
  MembershipReport rep;
  rep.excluded_samples = static_cast<int>(ctx.excluded.size());
  const int n = ctx.weight.size();
  const double p = ctx.p;

  auto weighted_mean = [&](const CircleFunction& fb, const CircleFunction& phib) {
    double acc = 0.0;
    int cnt = 0;
    for (int k = 0; k < fb.size(); ++k) {
      const double m2 = std::norm(phib.value(k));
      if (m2 <= 0.0 || !std::isfinite(1.0 / m2)) continue;
      acc += std::pow(std::abs(fb.value(k)), p) / m2;
      ++cnt;
    }
    return cnt ? acc / cnt : 0.0;
  };

  {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += std::pow(std::abs(f.boundary().value(k)), p);
    rep.classical_norm = std::pow(acc / n, 1.0 / p);
  }
  rep.weighted_norm = weighted_norm_lp(f.boundary(), ctx.weight, p);

  const AngleGrid g2(2 * n), g4(4 * n);
  const CircleFunction f2 = f.boundary().resample(g2), f4 = f.boundary().resample(g4);
  const CircleFunction p2 = ctx.phi.boundary().resample(g2), p4 = ctx.phi.boundary().resample(g4);
  const double i1 = weighted_mean(f.boundary(), ctx.phi.boundary());
  const double i2 = weighted_mean(f2, p2);
  const double i3 = weighted_mean(f4, p4);
  rep.refine_ratio_1 = i1 > 0 ? i2 / i1 : 1.0;
  rep.refine_ratio_2 = i2 > 0 ? i3 / i2 : 1.0;
  rep.diverges = rep.refine_ratio_1 > 1.4 && rep.refine_ratio_2 > 1.4;
  if (!std::isfinite(rep.weighted_norm)) rep.diverges = true;
  return rep;
}

AnalyticFunction transfer_to_classical(const AnalyticFunction& f, const HardyContext& ctx) {
  return AnalyticFunction::from_boundary(f.boundary() * ctx.phi_power(-2.0 / ctx.p));
}

AnalyticFunction transfer_from_classical(const AnalyticFunction& F, const HardyContext& ctx) {
  return AnalyticFunction::from_boundary(F.boundary() * ctx.phi_power(2.0 / ctx.p));
}

CircleFunction transfer_lp(const CircleFunction& g, const HardyContext& ctx, TransferDirection dir) {
  const double a = dir == TransferDirection::ToClassical ? -2.0 / ctx.p : 2.0 / ctx.p;
  return g * ctx.phi_power(a);
}

double is_outer(const AnalyticFunction& f) {
  const std::complex<double> f0 = f.at_zero();
  if (std::abs(f0) < 1e-300) throw std::invalid_argument("is_outer: f(0) = 0");
  const int n = f.boundary().size();
  double acc = 0.0;
  int cnt = 0;
  for (int k = 0; k < n; ++k) {
    const double m = std::abs(f.boundary().value(k));
    if (m <= 0.0) continue;  // isolated boundary zeros excluded from the mean
    acc += std::log(m);
    ++cnt;
  }
  if (cnt == 0) throw std::invalid_argument("is_outer: boundary modulus vanishes identically");
  return std::abs(std::log(std::abs(f0)) - acc / cnt);
}

}  // namespace hdisc
