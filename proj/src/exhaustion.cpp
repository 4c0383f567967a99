#include "hardydisc/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hardydisc/fft.hpp"

namespace hdisc {

namespace {

constexpr double kPi = std::numbers::pi;

int pow2_ceil(double x) {
  int n = 8;
  while (n < x && n < (1 << 30)) n *= 2;
  return n;
}

PolarGrid field_grid(int n_angles) { return PolarGrid(std::min(4096, 4 * n_angles), n_angles); }

struct PsiData {
  std::vector<double> psi, d1, d2;
  double min_psi = 0.0, max_psi = 0.0;
};

PsiData analyze_psi(const CircleFunction& psi) {
  PsiData out;
  out.psi = psi.real_values();
  out.d1 = psi.derivative(1).real_values();
  out.d2 = psi.derivative(2).real_values();
  auto [mn, mx] = std::minmax_element(out.psi.begin(), out.psi.end());
  out.min_psi = *mn;
  out.max_psi = *mx;
  return out;
}

// rho = (1/2)(r^2-1) psi; returns classical Laplacian of kappa(rho) at (r, k)
struct KappaPiece {
  std::shared_ptr<const PsiData> pd;
  SmoothingKappa kappa;

  double rho(double r, int k) const { return 0.5 * (r * r - 1.0) * pd->psi[k]; }

  double u(double r, int k) const { return kappa.eval(rho(r, k)); }

  double u_r(double r, int k) const { return kappa.deriv(rho(r, k)) * r * pd->psi[k]; }

  double u_theta(double r, int k) const {
    return kappa.deriv(rho(r, k)) * 0.5 * (r * r - 1.0) * pd->d1[k];
  }

  double density(double r, int k) const {
    const double rr = rho(r, k);
    if (rr <= kappa.c()) return 0.0;
    const double k1 = kappa.deriv(rr);
    const double k2 = kappa.second(rr);
    const double psi = pd->psi[k];
    const double lap_rho = 2.0 * psi + (r * r - 1.0) / (2.0 * r * r) * pd->d2[k];
    const double grad2 =
        r * r * psi * psi + (r * r - 1.0) * (r * r - 1.0) / (4.0 * r * r) * pd->d1[k] * pd->d1[k];
    return k2 * grad2 + k1 * lap_rho;
  }
};

// Level choice for the kappa construction: c must clear the region where
// Delta rho <= 0, keep the center flat, and stay inside (-1, 0).
double choose_level(const PsiData& pd, const PolarGrid& grid, double min_level) {
  double max_bad_rho = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.n_radii - 1; ++j) {  // r < 1; the boundary row has Delta rho = 2 psi > 0
    const double r = grid.radius(j);
    for (int k = 0; k < grid.n_angles; ++k) {
      const double lap = 2.0 * pd.psi[k] + (r * r - 1.0) / (2.0 * r * r) * pd.d2[k];
      if (lap <= 0.0) max_bad_rho = std::max(max_bad_rho, 0.5 * (r * r - 1.0) * pd.psi[k]);
    }
  }
  const double lower = std::max({max_bad_rho, -0.5 * pd.min_psi, -1.0 + 1e-9, min_level});
  const double c = 0.75 * lower;
  if (!(c < -1e-8)) {
    int kworst = 0;
    for (int k = 0; k < grid.n_angles; ++k)
      if (pd.d2[k] > pd.d2[kworst]) kworst = k;
    std::ostringstream msg;
    msg << "construct_exhaustion: no admissible level on the grid; the subharmonicity "
           "margin vanishes near theta = "
        << grid.theta(kworst) << " (weight too rough for this resolution)";
    throw std::runtime_error(msg.str());
  }
  // the level set sits at 1 - r ~ |c|/psi; require a few radial cells of clearance
  const double gap = 1.0 - std::sqrt(std::max(0.0, 1.0 + 2.0 * c / pd.max_psi));
  if (gap < 3.0 * grid.dr()) {
    int kmax = 0;
    for (int k = 0; k < grid.n_angles; ++k)
      if (pd.psi[k] > pd.psi[kmax]) kmax = k;
    std::ostringstream msg;
    msg << "construct_exhaustion: level set at distance " << gap
        << " from the boundary is unresolvable at n_radii = " << grid.n_radii
        << " (weight peak near theta = " << grid.theta(kmax) << ")";
    throw std::runtime_error(msg.str());
  }
  return c;
}

Exhaustion assemble_kappa_sum(const std::vector<KappaPiece>& pieces, const PolarGrid& grid,
                              ExhaustionTag tag, bool radial) {
  const int na = grid.n_angles;
  const int nr = grid.n_radii;
  std::vector<double> uv(static_cast<size_t>(nr) * na), dv(static_cast<size_t>(nr) * na);
  for (int j = 0; j < nr; ++j) {
    const double r = grid.radius(j);
    for (int k = 0; k < na; ++k) {
      double us = 0.0, ds = 0.0;
      for (const auto& p : pieces) {
        us += p.u(r, k);
        ds += p.density(r, k);
      }
      uv[static_cast<size_t>(j) * na + k] = us;
      dv[static_cast<size_t>(j) * na + k] = ds;
    }
  }
  double ucenter = 0.0;
  for (const auto& p : pieces) ucenter += p.kappa.c();

  auto model = std::make_shared<ExhaustionModel>();
  auto shared_pieces = std::make_shared<const std::vector<KappaPiece>>(pieces);
  model->u_at = [shared_pieces](double r, int k) {
    double s = 0.0;
    for (const auto& p : *shared_pieces) s += p.u(r, k);
    return s;
  };
  model->u_r_at = [shared_pieces](double r, int k) {
    double s = 0.0;
    for (const auto& p : *shared_pieces) s += p.u_r(r, k);
    return s;
  };
  model->u_theta_at = [shared_pieces](double r, int k) {
    double s = 0.0;
    for (const auto& p : *shared_pieces) s += p.u_theta(r, k);
    return s;
  };
  model->density_at = [shared_pieces](double r, int k) {
    double s = 0.0;
    for (const auto& p : *shared_pieces) s += p.density(r, k);
    return s;
  };
  model->density_row = [shared_pieces, na](double r, std::span<double> out) {
    for (int k = 0; k < na; ++k) {
      double s = 0.0;
      for (const auto& p : *shared_pieces) s += p.density(r, k);
      out[k] = s;
    }
  };
  double need = 4096.0;
  for (const auto& p : pieces)
    need = std::max(need, 128.0 * p.pd->max_psi / std::abs(p.kappa.c()) * (na / 256.0));
  model->quad_nodes = std::min(65536, pow2_ceil(need));

  Exhaustion e{grid,
               DiskField(grid, std::move(uv), ucenter),
               DiskField(grid, std::move(dv), 0.0),
               {},
               std::nullopt,
               tag,
               pieces.size() == 1 ? pieces[0].kappa.c() : 0.0,
               radial,
               std::move(model)};
  e.total_mass = riesz_mass(e);
  return e;
}

bool is_radial_weight(const PsiData& pd) { return pd.max_psi - pd.min_psi < 1e-12 * (1.0 + pd.max_psi); }

}  // namespace

DiskField build_rho(const CircleFunction& psi, const PolarGrid& grid) {
  if (grid.n_angles != psi.size()) throw std::invalid_argument("build_rho: grid mismatch");
  auto p = psi.real_values();
  if (*std::min_element(p.begin(), p.end()) <= 0.0)
    throw std::invalid_argument("build_rho: weight must be bounded below by a positive constant");
  std::vector<double> v(static_cast<size_t>(grid.n_radii) * grid.n_angles);
  for (int j = 0; j < grid.n_radii; ++j) {
    const double r = grid.radius(j);
    for (int k = 0; k < grid.n_angles; ++k)
      v[static_cast<size_t>(j) * grid.n_angles + k] = 0.5 * (r * r - 1.0) * p[k];
  }
  const double mean = std::accumulate(p.begin(), p.end(), 0.0) / p.size();
  return DiskField(grid, std::move(v), -0.5 * mean);
}

DiskField rho_laplacian(const CircleFunction& psi, const PolarGrid& grid) {
  if (grid.n_angles != psi.size()) throw std::invalid_argument("rho_laplacian: grid mismatch");
  auto p = psi.real_values();
  if (*std::min_element(p.begin(), p.end()) <= 0.0)
    throw std::invalid_argument("rho_laplacian: weight must be bounded below by a positive constant");
  auto d2 = psi.derivative(2).real_values();
  std::vector<double> v(static_cast<size_t>(grid.n_radii) * grid.n_angles);
  for (int j = 0; j < grid.n_radii; ++j) {
    const double r = grid.radius(j);
    for (int k = 0; k < grid.n_angles; ++k)
      v[static_cast<size_t>(j) * grid.n_angles + k] =
          2.0 * p[k] + (r * r - 1.0) / (2.0 * r * r) * d2[k];
  }
  const double mean = std::accumulate(p.begin(), p.end(), 0.0) / p.size();
  return DiskField(grid, std::move(v), 2.0 * mean);  // center value is nominal (exact for constant psi)
}

Exhaustion construct_exhaustion_c2(const CircleFunction& psi) {
  auto pd = std::make_shared<const PsiData>(analyze_psi(psi));
  if (pd->min_psi <= 0.0)
    throw std::invalid_argument("construct_exhaustion_c2: weight must be bounded below by a positive constant");
  const PolarGrid grid = field_grid(psi.size());
  const double c = choose_level(*pd, grid, -1.0 + 1e-9);
  std::vector<KappaPiece> pieces{KappaPiece{pd, SmoothingKappa(c)}};
  return assemble_kappa_sum(pieces, grid, ExhaustionTag::kappa_rho, is_radial_weight(*pd));
}

double lsc_tail_bound(const std::vector<CircleFunction>& psi_seq, int depth) {
  if (depth < 1 || depth > static_cast<int>(psi_seq.size()))
    throw std::invalid_argument("lsc_tail_bound: depth out of range");
  double bound = 0.0;
  const auto last = psi_seq.back().real_values();
  const auto cut = psi_seq[depth - 1].real_values();
  for (size_t k = 0; k < last.size(); ++k) bound = std::max(bound, last[k] - cut[k]);
  return bound + std::pow(2.0, -depth);
}

Exhaustion construct_exhaustion_lsc(const std::vector<CircleFunction>& psi_seq, int depth) {
  if (psi_seq.empty()) throw std::invalid_argument("construct_exhaustion_lsc: empty sequence");
  if (depth < 1 || depth > static_cast<int>(psi_seq.size()))
    throw std::invalid_argument("construct_exhaustion_lsc: depth out of range");
  const int na = psi_seq[0].size();
  const PolarGrid grid = field_grid(na);

  auto first = psi_seq[0].real_values();
  const double sigma = std::min(1.0, *std::min_element(first.begin(), first.end()));
  if (sigma <= 0.0)
    throw std::invalid_argument("construct_exhaustion_lsc: psi_seq[0] must be positive");

  // increments of the shifted sequence: d_0 = psi_0 - sigma/2,
  // d_n = psi_n - psi_{n-1} + sigma 2^{-n-1} >= sigma 2^{-n-1}
  std::vector<KappaPiece> pieces;
  std::vector<double> levels;
  bool radial = true;
  for (int n = 0; n < depth; ++n) {
    std::vector<double> d(na);
    if (n == 0) {
      for (int k = 0; k < na; ++k) d[k] = first[k] - 0.5 * sigma;
    } else {
      auto cur = psi_seq[n].real_values();
      auto prev = psi_seq[n - 1].real_values();
      const double shift = sigma * std::pow(2.0, -n - 1);
      for (int k = 0; k < na; ++k) {
        d[k] = cur[k] - prev[k] + shift;
        if (d[k] < 0.25 * shift) {
          std::ostringstream msg;
          msg << "construct_exhaustion_lsc: monotonicity violated after shifting at term " << n
              << ", angle index " << k;
          throw std::invalid_argument(msg.str());
        }
      }
    }
    auto pd = std::make_shared<const PsiData>(analyze_psi(CircleFunction(AngleGrid(na), d)));
    radial = radial && is_radial_weight(*pd);
    double c = choose_level(*pd, grid, -std::pow(2.0, -n));
    // nesting of the sublevel sets: |c_n|/d_n >= |c_{n+1}|/d_{n+1} pointwise;
    // shrink c toward 0 until the grid check passes
    if (n > 0) {
      for (int tries = 0; tries < 60; ++tries) {
        bool nested = true;
        const auto& dprev = pieces.back().pd->psi;
        const double cprev = levels.back();
        for (int k = 0; k < na && nested; ++k)
          nested = std::abs(cprev) / dprev[k] >= std::abs(c) / d[k];
        if (nested) break;
        c *= 0.5;
        if (std::abs(c) < 1e-12)
          throw std::runtime_error("construct_exhaustion_lsc: could not nest sublevel sets");
      }
    }
    pieces.push_back(KappaPiece{pd, SmoothingKappa(c)});
    levels.push_back(c);
  }
  return assemble_kappa_sum(pieces, grid, ExhaustionTag::lsc_sum, radial);
}

Exhaustion construct_biharmonic(const CircleFunction& psi, std::optional<double> M_opt) {
  if (!psi.is_real()) throw std::invalid_argument("construct_biharmonic: weight must be real");
  auto pvals = psi.real_values();
  if (*std::min_element(pvals.begin(), pvals.end()) < -1e-12)
    throw std::invalid_argument("construct_biharmonic: weight must be nonnegative");
  const int na = psi.size();
  const PolarGrid grid = field_grid(na);
  const int nr = grid.n_radii;

  auto coeffs = std::make_shared<const std::vector<std::complex<double>>>(psi.coeffs());
  const double c0 = (*coeffs)[0].real();

  // q(r, theta) = P psi + r d_r P psi; density = 2 (q + M)
  auto q_row = [coeffs, na](double r, std::span<double> out) {
    std::vector<std::complex<double>> buf(na);
    for (int bin = 0; bin < na; ++bin) {
      const int m = std::abs(fft::bin_frequency(bin, na));
      buf[bin] = (*coeffs)[bin] * (1.0 + m) * std::pow(r, m);
    }
    fft::inverse_row(buf.data(), na);
    for (int k = 0; k < na; ++k) out[k] = buf[k].real();
  };

  double qmin = c0;  // center value of q
  {
    std::vector<double> row(na);
    for (int j = 0; j < nr; ++j) {
      q_row(grid.radius(j), row);
      qmin = std::min(qmin, *std::min_element(row.begin(), row.end()));
    }
  }
  double M;
  if (M_opt) {
    M = *M_opt;
    if (qmin + M < -1e-9 * (1.0 + std::abs(M))) {
      std::ostringstream msg;
      msg << "construct_biharmonic: supplied M = " << M << " leaves min Delta u = "
          << 2.0 * (qmin + M) << " < 0";
      throw std::invalid_argument(msg.str());
    }
  } else {
    M = std::max(0.0, -qmin) + 1e-6;
  }
  const double max_weight = *std::max_element(pvals.begin(), pvals.end()) + M;
  if (max_weight <= 1e-12)
    throw std::invalid_argument("construct_biharmonic: degenerate data (weight not positive)");

  auto H_at = [coeffs, na, M](double r, int k) {
    const double theta = 2.0 * kPi * k / na;
    std::complex<double> s = 0.0;
    for (int bin = 0; bin < na; ++bin) {
      const int m = fft::bin_frequency(bin, na);
      s += (*coeffs)[bin] * std::pow(r, std::abs(m)) *
           std::exp(std::complex<double>(0.0, m * theta));
    }
    return s.real() + M;
  };
  auto Hr_at = [coeffs, na](double r, int k) {
    const double theta = 2.0 * kPi * k / na;
    std::complex<double> s = 0.0;
    for (int bin = 0; bin < na; ++bin) {
      const int m = fft::bin_frequency(bin, na);
      const int am = std::abs(m);
      if (am == 0) continue;
      s += (*coeffs)[bin] * static_cast<double>(am) * std::pow(r, am - 1) *
           std::exp(std::complex<double>(0.0, m * theta));
    }
    return s.real();
  };
  auto Ht_at = [coeffs, na](double r, int k) {
    const double theta = 2.0 * kPi * k / na;
    std::complex<double> s = 0.0;
    for (int bin = 0; bin < na; ++bin) {
      const int m = fft::bin_frequency(bin, na);
      s += (*coeffs)[bin] * std::pow(r, std::abs(m)) * std::complex<double>(0.0, m) *
           std::exp(std::complex<double>(0.0, m * theta));
    }
    return s.real();
  };

  std::vector<double> uv(static_cast<size_t>(nr) * na), dv(static_cast<size_t>(nr) * na);
  {
    std::vector<std::complex<double>> buf(na);
    std::vector<double> qrow(na);
    for (int j = 0; j < nr; ++j) {
      const double r = grid.radius(j);
      for (int bin = 0; bin < na; ++bin) {
        const int m = std::abs(fft::bin_frequency(bin, na));
        buf[bin] = (*coeffs)[bin] * std::pow(r, m);
      }
      fft::inverse_row(buf.data(), na);
      q_row(r, qrow);
      for (int k = 0; k < na; ++k) {
        uv[static_cast<size_t>(j) * na + k] = 0.5 * (r * r - 1.0) * (buf[k].real() + M);
        dv[static_cast<size_t>(j) * na + k] = 2.0 * (qrow[k] + M);
      }
    }
  }

  auto model = std::make_shared<ExhaustionModel>();
  model->u_at = [H_at](double r, int k) { return 0.5 * (r * r - 1.0) * H_at(r, k); };
  model->u_r_at = [H_at, Hr_at](double r, int k) {
    return r * H_at(r, k) + 0.5 * (r * r - 1.0) * Hr_at(r, k);
  };
  model->u_theta_at = [Ht_at](double r, int k) { return 0.5 * (r * r - 1.0) * Ht_at(r, k); };
  model->density_at = [H_at, Hr_at](double r, int k) { return 2.0 * H_at(r, k) + 2.0 * r * Hr_at(r, k); };
  model->density_row = [q_row, M, na](double r, std::span<double> out) {
    q_row(r, out);
    for (int k = 0; k < na; ++k) out[k] = 2.0 * (out[k] + M);
  };
  model->quad_nodes = std::min(16384, std::max(4096, 4 * nr));

  bool radial = true;
  for (double v : pvals) radial = radial && std::abs(v - pvals[0]) < 1e-12 * (1.0 + std::abs(pvals[0]));

  Exhaustion e{grid,
               DiskField(grid, std::move(uv), -0.5 * (c0 + M)),
               DiskField(grid, std::move(dv), 2.0 * (c0 + M)),
               {},
               c0 + M,  // closed form: int Delta u / (2 pi) = P psi(0) + M
               ExhaustionTag::biharmonic,
               0.0,
               radial,
               std::move(model)};
  return e;
}

Exhaustion green_exhaustion(int n_angles, int n_radii) {
  const PolarGrid grid = n_radii > 0 ? PolarGrid(n_radii, n_angles) : field_grid(n_angles);
  const int na = grid.n_angles;
  std::vector<double> uv(static_cast<size_t>(grid.n_radii) * na);
  for (int j = 0; j < grid.n_radii; ++j) {
    const double lr = std::log(grid.radius(j));
    for (int k = 0; k < na; ++k) uv[static_cast<size_t>(j) * na + k] = lr;
  }
  auto model = std::make_shared<ExhaustionModel>();
  model->u_at = [](double r, int) { return std::log(r); };
  model->u_r_at = [](double r, int) { return 1.0 / r; };
  model->u_theta_at = [](double, int) { return 0.0; };
  model->density_at = [](double, int) { return 0.0; };
  model->density_row = [na](double, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
  model->quad_nodes = 4096;

  return Exhaustion{grid,
                    DiskField(grid, std::move(uv), -std::numeric_limits<double>::infinity()),
                    DiskField::zero(grid),
                    {PointMass{0.0, 0.0, 1.0}},
                    1.0,
                    ExhaustionTag::green,
                    0.0,
                    true,
                    std::move(model)};
}

CircleFunction weight_balayage(const Exhaustion& e, kernels::Execution ex) {
  const int na = e.grid.n_angles;
  std::vector<std::complex<double>> modes(na, 0.0);

  if (e.model && e.model->density_row) {
    const int nq = e.model->quad_nodes;
    auto w = kernels::simpson_weights(nq);
    std::vector<double> radii(nq), weights(nq);
    for (int j = 1; j <= nq; ++j) {
      radii[j - 1] = static_cast<double>(j) / nq;
      weights[j - 1] = w[j];
    }
    kernels::balayage_modes(e.model->density_row, radii, weights, na, ex, modes);
  } else {
    const int nr = e.grid.n_radii;
    auto w = kernels::simpson_weights(nr);
    std::vector<double> radii(nr), weights(nr);
    for (int j = 0; j < nr; ++j) {
      radii[j] = e.grid.radius(j);
      weights[j] = w[j + 1];
    }
    auto from_grid = [&](double r, std::span<double> out) {
      const int j = static_cast<int>(std::lround(r * nr)) - 1;
      auto row = e.riesz_density.row(j);
      std::copy(row.begin(), row.end(), out.begin());
    };
    kernels::balayage_modes(from_grid, radii, weights, na, ex, modes);
  }

  std::vector<std::complex<double>> vals = fft::inverse(modes);
  std::vector<double> out(na);
  for (int k = 0; k < na; ++k) out[k] = vals[k].real();
  for (const auto& atom : e.atoms)
    for (int k = 0; k < na; ++k)
      out[k] += atom.mass * poisson_kernel(atom.radius, atom.angle, e.grid.theta(k));
  return CircleFunction(e.grid.angle_grid(), out);
}

CircleFunction weight_radial(const Exhaustion& e) {
  if (e.tag != ExhaustionTag::biharmonic)
    throw std::invalid_argument("weight_radial: requires a harmonic Riesz density (biharmonic tag)");
  const int na = e.grid.n_angles;
  const int nr = e.grid.n_radii;
  auto w = kernels::simpson_weights(nr);
  std::vector<double> out(na, 0.0);
  for (int k = 0; k < na; ++k) {
    double s = w[0] * e.riesz_density.center();
    for (int j = 0; j < nr; ++j) s += w[j + 1] * e.riesz_density(j, k);
    out[k] = 0.5 * s;
  }
  return CircleFunction(e.grid.angle_grid(), out);
}

namespace {

double model_or_grid_u(const Exhaustion& e, double r, int k) {
  if (e.model && e.model->u_at) return e.model->u_at(r, k);
  return e.u.interpolate_radial(r, k);
}

double model_or_grid_density(const Exhaustion& e, double r, int k) {
  if (e.model && e.model->density_at) return e.model->density_at(r, k);
  return e.riesz_density.interpolate_radial(r, k);
}

std::vector<double> contour_radii(const Exhaustion& e, double c) {
  if (!(c < 0.0)) throw std::domain_error("level_set: level must be negative");
  const int na = e.grid.n_angles;
  const double h = e.grid.dr();
  std::vector<double> rc(na);
  for (int k = 0; k < na; ++k) {
    double lo = h, hi = 1.0;
    if (!(model_or_grid_u(e, lo, k) < c))
      throw std::runtime_error("level_set: contour inside the first radial cell (level too deep)");
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (model_or_grid_u(e, mid, k) < c ? lo : hi) = mid;
    }
    rc[k] = 0.5 * (lo + hi);
    if (rc[k] > 1.0 - 2.0 * h)
      throw std::runtime_error("level_set: contour touches the boundary at this resolution");
  }
  return rc;
}

int active_cell_count(const Exhaustion& e, double c, int radial_mult) {
  // marching-squares active cells of (u - c) on a radially refined virtual grid
  const int na = e.grid.n_angles;
  const int nr = e.grid.n_radii * radial_mult;
  const double h = 1.0 / nr;
  int count = 0;
  std::vector<double> prev(na), cur(na);
  for (int k = 0; k < na; ++k) prev[k] = model_or_grid_u(e, h, k) - c;
  for (int i = 2; i <= nr; ++i) {
    for (int k = 0; k < na; ++k) cur[k] = model_or_grid_u(e, i * h, k) - c;
    for (int k = 0; k < na; ++k) {
      const int kn = (k + 1) % na;
      const double a = prev[k], b = prev[kn], d = cur[k], f = cur[kn];
      const bool pos = a > 0 || b > 0 || d > 0 || f > 0;
      const bool neg = a <= 0 || b <= 0 || d <= 0 || f <= 0;
      if (pos && neg) ++count;
    }
    std::swap(prev, cur);
  }
  return count;
}

double masked_riesz_mass(const Exhaustion& e, const std::vector<double>& rc) {
  const int na = e.grid.n_angles;
  const int nq = e.grid.n_radii;
  auto w = kernels::simpson_weights(nq);
  double total = 0.0;
  for (int k = 0; k < na; ++k) {
    double s = 0.0;
    for (int q = 1; q <= nq; ++q) {
      const double sq = static_cast<double>(q) / nq;
      const double r = sq * rc[k];
      s += w[q] * model_or_grid_density(e, r, k) * r;
    }
    total += rc[k] * s;
  }
  total /= na;  // (1/2pi) * dtheta sum = mean over angles
  for (const auto& atom : e.atoms) {
    const int k = static_cast<int>(std::lround(atom.angle / e.grid.angle_grid().spacing())) % na;
    if (atom.radius < rc[k]) total += atom.mass;
  }
  return total;
}

}  // namespace

LevelSetData level_set(const Exhaustion& e, double c) {
  auto rc = contour_radii(e, c);
  const int na = e.grid.n_angles;

  // regular-value check: active-cell count stable under one-step radial refinement
  const int c1 = active_cell_count(e, c, 1);
  const int c2 = active_cell_count(e, c, 2);
  if (c1 == 0 || std::abs(static_cast<double>(c2) / c1 - 1.0) > 0.05) {
    std::ostringstream msg;
    msg << "level_set: c = " << c << " fails the regular-value cell-count check (" << c1 << " vs "
        << c2 << ")";
    throw std::runtime_error(msg.str());
  }

  LevelSetData out;
  out.c = c;
  out.contour.resize(na);
  out.v_cu.resize(na);

  CircleFunction rc_fun(e.grid.angle_grid(), rc);
  auto rc_prime = rc_fun.derivative(1).real_values();

  std::vector<double> gradnorm(na), dsf(na);
  for (int k = 0; k < na; ++k) {
    out.contour[k] = {rc[k], e.grid.theta(k)};
    double ur, ut;
    if (e.model && e.model->u_r_at) {
      ur = e.model->u_r_at(rc[k], k);
      ut = e.model->u_theta_at(rc[k], k);
    } else {
      const double d = 0.25 * e.grid.dr();
      ur = (e.u.interpolate_radial(rc[k] + d, k) - e.u.interpolate_radial(rc[k] - d, k)) / (2.0 * d);
      const int kp = (k + 1) % na, km = (k - 1 + na) % na;
      ut = (e.u.interpolate_radial(rc[k], kp) - e.u.interpolate_radial(rc[k], km)) /
           (2.0 * e.grid.angle_grid().spacing());
    }
    gradnorm[k] = std::hypot(ur, ut / rc[k]);
    dsf[k] = std::sqrt(rc[k] * rc[k] + rc_prime[k] * rc_prime[k]);
  }
  const double dtheta = e.grid.angle_grid().spacing();
  double L = 0.0, mass = 0.0;
  for (int k = 0; k < na; ++k) {
    L += dsf[k] * dtheta;
    mass += gradnorm[k] * dsf[k] * dtheta / (2.0 * kPi);
  }
  out.arclength = L;
  out.mass = mass;
  for (int k = 0; k < na; ++k) out.v_cu[k] = (L / (2.0 * kPi)) * gradnorm[k];
  out.mass_area = masked_riesz_mass(e, rc);
  if (e.radial) {
    double mean = std::accumulate(rc.begin(), rc.end(), 0.0) / na;
    out.radius = mean;
  }
  return out;
}

double demailly_pairing(const Exhaustion& e, double c, const DiskField& v) {
  auto rc = contour_radii(e, c);
  const int na = e.grid.n_angles;
  CircleFunction rc_fun(e.grid.angle_grid(), rc);
  auto rc_prime = rc_fun.derivative(1).real_values();
  double acc = 0.0;
  for (int k = 0; k < na; ++k) {
    double ur, ut;
    if (e.model && e.model->u_r_at) {
      ur = e.model->u_r_at(rc[k], k);
      ut = e.model->u_theta_at(rc[k], k);
    } else {
      const double d = 0.25 * e.grid.dr();
      ur = (e.u.interpolate_radial(rc[k] + d, k) - e.u.interpolate_radial(rc[k] - d, k)) / (2.0 * d);
      const int kp = (k + 1) % na, km = (k - 1 + na) % na;
      ut = (e.u.interpolate_radial(rc[k], kp) - e.u.interpolate_radial(rc[k], km)) /
           (2.0 * e.grid.angle_grid().spacing());
    }
    const double gradnorm = std::hypot(ur, ut / rc[k]);
    const double ds = std::sqrt(rc[k] * rc[k] + rc_prime[k] * rc_prime[k]);
    acc += v.interpolate_radial(rc[k], k) * gradnorm * ds;
  }
  return acc / na;  // (1/2pi) * dtheta * sum
}

double dlj_rhs(const Exhaustion& e, double c, const DiskField& v, const DiskField& v_laplacian) {
  double vmin = 0.0;
  for (double x : v_laplacian.values()) vmin = std::min(vmin, x);
  if (vmin < -1e-8 * (1.0 + std::abs(vmin)))
    throw std::invalid_argument("dlj_rhs: v must be subharmonic (Delta v >= 0)");
  auto rc = contour_radii(e, c);
  const int na = e.grid.n_angles;
  const int nq = e.grid.n_radii;
  auto w = kernels::simpson_weights(nq);
  double total = 0.0;
  for (int k = 0; k < na; ++k) {
    double s = 0.0;
    for (int q = 1; q <= nq; ++q) {
      const double sq = static_cast<double>(q) / nq;
      const double r = sq * rc[k];
      const double vd = v.interpolate_radial(r, k);
      const double dv = v_laplacian.interpolate_radial(r, k);
      const double uu = model_or_grid_u(e, r, k);
      const double du = model_or_grid_density(e, r, k);
      s += w[q] * (vd * du - uu * dv + c * dv) * r;
    }
    total += rc[k] * s;
  }
  total /= na;
  for (const auto& atom : e.atoms) {
    const int k = static_cast<int>(std::lround(atom.angle / e.grid.angle_grid().spacing())) % na;
    if (atom.radius < rc[k])
      total += atom.mass * (atom.radius == 0.0 ? v.center() : v.interpolate_radial(atom.radius, k));
  }
  return total;
}

ShuNormResult shu_norm(const Exhaustion& e, const DiskField& v, const DiskField& v_laplacian,
                       const std::vector<double>& c_sequence) {
  ShuNormResult out;
  double sup = -std::numeric_limits<double>::infinity();
  for (double c : c_sequence) sup = std::max(sup, demailly_pairing(e, c, v));
  out.sup_pairing = sup;

  const int na = e.grid.n_angles;
  const int nr = e.grid.n_radii;
  std::vector<double> prod(static_cast<size_t>(nr) * na);
  for (int j = 0; j < nr; ++j)
    for (int k = 0; k < na; ++k)
      prod[static_cast<size_t>(j) * na + k] =
          v(j, k) * e.riesz_density(j, k) - e.u(j, k) * v_laplacian(j, k);
  double integral = area_integral(DiskField(e.grid, std::move(prod), 0.0), true);
  for (const auto& atom : e.atoms)
    integral += atom.mass * (atom.radius == 0.0
                                 ? v.center()
                                 : v.interpolate_radial(
                                       atom.radius,
                                       static_cast<int>(std::lround(atom.angle /
                                                                    e.grid.angle_grid().spacing())) %
                                           na));
  out.disk_integral = integral;
  out.discrepancy = std::abs(out.sup_pairing - out.disk_integral);
  return out;
}

double majorant_norm(const Exhaustion& e, const CircleFunction& v_boundary) {
  auto vb = v_boundary.real_values();
  if (*std::min_element(vb.begin(), vb.end()) < -1e-12)
    throw std::invalid_argument("majorant_norm: boundary data must be nonnegative");
  DiskField h = harmonic_extension(v_boundary, e.grid);
  const int na = e.grid.n_angles;
  const int nr = e.grid.n_radii;
  std::vector<double> prod(static_cast<size_t>(nr) * na);
  for (int j = 0; j < nr; ++j)
    for (int k = 0; k < na; ++k)
      prod[static_cast<size_t>(j) * na + k] = h(j, k) * e.riesz_density(j, k);
  double value = area_integral(DiskField(e.grid, std::move(prod), 0.0), true);
  for (const auto& atom : e.atoms)
    value += atom.mass *
             (atom.radius == 0.0
                  ? h.center()
                  : h.interpolate_radial(atom.radius,
                                         static_cast<int>(std::lround(
                                             atom.angle / e.grid.angle_grid().spacing())) %
                                             na));
  return value;
}

SubdomainChain subdomain_chain(const Exhaustion& e, const std::vector<double>& radii) {
  for (size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0.0 || radii[i] >= 1.0)
      throw std::invalid_argument("subdomain_chain: radii must lie in (0,1)");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw std::invalid_argument("subdomain_chain: radii must be increasing");
  }
  const int na = e.grid.n_angles;
  const int nr = e.grid.n_radii;
  SubdomainChain out;
  out.radii = radii;
  for (double rb : radii) {
    std::vector<double> circle(na);
    for (int k = 0; k < na; ++k) circle[k] = model_or_grid_u(e, rb, k);
    CircleFunction cf(e.grid.angle_grid(), circle);
    const auto& cm = cf.coeffs();
    std::vector<double> vals(static_cast<size_t>(nr) * na);
    std::vector<std::complex<double>> buf(na);
    for (int j = 0; j < nr; ++j) {
      const double s = e.grid.radius(j);
      for (int bin = 0; bin < na; ++bin) {
        const int m = std::abs(fft::bin_frequency(bin, na));
        buf[bin] = cm[bin] * std::pow(s, m);
      }
      fft::inverse_row(buf.data(), na);
      for (int k = 0; k < na; ++k)
        vals[static_cast<size_t>(j) * na + k] = model_or_grid_u(e, s * rb, k) - buf[k].real();
    }
    const double pc = cm[0].real();
    const double uc = (e.tag == ExhaustionTag::green) ? -std::numeric_limits<double>::infinity()
                                                      : model_or_grid_u(e, 1e-12, 0);
    out.u_j.emplace_back(e.grid, std::move(vals), uc - pc);
  }
  return out;
}

std::vector<double> monotone_chain(const Exhaustion& e, const std::vector<double>& radii,
                                   const DiskField& v, const DiskField& v_laplacian) {
  for (size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0.0 || radii[i] >= 1.0)
      throw std::invalid_argument("monotone_chain: radii must lie in (0,1)");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw std::invalid_argument("monotone_chain: radii must be increasing");
  }
  const int na = e.grid.n_angles;
  const int nq = e.grid.n_radii;
  auto w = kernels::simpson_weights(nq);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double rb : radii) {
    std::vector<double> circle(na);
    for (int k = 0; k < na; ++k) circle[k] = model_or_grid_u(e, rb, k);
    CircleFunction cf(e.grid.angle_grid(), circle);
    const auto& cm = cf.coeffs();
    double total = 0.0;
    std::vector<std::complex<double>> buf(na);
    std::vector<double> pu(na);
    for (int q = 1; q <= nq; ++q) {
      const double s = static_cast<double>(q) / nq;
      for (int bin = 0; bin < na; ++bin) {
        const int m = std::abs(fft::bin_frequency(bin, na));
        buf[bin] = cm[bin] * std::pow(s, m);
      }
      fft::inverse_row(buf.data(), na);
      for (int k = 0; k < na; ++k) pu[k] = buf[k].real();
      const double r = s * rb;
      double rowsum = 0.0;
      for (int k = 0; k < na; ++k) {
        const double uj = model_or_grid_u(e, r, k) - pu[k];
        rowsum += v.interpolate_radial(r, k) * model_or_grid_density(e, r, k) -
                  uj * v_laplacian.interpolate_radial(r, k);
      }
      total += w[q] * rowsum * r;
    }
    total = total * rb / na;
    for (const auto& atom : e.atoms) {
      const int k = static_cast<int>(std::lround(atom.angle / e.grid.angle_grid().spacing())) % na;
      if (atom.radius < rb)
        total += atom.mass *
                 (atom.radius == 0.0 ? v.center() : v.interpolate_radial(atom.radius, k));
    }
    out.push_back(total);
  }
  return out;
}

double riesz_mass(const Exhaustion& e) {
  double mass = 0.0;
  for (const auto& atom : e.atoms) mass += atom.mass;
  if (e.model && e.model->density_row) {
    const int nq = e.model->quad_nodes;
    auto w = kernels::simpson_weights(nq);
    std::vector<double> row(e.grid.n_angles);
    double acc = 0.0;
    for (int j = 1; j <= nq; ++j) {
      const double r = static_cast<double>(j) / nq;
      e.model->density_row(r, row);
      const double mean = std::accumulate(row.begin(), row.end(), 0.0) / e.grid.n_angles;
      acc += w[j] * mean * r;
    }
    return mass + acc;  // (1/2pi) * 2pi * int mean * r dr
  }
  return mass + area_integral(e.riesz_density, true);
}

}  // namespace hdisc
