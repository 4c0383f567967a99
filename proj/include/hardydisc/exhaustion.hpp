#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hardydisc/circle_function.hpp"
#include "hardydisc/disc_core.hpp"
#include "hardydisc/disk_field.hpp"
#include "hardydisc/kappa.hpp"

namespace hdisc {

enum class ExhaustionTag { kappa_rho, lsc_sum, biharmonic, green, custom };

/// Symbolic Riesz atom (location in polar coordinates, normalized mass).
struct PointMass {
  double radius = 0.0;
  double angle = 0.0;
  double mass = 0.0;
};

/// Closed-form evaluators attached by the constructions. Scalar accessors work at
/// any (r, theta_k); density_row fills a full angular row (used by the balayage
/// quadrature, which needs radial resolution beyond the stored grid).
struct ExhaustionModel {
  std::function<double(double r, int k)> u_at;
  std::function<double(double r, int k)> u_r_at;
  std::function<double(double r, int k)> u_theta_at;
  std::function<double(double r, int k)> density_at;
  std::function<void(double r, std::span<double> out)> density_row;
  int quad_nodes = 4096;  // internal radial Simpson resolution for balayage
};

/// A negative subharmonic exhaustion u together with its Riesz data.
/// riesz_density holds classical Laplacian values; integrals against the Riesz
/// measure divide by 2 pi, so log|z| carries unit mass at the origin.
struct Exhaustion {
  PolarGrid grid;
  DiskField u;
  DiskField riesz_density;
  std::vector<PointMass> atoms;
  std::optional<double> total_mass;  // nullopt encodes the +infinity flag
  ExhaustionTag tag = ExhaustionTag::custom;
  double level = 0.0;  // c used by the kappa construction
  bool radial = false;
  std::shared_ptr<const ExhaustionModel> model;
};

/// rho(r e^{i theta}) = (1/2)(r^2 - 1) psi(theta); requires psi real with min > 0.
DiskField build_rho(const CircleFunction& psi, const PolarGrid& grid);
/// Delta rho = 2 psi + (r^2-1)/(2 r^2) psi'' with psi'' spectral; center row excluded.
DiskField rho_laplacian(const CircleFunction& psi, const PolarGrid& grid);

/// Smooth-weight construction: u = kappa_c(rho) with c chosen from a grid scan so
/// that {rho < c} is relatively compact, contains the region where Delta rho <= 0,
/// and u is constant near the center. The boundary weight of the result is psi.
Exhaustion construct_exhaustion_c2(const CircleFunction& psi);

/// Monotone-limit construction for lower-semicontinuous targets: telescoping sum of
/// kappa exhaustions for the shifted increments, truncated at depth terms.
/// Reports the truncation tail bound through lsc_tail_bound().
Exhaustion construct_exhaustion_lsc(const std::vector<CircleFunction>& psi_seq, int depth);
double lsc_tail_bound(const std::vector<CircleFunction>& psi_seq, int depth);

/// u = (1/2)(|z|^2 - 1)[P psi + M]; Delta^2 u = 0. With M absent the minimal grid
/// value keeping Delta u >= 0 (plus a 1e-6 margin) is chosen.
Exhaustion construct_biharmonic(const CircleFunction& psi, std::optional<double> M = std::nullopt);

/// u = log|z|: unit Riesz mass at the origin, weight identically one.
Exhaustion green_exhaustion(int n_angles, int n_radii = 0);

/// Boundary weight V_u as the balayage of the Riesz measure: exact spectral
/// integration in theta, fine radial Simpson rule (model-driven when available),
/// plus direct Poisson-kernel terms for the atoms.
CircleFunction weight_balayage(const Exhaustion& e,
                               kernels::Execution ex = kernels::default_execution());

/// V_u(e^{i theta}) = (1/2) int_0^1 Delta u(s e^{i theta}) ds with the classical
/// Laplacian; valid only when Delta u is harmonic (biharmonic tag).
CircleFunction weight_radial(const Exhaustion& e);

struct LevelSetData {
  double c = 0.0;
  std::vector<std::array<double, 2>> contour;  // (r, theta) ordered by angle
  std::optional<double> radius;                // set on the radial fast path
  std::vector<double> v_cu;                    // V_{c,u} along the contour
  double mass = 0.0;                           // contour-route mass of mu_{c,u}
  double mass_area = 0.0;                      // Riesz mass of B_{c,u} (area route)
  double arclength = 0.0;
};

/// Level data for S_{c,u}: per-angle contour radii by bisection, V_{c,u} from the
/// gradient of u (mu_{c,u} = |grad u| ds / 2 pi, with nu_c normalized to total 1),
/// regular-value check via marching-squares cell counts under angular refinement.
LevelSetData level_set(const Exhaustion& e, double c);

/// int_{S_{c,u}} v d mu_{c,u}.
double demailly_pairing(const Exhaustion& e, double c, const DiskField& v);

/// int_{B_{c,u}} (v du - u dv) + c int_{B_{c,u}} dv in the normalized convention;
/// v_laplacian carries classical Laplacian values of v.
double dlj_rhs(const Exhaustion& e, double c, const DiskField& v, const DiskField& v_laplacian);

struct ShuNormResult {
  double sup_pairing = 0.0;
  double disk_integral = 0.0;
  double discrepancy = 0.0;
};

/// ||v||_u both ways: sup over the supplied levels of the Demailly pairing, and the
/// whole-disk integral int (v du - u dv).
ShuNormResult shu_norm(const Exhaustion& e, const DiskField& v, const DiskField& v_laplacian,
                       const std::vector<double>& c_sequence);

/// ||v||_u for boundary data v >= 0 via the least harmonic majorant: int_G P(v) du.
double majorant_norm(const Exhaustion& e, const CircleFunction& v_boundary);

struct SubdomainChain {
  std::vector<double> radii;
  std::vector<DiskField> u_j;  // u_j on [0, r_j] remapped to the unit grid
};

/// u_j = u - P_{G_j} u on G_j = {|z| < r_j}.
SubdomainChain subdomain_chain(const Exhaustion& e, const std::vector<double>& radii);

/// ||v||_{u_j} for the concentric chain; non-decreasing with limit ||v||_u.
std::vector<double> monotone_chain(const Exhaustion& e, const std::vector<double>& radii,
                                   const DiskField& v, const DiskField& v_laplacian);

/// Total Riesz mass (atoms plus density), via the model quadrature when available.
double riesz_mass(const Exhaustion& e);

}  // namespace hdisc
