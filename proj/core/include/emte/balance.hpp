// SPDX-License-Identifier: MIT
//
// Pointwise residual evaluation of the finite balance laws in both
// configurations: Maxwell systems for the deformable continuum, the
// current-carrying coil, and the surrounding vacuum; electromagnetic body
// force, couple, and power; linear and angular momentum; the heat equation;
// the entropy inequality; and the interface/traction conditions.
//
// Every evaluator returns raw residuals together with a per-equation scale
// (the largest magnitude among the terms of the expression), so callers can
// form relative norms across quantities with very different units.  The sign
// convention of each residual is spelled out in the doc comment of its
// evaluator; a residual is zero exactly when the equation holds.
#pragma once

#include <string>
#include <vector>

#include "emte/scene.hpp"

namespace emte {

struct ResidualEntry {
  std::string id;
  Vec3 value{};           // scalar residuals live in value[0]
  bool is_scalar = false;
  double norm = 0.0;      // Euclidean norm of the residual
  double scale = 0.0;     // max term magnitude in the defining expression
};

struct ResidualReport {
  std::string configuration; // "eulerian", "lagrangian", "coil", "vacuum", ...
  Vec3 point{};
  double time = 0.0;
  std::vector<ResidualEntry> entries;

  const ResidualEntry& entry(const std::string& id) const; // throws if absent
  double max_relative(double scale_floor = 1.0) const;     // max norm/max(scale, floor)
};

// --- Maxwell systems --------------------------------------------------------

// div B; curl E + dB/dt; div(eps0 E + P) - rho_e; curl(B/mu0 - M) - J - dD/dt.
// Time derivatives at fixed current position.
ResidualReport maxwell_residual_eulerian(const Scene& s, const Vec3& X, double t,
                                         const FdConfig& fd = {});

// Div B_l; Curl(E_l + V x B_l) + B_l,t; Div(eps0 J c^-1 E_l + P_l) - rho_E;
// and the referential displacement-current form of the Ampere law.
ResidualReport maxwell_residual_lagrangian(const Scene& s, const Vec3& X, double t,
                                           const FdConfig& fd = {});

// Rigid regions carrying their own fields over current position.
enum class Region { Coil, Vacuum };

struct RegionScene {
  Constants constants;
  double eps_r = 1.0; // coil relative permittivity
  double mu_r = 1.0;  // coil relative permeability
  VField E, B;        // chart Spatial, label_param = false
  VField Jfree;       // coil drive current (ignored for vacuum)
};
RegionScene make_region_scene();

ResidualReport region_maxwell_residual(const RegionScene& r, Region region, const Vec3& x,
                                       double t, const FdConfig& fd = {});

// --- Electromagnetic sources -------------------------------------------------

// f_e = rho_e E + J x B + (grad E)^T P + (grad B)^T M + d(P x B)/dt
//       + div[v o (P x B)], with d/dt the material rate.
Vec3 em_body_force(const Scene& s, const Vec3& X, double t, const FdConfig& fd = {});
// L_e = P x E + (M + v x P) x B.
Vec3 em_body_couple(const Scene& s, const Vec3& X, double t, const FdConfig& fd = {});

// Referential counterparts, evaluated term by term in referential operators.
Vec3 em_body_force_lagrangian(const Scene& s, const Vec3& X, double t,
                              const FdConfig& fd = {});
Vec3 em_body_couple_lagrangian(const Scene& s, const Vec3& X, double t,
                               const FdConfig& fd = {});

// --- Momentum ----------------------------------------------------------------

// Four entries: linear_eulerian  = div tau + f_e - rho a,
//               angular_eulerian = perm(tau) + L_e,
//               linear_lagrangian  = Div T + J f_E - rho_r a,
//               angular_lagrangian = perm(F T) + J L_E.
ResidualReport momentum_residuals(const Scene& s, const Vec3& X, double t,
                                  const FdConfig& fd = {});

// --- Energy -------------------------------------------------------------------

struct EmPower {
  double w_e = 0.0; // J_e.E_e + rho d/dt(P/rho).E_e - M_e.dB/dt
  double w_E = 0.0; // referential display (equals J w_e)
};
EmPower em_power(const Scene& s, const Vec3& X, double t, const FdConfig& fd = {});

// Two entries: eulerian   = q_vol + w_e + tau:grad v - div q - rho c_p d(theta)/dt,
//              lagrangian = T:Grad(FV) + q_l + w_E - Div q_l
//                           - rho_r c_p d(J^-1 theta_l)/dt.
ResidualReport energy_residual(const Scene& s, const Vec3& X, double t,
                               const FdConfig& fd = {});

// Left side of the entropy inequality:
//   rho dS/dt + div(q/theta) - q_vol/theta  (>= 0 for admissible processes).
// Throws when theta <= 0.
double clausius_duhem_margin(const Scene& s, const Vec3& X, double t,
                             const FdConfig& fd = {});

// --- Interface and traction conditions ----------------------------------------

// Pointwise surface data; N and n are unit normals, V_s the boundary particle
// velocity in convected form, t_A the prescribed nominal traction.
struct SurfaceData {
  Vec3 N{1.0, 0.0, 0.0};
  Vec3 n{1.0, 0.0, 0.0};
  double sigma_E = 0.0; // referential surface charge
  double sigma_e = 0.0; // current surface charge
  Vec3 K_l{};           // referential surface current
  Vec3 K{};             // current surface current
  Vec3 V_s{};
  Vec3 t_A{};
  double area_ratio = 1.0; // da/dA
};

// Fill the referential members from current-configuration data at a point.
SurfaceData make_surface_data(const SurfaceEulerian& se, const Kinematics& k,
                              const Vec3& V_s = {}, const Vec3& t_A = {});

// Vacuum-side field values at the interface point.
struct VacuumState {
  Vec3 E_star{}, B_star{};
};

// Jump conditions on the body boundary in referential form plus the traction
// condition: tangential E, normal B, normal D against sigma_E, tangential H
// against K_l - sigma_E V_s, and T^T N - t_A.  Throws on non-unit normal.
ResidualReport boundary_residuals_finite(const PointState& st, const VacuumState& vac,
                                         const SurfaceData& surf, const Constants& c,
                                         const Ten2& T_nominal);

// Interface conditions at the coil surface (current configuration):
//   n x (E - E*), n.(eps_r E - E*), n x (B/mu_r - B*) - K, n.(B - B*).
ResidualReport coil_boundary_residuals(const Vec3& E, const Vec3& B, const VacuumState& vac,
                                       const SurfaceData& surf, double eps_r, double mu_r);

} // namespace emte
