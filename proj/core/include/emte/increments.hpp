// SPDX-License-Identifier: MIT
//
// Small time-dependent increments superposed on a finitely deformed,
// electromagnetically and thermally loaded bias state.
//
// The bias state is a Scene (see scene.hpp).  An IncrementScene carries the
// superposed fields: an incremental displacement u(X, t) of the current
// placement together with its referential gradients, and increments of every
// pulled-back electromagnetic and thermal field.  All fields are parameterized
// by the material label X and inherit the exact-derivative hook machinery of
// fields.hpp, so the incremental balance operators in incremental.hpp can
// differentiate them without finite-difference noise whenever hooks are
// installed.
//
// Conventions for the increment symbols (all functions of (X, t)):
//   u          displacement increment of the current position x
//   u_t        its first time rate at fixed X
//   L          spatial displacement gradient, L = (Grad u) F^-1
//   *_dot      increment of the correspondingly named pulled-back bias field
//   *_0 dot    push-forward of an increment to the current configuration:
//                vectors of flux type   (B, P, J, q):  J^-1 F (.)
//                vectors of field type  (E, M):        F^-T (.)
//                scalar densities (rho_E, theta_l, q_vol_l): J^-1 (.)
#pragma once

#include "emte/scene.hpp"

namespace emte {

// Increment fields over material labels. Defaults are identically zero.
struct IncrementScene {
  VField u;        // displacement increment
  VField u_t;      // time rate of u at fixed label
  TField grad_u;   // referential gradient of u
  TField grad_u_t; // referential gradient of u_t

  VField E_l_dot;     // increment of the pulled-back electric field
  VField B_l_dot;     // increment of the pulled-back magnetic induction
  VField P_l_dot;     // increment of the pulled-back polarization
  VField M_el_dot;    // increment of the pulled-back effective magnetization
  VField M_l_dot;     // increment of the pulled-back magnetization
  VField J_E_dot;     // increment of the pulled-back free current
  VField q_l_dot;     // increment of the pulled-back heat flux
  SField rho_E_dot;   // increment of the referential free charge density
  SField theta_l_dot; // increment of the referential temperature
  SField q_vol_l_dot; // increment of the referential volumetric heating
  TField T_dot;       // increment of the nominal stress (slot (a, i))
};

// All-zero increment scene with exact hooks installed.
IncrementScene make_increment_scene();

// Installs u, u_t, grad_u, and grad_u_t from a trigonometric-polynomial
// displacement, with exact value, gradient, and time-derivative hooks.
struct TPolyVec;
void set_displacement(IncrementScene& inc, const TPolyVec& u);

// Pointwise values of the pulled-back increments.
struct IncrementsLagrangian {
  Vec3 E_l_dot{}, B_l_dot{}, P_l_dot{}, M_el_dot{}, M_l_dot{}, J_E_dot{}, q_l_dot{};
  double rho_E_dot = 0.0;
  double theta_l_dot = 0.0;
  double q_vol_l_dot = 0.0;
};

// Pointwise values of the pushed-forward increments.
struct IncrementsUpdated {
  Vec3 E_l0_dot{}, B_l0_dot{}, P_l0_dot{}, M_el0_dot{}, M_l0_dot{}, J_E0_dot{}, q_l0_dot{};
  double rho_E0_dot = 0.0;
  double theta_l0_dot = 0.0;
  double q_vol_l0_dot = 0.0;
};

// Push-forward / pull-back maps between the two increment blocks at a given
// deformation state. The two functions are exact inverses of each other.
IncrementsUpdated push_forward_increments(const IncrementsLagrangian& lag, const Kinematics& k);
IncrementsLagrangian pull_back_increments(const IncrementsUpdated& upd, const Kinematics& k);

// Full pointwise increment state at one material point: kinematic increments,
// both increment blocks, and the derived effective-field increments.
struct IncrementalState {
  Vec3 u{};
  Vec3 u_t{};
  Vec3 u_tt{};
  Ten2 grad_u{};      // referential displacement-increment gradient
  Ten2 L{};           // spatial displacement-increment gradient (Grad u) F^-1
  double div_u = 0.0; // trace of L
  Vec3 V_dot{};       // increment of the convected velocity F^-1 v
  Vec3 E_el_dot{};    // increment of the pulled-back effective electric field
  Vec3 E_el0_dot{};   // its push-forward F^-T E_el_dot
  Vec3 E_hat{};       // increment of the spatial electric field:
                      //   E_l0_dot + (div u) E - (L + L^T) E
  IncrementsLagrangian lag;
  IncrementsUpdated upd;
};

// Samples bias kinematics and all increment fields at (X, t). The updated
// block is derived from the Lagrangian block by push-forward.
IncrementalState sample_increments(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                   double t, const FdConfig& fd = {});

// Increments of the surface source data carried by SurfaceData (referential
// measures): surface charge, surface current, and surface velocity.
struct SurfaceIncrements {
  double sigma_E_dot = 0.0;
  Vec3 K_l_dot{};
  Vec3 V_s_dot{};
};

// Increments of the vacuum (starred) fields on the far side of an interface.
struct VacuumIncrements {
  Vec3 E_star_dot{};
  Vec3 B_star_dot{};
};

} // namespace emte
