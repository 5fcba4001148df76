// SPDX-License-Identifier: MIT
//
// Pointwise electromagnetic/thermal state bundles in the current and
// reference configurations, and the exact maps between them.  All referential
// vectors are per unit reference area/volume (two-point pull-backs):
//   B_l = J F^-1 B          E_l = F^T E
//   P_l = J F^-1 P          M_l = F^T M
//   rho_E = J rho_e         J_E = J F^-1 (J_free - rho_e v)
//   theta_l = J theta       q_l = J F^-1 q       q_vol_l = J q_vol
// Effective (co-moving) fields:
//   E_e = E + v x B         M_e = M + v x P      J_e = J_free - rho_e v
// and their convected counterparts E_el = F^T E_e = E_l + V x B_l,
// M_el = F^T M_e = M_l + V x P_l, J_el = J F^-1 J_e = J_E.
#pragma once

#include "emte/motion.hpp"
#include "emte/tensor.hpp"

namespace emte {

struct Constants {
  double eps0 = 8.8541878128e-12;
  double mu0 = 1.25663706212e-6;
};

struct EMStateEulerian {
  Vec3 E, B, P, M;
  double rho_e = 0.0;
  Vec3 J; // total free current
};

struct EMStateLagrangian {
  Vec3 E_l, B_l, P_l, M_l;
  double rho_E = 0.0;
  Vec3 J_E; // pull-back of the effective current J - rho_e v
};

struct EffectiveEulerian {
  Vec3 E_e, M_e, J_e;
};

struct EffectiveLagrangian {
  Vec3 E_el, M_el, J_el;
};

struct ThermalEulerian {
  double theta = 0.0;
  Vec3 q;
  double q_vol = 0.0;
};

struct ThermalLagrangian {
  double theta_l = 0.0;
  Vec3 q_l;
  double q_vol_l = 0.0;
};

EMStateLagrangian pull_back_em(const EMStateEulerian& e, const Kinematics& k);
EMStateEulerian push_forward_em(const EMStateLagrangian& l, const Kinematics& k);

EffectiveEulerian effective_fields(const EMStateEulerian& e, const Vec3& v);
// Built directly from referential quantities: E_el = E_l + V x B_l, etc.
EffectiveLagrangian effective_fields_lagrangian(const EMStateLagrangian& l,
                                                const Kinematics& k);
EffectiveLagrangian pull_back_effective(const EffectiveEulerian& e, const Kinematics& k);
EffectiveEulerian push_forward_effective(const EffectiveLagrangian& l, const Kinematics& k);

ThermalLagrangian pull_back_thermal(const ThermalEulerian& e, const Kinematics& k);
ThermalEulerian push_forward_thermal(const ThermalLagrangian& l, const Kinematics& k);

// Volumetric electromagnetic power densities: w_E = J w_e.
double pull_back_power(double w_e, double J);
double push_forward_power(double w_E, double J);

// Total free current in referential form: J_l = J F^-1 J_free = J_E + rho_E V.
Vec3 total_current_pull_back(const EMStateLagrangian& l, const Kinematics& k);

// Surface data.  n and N are unit normals; densities are per unit current
// (respectively reference) area.  area_ratio = da/dA.
struct SurfaceEulerian {
  Vec3 n;
  double sigma_e = 0.0;
  Vec3 K;
};

struct SurfaceLagrangian {
  Vec3 N;
  double sigma_E = 0.0;
  Vec3 K_l;
  double area_ratio = 1.0;
};

SurfaceLagrangian pull_back_surface(const SurfaceEulerian& s, const Kinematics& k);
SurfaceEulerian push_forward_surface(const SurfaceLagrangian& s, const Kinematics& k);

// Complete pointwise bundle with both configurations kept consistent.
struct PointState {
  Kinematics kin;
  EMStateEulerian em;
  EMStateLagrangian eml;
  EffectiveEulerian eff;
  EffectiveLagrangian effl;
  ThermalEulerian th;
  ThermalLagrangian thl;
};

PointState make_point_state(const Kinematics& k, const EMStateEulerian& em,
                            const ThermalEulerian& th);
PointState make_point_state(const Kinematics& k, const EMStateLagrangian& eml,
                            const ThermalLagrangian& thl);

} // namespace emte
