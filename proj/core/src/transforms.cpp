// SPDX-License-Identifier: MIT
#include "emte/transforms.hpp"

namespace emte {

EMStateLagrangian pull_back_em(const EMStateEulerian& e, const Kinematics& k) {
  EMStateLagrangian l;
  l.B_l = k.J * (k.F_inv * e.B);
  l.E_l = transpose_apply(k.F, e.E);
  l.P_l = k.J * (k.F_inv * e.P);
  l.M_l = transpose_apply(k.F, e.M);
  l.rho_E = k.J * e.rho_e;
  l.J_E = k.J * (k.F_inv * (e.J - e.rho_e * k.v));
  return l;
}

EMStateEulerian push_forward_em(const EMStateLagrangian& l, const Kinematics& k) {
  EMStateEulerian e;
  const double Jinv = 1.0 / k.J;
  e.B = Jinv * (k.F * l.B_l);
  e.E = transpose_apply(k.F_inv, l.E_l);
  e.P = Jinv * (k.F * l.P_l);
  e.M = transpose_apply(k.F_inv, l.M_l);
  e.rho_e = Jinv * l.rho_E;
  e.J = Jinv * (k.F * l.J_E) + e.rho_e * k.v;
  return e;
}

EffectiveEulerian effective_fields(const EMStateEulerian& e, const Vec3& v) {
  EffectiveEulerian f;
  f.E_e = e.E + cross(v, e.B);
  f.M_e = e.M + cross(v, e.P);
  f.J_e = e.J - e.rho_e * v;
  return f;
}

EffectiveLagrangian effective_fields_lagrangian(const EMStateLagrangian& l,
                                                const Kinematics& k) {
  EffectiveLagrangian f;
  f.E_el = l.E_l + cross(k.V, l.B_l);
  f.M_el = l.M_l + cross(k.V, l.P_l);
  f.J_el = l.J_E;
  return f;
}

EffectiveLagrangian pull_back_effective(const EffectiveEulerian& e, const Kinematics& k) {
  EffectiveLagrangian f;
  f.E_el = transpose_apply(k.F, e.E_e);
  f.M_el = transpose_apply(k.F, e.M_e);
  f.J_el = k.J * (k.F_inv * e.J_e);
  return f;
}

EffectiveEulerian push_forward_effective(const EffectiveLagrangian& l, const Kinematics& k) {
  EffectiveEulerian f;
  f.E_e = transpose_apply(k.F_inv, l.E_el);
  f.M_e = transpose_apply(k.F_inv, l.M_el);
  f.J_e = (1.0 / k.J) * (k.F * l.J_el);
  return f;
}

ThermalLagrangian pull_back_thermal(const ThermalEulerian& e, const Kinematics& k) {
  ThermalLagrangian l;
  l.theta_l = k.J * e.theta;
  l.q_l = k.J * (k.F_inv * e.q);
  l.q_vol_l = k.J * e.q_vol;
  return l;
}

ThermalEulerian push_forward_thermal(const ThermalLagrangian& l, const Kinematics& k) {
  ThermalEulerian e;
  const double Jinv = 1.0 / k.J;
  e.theta = Jinv * l.theta_l;
  e.q = Jinv * (k.F * l.q_l);
  e.q_vol = Jinv * l.q_vol_l;
  return e;
}

double pull_back_power(double w_e, double J) { return J * w_e; }
double push_forward_power(double w_E, double J) { return w_E / J; }

Vec3 total_current_pull_back(const EMStateLagrangian& l, const Kinematics& k) {
  return l.J_E + l.rho_E * k.V;
}

SurfaceLagrangian pull_back_surface(const SurfaceEulerian& s, const Kinematics& k) {
  SurfaceLagrangian r;
  const Vec3 Fn = transpose_apply(k.F, s.n);
  r.N = normalized(Fn);
  // Nanson: n da = J F^-T N dA, so da/dA = J / |F^T n| for unit normals.
  r.area_ratio = k.J / norm(Fn);
  r.sigma_E = s.sigma_e * r.area_ratio;
  r.K_l = r.area_ratio * (k.F_inv * s.K);
  return r;
}

SurfaceEulerian push_forward_surface(const SurfaceLagrangian& s, const Kinematics& k) {
  SurfaceEulerian r;
  const Vec3 nda = k.J * transpose_apply(k.F_inv, s.N); // n da/dA
  const double ratio = norm(nda);
  r.n = nda / ratio;
  r.sigma_e = s.sigma_E / ratio;
  r.K = (1.0 / ratio) * (k.F * s.K_l);
  return r;
}

PointState make_point_state(const Kinematics& k, const EMStateEulerian& em,
                            const ThermalEulerian& th) {
  PointState p;
  p.kin = k;
  p.em = em;
  p.eml = pull_back_em(em, k);
  p.eff = effective_fields(em, k.v);
  p.effl = effective_fields_lagrangian(p.eml, k);
  p.th = th;
  p.thl = pull_back_thermal(th, k);
  return p;
}

PointState make_point_state(const Kinematics& k, const EMStateLagrangian& eml,
                            const ThermalLagrangian& thl) {
  PointState p;
  p.kin = k;
  p.eml = eml;
  p.em = push_forward_em(eml, k);
  p.eff = effective_fields(p.em, k.v);
  p.effl = effective_fields_lagrangian(eml, k);
  p.th = push_forward_thermal(thl, k);
  p.thl = thl;
  return p;
}

} // namespace emte
