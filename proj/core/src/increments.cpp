#include "emte/increments.hpp"

#include "emte/tpoly.hpp"

namespace emte {

namespace {

constexpr Chart kRef = Chart::Referential;

} // namespace

IncrementScene make_increment_scene() {
  IncrementScene inc;
  const Vec3 zv{};
  const Ten2 zt{};
  inc.u = const_field(kRef, true, zv);
  inc.u_t = const_field(kRef, true, zv);
  inc.grad_u = const_field(kRef, true, zt);
  inc.grad_u_t = const_field(kRef, true, zt);
  inc.E_l_dot = const_field(kRef, true, zv);
  inc.B_l_dot = const_field(kRef, true, zv);
  inc.P_l_dot = const_field(kRef, true, zv);
  inc.M_el_dot = const_field(kRef, true, zv);
  inc.M_l_dot = const_field(kRef, true, zv);
  inc.J_E_dot = const_field(kRef, true, zv);
  inc.q_l_dot = const_field(kRef, true, zv);
  inc.rho_E_dot = const_field(kRef, true, 0.0);
  inc.theta_l_dot = const_field(kRef, true, 0.0);
  inc.q_vol_l_dot = const_field(kRef, true, 0.0);
  inc.T_dot = const_field(kRef, true, zt);
  return inc;
}

void set_displacement(IncrementScene& inc, const TPolyVec& u) {
  const TPolyVec u_t = u.dt();
  inc.u = field_of(u, kRef, true);
  inc.u_t = field_of(u_t, kRef, true);
  inc.grad_u = grad_field_of(u, kRef, true);
  inc.grad_u_t = grad_field_of(u_t, kRef, true);
}

IncrementsUpdated push_forward_increments(const IncrementsLagrangian& lag, const Kinematics& k) {
  const double jinv = 1.0 / k.J;
  IncrementsUpdated upd;
  upd.E_l0_dot = transpose_apply(k.F_inv, lag.E_l_dot);
  upd.B_l0_dot = jinv * (k.F * lag.B_l_dot);
  upd.P_l0_dot = jinv * (k.F * lag.P_l_dot);
  upd.M_el0_dot = transpose_apply(k.F_inv, lag.M_el_dot);
  upd.M_l0_dot = transpose_apply(k.F_inv, lag.M_l_dot);
  upd.J_E0_dot = jinv * (k.F * lag.J_E_dot);
  upd.q_l0_dot = jinv * (k.F * lag.q_l_dot);
  upd.rho_E0_dot = jinv * lag.rho_E_dot;
  upd.theta_l0_dot = jinv * lag.theta_l_dot;
  upd.q_vol_l0_dot = jinv * lag.q_vol_l_dot;
  return upd;
}

IncrementsLagrangian pull_back_increments(const IncrementsUpdated& upd, const Kinematics& k) {
  IncrementsLagrangian lag;
  lag.E_l_dot = transpose_apply(k.F, upd.E_l0_dot);
  lag.B_l_dot = k.J * (k.F_inv * upd.B_l0_dot);
  lag.P_l_dot = k.J * (k.F_inv * upd.P_l0_dot);
  lag.M_el_dot = transpose_apply(k.F, upd.M_el0_dot);
  lag.M_l_dot = transpose_apply(k.F, upd.M_l0_dot);
  lag.J_E_dot = k.J * (k.F_inv * upd.J_E0_dot);
  lag.q_l_dot = k.J * (k.F_inv * upd.q_l0_dot);
  lag.rho_E_dot = k.J * upd.rho_E0_dot;
  lag.theta_l_dot = k.J * upd.theta_l0_dot;
  lag.q_vol_l_dot = k.J * upd.q_vol_l0_dot;
  return lag;
}

IncrementalState sample_increments(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                   double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(bias.motion, X, t, fd);
  IncrementalState st;
  st.u = value(inc.u, X, t);
  st.u_t = value(inc.u_t, X, t);
  st.u_tt = dt_of(inc.u_t, X, t, fd);
  st.grad_u = value(inc.grad_u, X, t);
  st.L = st.grad_u * k.F_inv;
  st.div_u = trace(st.L);
  st.V_dot = k.F_inv * (st.u_t - st.L * k.v);

  st.lag.E_l_dot = value(inc.E_l_dot, X, t);
  st.lag.B_l_dot = value(inc.B_l_dot, X, t);
  st.lag.P_l_dot = value(inc.P_l_dot, X, t);
  st.lag.M_el_dot = value(inc.M_el_dot, X, t);
  st.lag.M_l_dot = value(inc.M_l_dot, X, t);
  st.lag.J_E_dot = value(inc.J_E_dot, X, t);
  st.lag.q_l_dot = value(inc.q_l_dot, X, t);
  st.lag.rho_E_dot = value(inc.rho_E_dot, X, t);
  st.lag.theta_l_dot = value(inc.theta_l_dot, X, t);
  st.lag.q_vol_l_dot = value(inc.q_vol_l_dot, X, t);
  st.upd = push_forward_increments(st.lag, k);

  const Vec3 B_l = value(bias.B_l, X, t);
  st.E_el_dot = st.lag.E_l_dot + cross(st.V_dot, B_l) + cross(k.V, st.lag.B_l_dot);
  st.E_el0_dot = transpose_apply(k.F_inv, st.E_el_dot);

  const Vec3 E = transpose_apply(k.F_inv, value(bias.E_l, X, t));
  const Ten2 sym2 = st.L + transpose(st.L);
  st.E_hat = st.upd.E_l0_dot + st.div_u * E - sym2 * E;
  return st;
}

} // namespace emte
