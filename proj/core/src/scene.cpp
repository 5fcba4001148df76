// SPDX-License-Identifier: MIT
#include "emte/scene.hpp"

namespace emte {

namespace {

constexpr Chart kRef = Chart::Referential;
constexpr Chart kSpa = Chart::Spatial;

VField zero_v(Chart c, bool label) { return const_field(c, label, Vec3{}); }
SField zero_s(Chart c, bool label) { return const_field(c, label, 0.0); }

// J F^-1 w for a referential-parameter spatial vector composite.
VField piola_pull(const TField& Ff, const VField& w) {
  return mul(det_field(Ff), apply(inverse_field(Ff), w));
}

Vec3 column(const Ten2& a, int c) { return {a(0, c), a(1, c), a(2, c)}; }

Ten2 slice_pair(const Ten3& t, int c) {
  Ten2 s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s(i, j) = t.at(i, j, c);
  return s;
}

} // namespace

Scene make_scene() {
  Scene s;
  s.motion = identity_motion();
  s.E_l = zero_v(kRef, true);
  s.B_l = zero_v(kRef, true);
  s.P_l = zero_v(kRef, true);
  s.M_l = zero_v(kRef, true);
  s.J_E = zero_v(kRef, true);
  s.rho_E = zero_s(kRef, true);
  s.theta_l = zero_s(kRef, true);
  s.q_l = zero_v(kRef, true);
  s.q_vol_l = zero_s(kRef, true);
  s.entropy = zero_s(kRef, true);
  s.T = const_field(kRef, true, Ten2{});
  return s;
}

EulerianFields make_eulerian_fields() {
  EulerianFields f;
  f.E = zero_v(kSpa, false);
  f.B = zero_v(kSpa, false);
  f.P = zero_v(kSpa, false);
  f.M = zero_v(kSpa, false);
  f.J = zero_v(kSpa, false);
  f.q = zero_v(kSpa, false);
  f.rho_e = zero_s(kSpa, false);
  f.theta = zero_s(kSpa, false);
  f.q_vol = zero_s(kSpa, false);
  f.entropy = zero_s(kSpa, false);
  return f;
}

Scene scene_from_eulerian(const Motion& m, const EulerianFields& f) {
  Scene s = make_scene();
  s.motion = m;
  const TField Ff = deformation_field(m);
  const SField detf = det_field(Ff);
  const VField vel = velocity_field(m);

  const VField E = material_view(f.E, m);
  const VField B = material_view(f.B, m);
  const VField P = material_view(f.P, m);
  const VField M = material_view(f.M, m);
  const VField Jtot = material_view(f.J, m);
  const VField q = material_view(f.q, m);
  const SField rho_e = material_view(f.rho_e, m);
  const SField theta = material_view(f.theta, m);
  const SField q_vol = material_view(f.q_vol, m);

  s.E_l = apply_transpose(Ff, E);
  s.B_l = piola_pull(Ff, B);
  s.P_l = piola_pull(Ff, P);
  s.M_l = apply_transpose(Ff, M);
  s.J_E = piola_pull(Ff, sub(Jtot, mul(rho_e, vel)));
  s.rho_E = mul(detf, rho_e);
  s.theta_l = mul(detf, theta);
  s.q_l = piola_pull(Ff, q);
  s.q_vol_l = mul(detf, q_vol);
  s.entropy = material_view(f.entropy, m);
  return s;
}

SceneEulerian eulerian_views(const Scene& s) {
  const TField Ff = deformation_field(s.motion);
  const TField Finv = inverse_field(Ff);
  const SField jinv = recip(det_field(Ff));
  const VField V = apply(Finv, velocity_field(s.motion));

  SceneEulerian e;
  e.E = spatial_view(apply_transpose(Finv, s.E_l), s.motion);
  e.B = spatial_view(mul(jinv, apply(Ff, s.B_l)), s.motion);
  e.P = spatial_view(mul(jinv, apply(Ff, s.P_l)), s.motion);
  e.M = spatial_view(apply_transpose(Finv, s.M_l), s.motion);
  e.Jtot = spatial_view(mul(jinv, apply(Ff, add(s.J_E, mul(s.rho_E, V)))), s.motion);
  e.q = spatial_view(mul(jinv, apply(Ff, s.q_l)), s.motion);
  e.rho_e = spatial_view(mul(jinv, s.rho_E), s.motion);
  e.theta = spatial_view(mul(jinv, s.theta_l), s.motion);
  e.q_vol = spatial_view(mul(jinv, s.q_vol_l), s.motion);
  return e;
}

VField effective_E_field(const Scene& s) {
  const TField Finv = inverse_field(deformation_field(s.motion));
  const VField V = apply(Finv, velocity_field(s.motion));
  return add(s.E_l, cross(V, s.B_l));
}

VField effective_M_field(const Scene& s) {
  const TField Finv = inverse_field(deformation_field(s.motion));
  const VField V = apply(Finv, velocity_field(s.motion));
  return add(s.M_l, cross(V, s.P_l));
}

TField cauchy_stress_field(const Scene& s) {
  const TField Ff = deformation_field(s.motion);
  return mul(recip(det_field(Ff)), matmul(Ff, s.T));
}

namespace {

// Shared evaluation kernel for the model-derived composites: the space and
// time derivatives of (T, P_l, M_el) all contract the moduli with the
// corresponding derivative of (F, E_el, B_l, theta_l), so one slice routine
// serves both hooks.
struct ConstitutiveCore {
  FreeEnergyModel model;
  TField Ff;
  VField E_el;
  VField B_l;
  SField theta_l;

  MaterialState state(const Vec3& X, double t) const {
    MaterialState st;
    st.F = value(Ff, X, t);
    st.E_el = value(E_el, X, t);
    st.B_l = value(B_l, X, t);
    st.theta_l = value(theta_l, X, t);
    return st;
  }

  // Rates of the constitutive arguments along one derivative direction.
  struct ArgRates {
    std::array<StateRates, 3> d_space;
    StateRates d_time;
  };

  ArgRates arg_rates(const Vec3& X, double t) const {
    ArgRates r;
    const Ten3 Fg = grad_of(Ff, X, t);
    const Ten2 Eg = grad_of(E_el, X, t);
    const Ten2 Bg = grad_of(B_l, X, t);
    const Vec3 tg = grad_of(theta_l, X, t);
    for (int c = 0; c < 3; ++c) {
      r.d_space[static_cast<std::size_t>(c)] = {slice_pair(Fg, c), column(Eg, c),
                                                column(Bg, c), tg[c]};
    }
    r.d_time = {dt_of(Ff, X, t), dt_of(E_el, X, t), dt_of(B_l, X, t), dt_of(theta_l, X, t)};
    return r;
  }
};

} // namespace

void attach_constitutive(Scene& s, const FreeEnergyModel& model) {
  if (!model.phi) throw Error("attach_constitutive: model has no energy function");
  if (model.incompressible) {
    throw Error("attach_constitutive: incompressible models take a pointwise pressure "
                "input and cannot back scene fields");
  }
  s.model = model;
  s.has_model = true;
  s.rho_r = model.rho_r;

  ConstitutiveCore core{model, deformation_field(s.motion), effective_E_field(s), s.B_l,
                        s.theta_l};
  const TField Finv = inverse_field(core.Ff);
  const VField V = apply(Finv, velocity_field(s.motion));

  TField T;
  T.chart = kRef;
  T.label_param = true;
  T.val = [core](const Vec3& X, double t) {
    return evaluate_response(core.model, core.state(X, t)).T;
  };
  T.grad = [core](const Vec3& X, double t) {
    const ModuliSet m = compute_moduli(core.model, core.state(X, t));
    const auto r = core.arg_rates(X, t);
    Ten3 out(Ten3Split::PairFirst);
    for (int c = 0; c < 3; ++c) {
      const Ten2 slice = stress_rate(m, r.d_space[static_cast<std::size_t>(c)]);
      for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) out.at(a, i, c) = slice(a, i);
    }
    return out;
  };
  T.dt = [core](const Vec3& X, double t) {
    const ModuliSet m = compute_moduli(core.model, core.state(X, t));
    return stress_rate(m, core.arg_rates(X, t).d_time);
  };

  VField P_l;
  P_l.chart = kRef;
  P_l.label_param = true;
  P_l.val = [core](const Vec3& X, double t) {
    return evaluate_response(core.model, core.state(X, t)).P_l;
  };
  P_l.grad = [core](const Vec3& X, double t) {
    const ModuliSet m = compute_moduli(core.model, core.state(X, t));
    const auto r = core.arg_rates(X, t);
    Ten2 out;
    for (int c = 0; c < 3; ++c) {
      const Vec3 col = polarization_rate(m, r.d_space[static_cast<std::size_t>(c)]);
      for (int i = 0; i < 3; ++i) out(i, c) = col[i];
    }
    return out;
  };
  P_l.dt = [core](const Vec3& X, double t) {
    const ModuliSet m = compute_moduli(core.model, core.state(X, t));
    return polarization_rate(m, core.arg_rates(X, t).d_time);
  };

  VField M_el;
  M_el.chart = kRef;
  M_el.label_param = true;
  M_el.val = [core](const Vec3& X, double t) {
    return evaluate_response(core.model, core.state(X, t)).M_el;
  };
  M_el.grad = [core](const Vec3& X, double t) {
    const ModuliSet m = compute_moduli(core.model, core.state(X, t));
    const auto r = core.arg_rates(X, t);
    Ten2 out;
    for (int c = 0; c < 3; ++c) {
      const Vec3 col = magnetization_rate(m, r.d_space[static_cast<std::size_t>(c)]);
      for (int i = 0; i < 3; ++i) out(i, c) = col[i];
    }
    return out;
  };
  M_el.dt = [core](const Vec3& X, double t) {
    const ModuliSet m = compute_moduli(core.model, core.state(X, t));
    return magnetization_rate(m, core.arg_rates(X, t).d_time);
  };

  s.T = T;
  s.P_l = P_l;
  s.M_l = sub(M_el, cross(V, P_l)); // M_l = M_el - V x P_l
}

PointState sample_state(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  EMStateLagrangian eml;
  eml.E_l = value(s.E_l, X, t);
  eml.B_l = value(s.B_l, X, t);
  eml.P_l = value(s.P_l, X, t);
  eml.M_l = value(s.M_l, X, t);
  eml.rho_E = value(s.rho_E, X, t);
  eml.J_E = value(s.J_E, X, t);
  ThermalLagrangian thl;
  thl.theta_l = value(s.theta_l, X, t);
  thl.q_l = value(s.q_l, X, t);
  thl.q_vol_l = value(s.q_vol_l, X, t);
  return make_point_state(k, eml, thl);
}

MaterialState material_state(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  MaterialState st;
  st.F = k.F;
  st.B_l = value(s.B_l, X, t);
  st.theta_l = value(s.theta_l, X, t);
  st.E_el = value(s.E_l, X, t) + cross(k.V, st.B_l);
  return st;
}

} // namespace emte
