// SPDX-License-Identifier: MIT
#include "emte/balance.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace emte {

namespace {

double max_mag(std::initializer_list<double> mags) {
  double m = 0.0;
  for (double v : mags) m = std::max(m, std::abs(v));
  return m;
}

ResidualEntry vec_entry(const std::string& id, const Vec3& r,
                        std::initializer_list<double> term_mags) {
  ResidualEntry e;
  e.id = id;
  e.value = r;
  e.is_scalar = false;
  e.norm = norm(r);
  e.scale = max_mag(term_mags);
  return e;
}

ResidualEntry scalar_entry(const std::string& id, double r,
                           std::initializer_list<double> term_mags) {
  ResidualEntry e;
  e.id = id;
  e.value = Vec3{r, 0.0, 0.0};
  e.is_scalar = true;
  e.norm = std::abs(r);
  e.scale = max_mag(term_mags);
  return e;
}

void require_unit(const Vec3& n, const char* what) {
  if (std::abs(norm(n) - 1.0) > 1e-8) {
    throw Error(std::string(what) + ": normal must be a unit vector");
  }
}

} // namespace

const ResidualEntry& ResidualReport::entry(const std::string& id) const {
  for (const ResidualEntry& e : entries) {
    if (e.id == id) return e;
  }
  throw Error("residual report: no entry named " + id);
}

double ResidualReport::max_relative(double scale_floor) const {
  double m = 0.0;
  for (const ResidualEntry& e : entries) {
    m = std::max(m, e.norm / std::max(e.scale, scale_floor));
  }
  return m;
}

// --- Maxwell: continuum -------------------------------------------------------

ResidualReport maxwell_residual_eulerian(const Scene& s, const Vec3& X, double t,
                                         const FdConfig& fd) {
  const double eps0 = s.constants.eps0;
  const double mu0 = s.constants.mu0;
  const SceneEulerian e = eulerian_views(s);

  ResidualReport rep;
  rep.configuration = "eulerian";
  rep.point = X;
  rep.time = t;

  const Ten2 gB = grad_of(e.B, X, t, fd);
  rep.entries.push_back(scalar_entry("gauss_magnetic", trace(gB), {gB(0, 0), gB(1, 1), gB(2, 2)}));

  const Vec3 curlE = curl_of(e.E, X, t, fd);
  const Vec3 B_t = spatial_rate(e.B, s.motion, X, t, fd);
  rep.entries.push_back(vec_entry("faraday", curlE + B_t, {norm(curlE), norm(B_t)}));

  const double divE = trace(grad_of(e.E, X, t, fd));
  const double divP = trace(grad_of(e.P, X, t, fd));
  const double rho_e = value(e.rho_e, X, t);
  rep.entries.push_back(scalar_entry("gauss_electric", eps0 * divE + divP - rho_e,
                                     {eps0 * divE, divP, rho_e}));

  const VField Hf = sub(scale(1.0 / mu0, e.B), e.M);
  const Vec3 curlH = curl_of(Hf, X, t, fd);
  const VField Df = add(scale(eps0, e.E), e.P);
  const Vec3 D_t = spatial_rate(Df, s.motion, X, t, fd);
  const Vec3 Jtot = value(e.Jtot, X, t);
  rep.entries.push_back(
      vec_entry("ampere", curlH - Jtot - D_t, {norm(curlH), norm(Jtot), norm(D_t)}));
  return rep;
}

ResidualReport maxwell_residual_lagrangian(const Scene& s, const Vec3& X, double t,
                                           const FdConfig& fd) {
  const double eps0 = s.constants.eps0;
  const double mu0 = s.constants.mu0;

  const TField Ff = deformation_field(s.motion, fd);
  const SField detf = det_field(Ff);
  const TField cf = matmul(transpose(Ff), Ff);
  const TField cinv = inverse_field(cf);
  const VField Vf = apply(inverse_field(Ff), velocity_field(s.motion, fd));
  const VField D0f = mul(detf, apply(cinv, s.E_l)); // J c^-1 E_l
  const VField E_elf = add(s.E_l, cross(Vf, s.B_l));
  const VField M_elf = add(s.M_l, cross(Vf, s.P_l));

  ResidualReport rep;
  rep.configuration = "lagrangian";
  rep.point = X;
  rep.time = t;

  const Ten2 gB = grad_of(s.B_l, X, t, fd);
  rep.entries.push_back(scalar_entry("gauss_magnetic", trace(gB), {gB(0, 0), gB(1, 1), gB(2, 2)}));

  const Vec3 curlE = curl_of(E_elf, X, t, fd);
  const Vec3 B_t = dt_of(s.B_l, X, t, fd);
  rep.entries.push_back(vec_entry("faraday", curlE + B_t, {norm(curlE), norm(B_t)}));

  // Gauss: Div(eps0 J c^-1 E_l + P_l) = rho_E, the exact pull-back of the
  // spatial law (and the divergence form of the normal-D jump condition).
  const double divD0 = trace(grad_of(D0f, X, t, fd));
  const double divP = trace(grad_of(s.P_l, X, t, fd));
  const double rho_E = value(s.rho_E, X, t);
  rep.entries.push_back(scalar_entry("gauss_electric", eps0 * divD0 + divP - rho_E,
                                     {eps0 * divD0, rho_E, divP}));

  const VField Hf =
      sub(scale(1.0 / mu0, mul(recip(detf), apply(cf, s.B_l))), scale(eps0, cross(Vf, D0f)));
  const Vec3 curlH = curl_of(Hf, X, t, fd);
  const Vec3 D0_t = dt_of(D0f, X, t, fd);
  const Vec3 P_t = dt_of(s.P_l, X, t, fd);
  const Vec3 curlM = curl_of(M_elf, X, t, fd);
  const Vec3 J_E = value(s.J_E, X, t);
  rep.entries.push_back(vec_entry(
      "ampere", curlH - eps0 * D0_t - P_t - curlM - J_E,
      {norm(curlH), eps0 * norm(D0_t), norm(P_t), norm(curlM), norm(J_E)}));
  return rep;
}

// --- Maxwell: rigid regions ---------------------------------------------------

RegionScene make_region_scene() {
  RegionScene r;
  r.E = const_field(Chart::Spatial, false, Vec3{});
  r.B = const_field(Chart::Spatial, false, Vec3{});
  r.Jfree = const_field(Chart::Spatial, false, Vec3{});
  return r;
}

ResidualReport region_maxwell_residual(const RegionScene& r, Region region, const Vec3& x,
                                       double t, const FdConfig& fd) {
  const double eps0 = r.constants.eps0;
  const double mu0 = r.constants.mu0;

  ResidualReport rep;
  rep.configuration = (region == Region::Coil) ? "coil" : "vacuum";
  rep.point = x;
  rep.time = t;

  const Ten2 gB = grad_of(r.B, x, t, fd);
  rep.entries.push_back(scalar_entry("gauss_magnetic", trace(gB), {gB(0, 0), gB(1, 1), gB(2, 2)}));

  const Vec3 curlE = curl_of(r.E, x, t, fd);
  const Vec3 B_t = dt_of(r.B, x, t, fd);
  rep.entries.push_back(vec_entry("faraday", curlE + B_t, {norm(curlE), norm(B_t)}));

  const Ten2 gE = grad_of(r.E, x, t, fd);
  rep.entries.push_back(scalar_entry("gauss_electric", trace(gE), {gE(0, 0), gE(1, 1), gE(2, 2)}));

  const Vec3 curlB = curl_of(r.B, x, t, fd);
  const Vec3 E_t = dt_of(r.E, x, t, fd);
  if (region == Region::Coil) {
    const Vec3 J = value(r.Jfree, x, t);
    const Vec3 res = (1.0 / (mu0 * r.mu_r)) * curlB - eps0 * r.eps_r * E_t - J;
    rep.entries.push_back(vec_entry(
        "ampere", res, {norm(curlB) / (mu0 * r.mu_r), eps0 * r.eps_r * norm(E_t), norm(J)}));
  } else {
    const Vec3 res = curlB - eps0 * mu0 * E_t;
    rep.entries.push_back(vec_entry("ampere", res, {norm(curlB), eps0 * mu0 * norm(E_t)}));
  }
  return rep;
}

// --- Electromagnetic body force, couple ----------------------------------------

Vec3 em_body_force(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const SceneEulerian e = eulerian_views(s);
  const VField vv = spatial_view(velocity_field(s.motion, fd), s.motion, fd);
  const VField PxB = cross(e.P, e.B);

  const double rho_e = value(e.rho_e, X, t);
  const Vec3 E = value(e.E, X, t);
  const Vec3 B = value(e.B, X, t);
  const Vec3 P = value(e.P, X, t);
  const Vec3 M = value(e.M, X, t);
  const Vec3 J = value(e.Jtot, X, t);

  const Vec3 t1 = rho_e * E;
  const Vec3 t2 = cross(J, B);
  const Vec3 t3 = transpose_apply(grad_of(e.E, X, t, fd), P);
  const Vec3 t4 = transpose_apply(grad_of(e.B, X, t, fd), M);
  const Vec3 t5 = dt_of(PxB, X, t, fd); // material rate
  const Vec3 t6 = div_first(outer(vv, PxB), X, t, fd);
  return t1 + t2 + t3 + t4 + t5 + t6;
}

Vec3 em_body_couple(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const PointState st = sample_state(s, X, t, fd);
  return cross(st.em.P, st.em.E) + cross(st.eff.M_e, st.em.B);
}

Vec3 em_body_force_lagrangian(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  const TField Ff = deformation_field(s.motion, fd);
  const SField detf = det_field(Ff);
  const TField Finvf = inverse_field(Ff);
  const VField Vf = apply(Finvf, velocity_field(s.motion, fd));

  const Vec3 E_l = value(s.E_l, X, t);
  const Vec3 B_l = value(s.B_l, X, t);
  const Vec3 P_l = value(s.P_l, X, t);
  const Vec3 M_l = value(s.M_l, X, t);
  const double rho_E = value(s.rho_E, X, t);
  const Vec3 J_l = value(s.J_E, X, t) + rho_E * k.V; // total current pull-back
  const double J = k.J;
  const Ten2 FinvT = transpose(k.F_inv);

  const Vec3 t1 = (rho_E / J) * (FinvT * E_l);
  const Vec3 t2 = (1.0 / (J * J)) * cross(k.F * J_l, k.F * B_l);

  const VField Espat = apply_transpose(Finvf, s.E_l);          // F^-T E_l
  const VField Bspat = mul(recip(detf), apply(Ff, s.B_l));     // J^-1 F B_l
  const Vec3 t3 = FinvT * transpose_apply(grad_of(Espat, X, t, fd), (1.0 / J) * (k.F * P_l));
  const Vec3 t4 = FinvT * transpose_apply(grad_of(Bspat, X, t, fd), FinvT * M_l);

  const VField Pspat = mul(recip(detf), apply(Ff, s.P_l));
  const Vec3 t5 = dt_of(cross(Pspat, Bspat), X, t, fd);

  const TField Wf =
      mul(recip(detf), outer(Vf, cross(apply(Ff, s.P_l), apply(Ff, s.B_l))));
  const Vec3 t6 = (1.0 / J) * div_first(Wf, X, t, fd);

  return t1 + t2 + t3 + t4 + t5 + t6;
}

Vec3 em_body_couple_lagrangian(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  const Vec3 E_l = value(s.E_l, X, t);
  const Vec3 B_l = value(s.B_l, X, t);
  const Vec3 P_l = value(s.P_l, X, t);
  const Vec3 M_el = value(s.M_l, X, t) + cross(k.V, P_l);
  const Ten2 FinvT = transpose(k.F_inv);
  return (1.0 / k.J) * cross(k.F * P_l, FinvT * E_l) +
         (1.0 / k.J) * cross(FinvT * M_el, k.F * B_l);
}

// --- Momentum -------------------------------------------------------------------

ResidualReport momentum_residuals(const Scene& s, const Vec3& X, double t,
                                  const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  const double rho = s.rho_r / k.J;

  ResidualReport rep;
  rep.configuration = "both";
  rep.point = X;
  rep.time = t;

  const TField tauf = spatial_view(cauchy_stress_field(s), s.motion, fd);
  const Vec3 div_tau = div_first(tauf, X, t, fd);
  const Vec3 f_e = em_body_force(s, X, t, fd);
  const Vec3 lin_e = div_tau + f_e - rho * k.a;
  rep.entries.push_back(vec_entry("linear_eulerian", lin_e,
                                  {norm(div_tau), norm(f_e), rho * norm(k.a)}));

  const Ten2 tau = value(tauf, X, t);
  const Vec3 perm_tau = perm_contract(tau);
  const Vec3 L_e = em_body_couple(s, X, t, fd);
  rep.entries.push_back(
      vec_entry("angular_eulerian", perm_tau + L_e, {norm(perm_tau), norm(L_e)}));

  const Vec3 div_T = div_first(s.T, X, t, fd);
  const Vec3 f_E = em_body_force_lagrangian(s, X, t, fd);
  const Vec3 lin_l = div_T + k.J * f_E - s.rho_r * k.a;
  rep.entries.push_back(vec_entry("linear_lagrangian", lin_l,
                                  {norm(div_T), k.J * norm(f_E), s.rho_r * norm(k.a)}));

  const Ten2 FT = k.F * value(s.T, X, t);
  const Vec3 perm_FT = perm_contract(FT);
  const Vec3 L_E = em_body_couple_lagrangian(s, X, t, fd);
  rep.entries.push_back(vec_entry("angular_lagrangian", perm_FT + k.J * L_E,
                                  {norm(perm_FT), k.J * norm(L_E)}));
  return rep;
}

// --- Energy ----------------------------------------------------------------------

EmPower em_power(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const PointState st = sample_state(s, X, t, fd);
  const Kinematics& k = st.kin;
  const TField Ff = deformation_field(s.motion, fd);
  const SField detf = det_field(Ff);

  const VField P_over_rho = scale(1.0 / s.rho_r, apply(Ff, s.P_l)); // P/rho
  const VField Bspat = mul(recip(detf), apply(Ff, s.B_l));          // B

  const Vec3 dP_rho = dt_of(P_over_rho, X, t, fd); // material rate of P/rho
  const Vec3 dB = dt_of(Bspat, X, t, fd);          // material rate of B
  const double rho = s.rho_r / k.J;

  EmPower p;
  p.w_e = dot(st.eff.J_e, st.eff.E_e) + rho * dot(dP_rho, st.eff.E_e) - dot(st.eff.M_e, dB);

  const Ten2 FinvT = transpose(k.F_inv);
  const Vec3 E_e_from_l = FinvT * st.effl.E_el;
  p.w_E = dot(k.F * st.effl.J_el, E_e_from_l) + s.rho_r * dot(dP_rho, E_e_from_l) -
          k.J * dot(FinvT * st.effl.M_el, dB);
  return p;
}

ResidualReport energy_residual(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  const TField Ff = deformation_field(s.motion, fd);
  const SField jinv = recip(det_field(Ff));
  const SceneEulerian e = eulerian_views(s);
  const EmPower p = em_power(s, X, t, fd);

  ResidualReport rep;
  rep.configuration = "both";
  rep.point = X;
  rep.time = t;

  const double rho = s.rho_r / k.J;
  const double q_vol = value(e.q_vol, X, t);
  const Ten2 tau = value(cauchy_stress_field(s), X, t);
  const double stress_power = double_contract(tau, k.L); // tau : grad v
  const double div_q = trace(grad_of(e.q, X, t, fd));
  const double theta_dot = dt_of(mul(jinv, s.theta_l), X, t, fd); // material rate
  const double r_e = q_vol + p.w_e + stress_power - div_q - rho * s.c_p * theta_dot;
  rep.entries.push_back(scalar_entry(
      "heat_eulerian", r_e,
      {q_vol, p.w_e, stress_power, div_q, rho * s.c_p * theta_dot}));

  const Ten2 T = value(s.T, X, t);
  const Ten2 grad_v = grad_of(velocity_field(s.motion, fd), X, t, fd); // Grad(FV)
  double T_power = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) T_power += T(a, i) * grad_v(i, a);
  const double q_vol_l = value(s.q_vol_l, X, t);
  const double div_q_l = trace(grad_of(s.q_l, X, t, fd));
  const double r_l = T_power + q_vol_l + p.w_E - div_q_l - s.rho_r * s.c_p * theta_dot;
  rep.entries.push_back(scalar_entry(
      "heat_lagrangian", r_l,
      {T_power, q_vol_l, p.w_E, div_q_l, s.rho_r * s.c_p * theta_dot}));
  return rep;
}

double clausius_duhem_margin(const Scene& s, const Vec3& X, double t, const FdConfig& fd) {
  const Kinematics k = kinematics_at(s.motion, X, t, fd);
  const double theta_l = value(s.theta_l, X, t);
  const double theta = theta_l / k.J;
  if (theta <= 0.0) throw Error("entropy inequality: nonpositive temperature");

  const TField Ff = deformation_field(s.motion, fd);
  // q / theta = F q_l / theta_l, a spatial vector over (X, t).
  const VField q_over_theta = mul(recip(s.theta_l), apply(Ff, s.q_l));
  const double div_q_theta =
      trace(grad_of(spatial_view(q_over_theta, s.motion, fd), X, t, fd));

  const double rho = s.rho_r / k.J;
  const double S_dot = dt_of(s.entropy, X, t, fd);
  const double q_vol_over_theta = value(s.q_vol_l, X, t) / theta_l;
  return rho * S_dot + div_q_theta - q_vol_over_theta;
}

// --- Interface and traction conditions -------------------------------------------

SurfaceData make_surface_data(const SurfaceEulerian& se, const Kinematics& k,
                              const Vec3& V_s, const Vec3& t_A) {
  const SurfaceLagrangian sl = pull_back_surface(se, k);
  SurfaceData d;
  d.N = sl.N;
  d.n = se.n;
  d.sigma_E = sl.sigma_E;
  d.sigma_e = se.sigma_e;
  d.K_l = sl.K_l;
  d.K = se.K;
  d.V_s = V_s;
  d.t_A = t_A;
  d.area_ratio = sl.area_ratio;
  return d;
}

ResidualReport boundary_residuals_finite(const PointState& st, const VacuumState& vac,
                                         const SurfaceData& surf, const Constants& c,
                                         const Ten2& T_nominal) {
  require_unit(surf.N, "body interface");
  const Kinematics& k = st.kin;
  const EMStateLagrangian& l = st.eml;

  ResidualReport rep;
  rep.configuration = "lagrangian";
  rep.point = k.x;

  const Vec3 FtEs = transpose_apply(k.F, vac.E_star);
  const Vec3 e_jump = cross(surf.N, st.effl.E_el - FtEs);
  rep.entries.push_back(vec_entry("tangential_e", e_jump,
                                  {norm(cross(surf.N, st.effl.E_el)),
                                   norm(cross(surf.N, FtEs))}));

  const Vec3 Bs_l = k.J * (k.F_inv * vac.B_star);
  rep.entries.push_back(scalar_entry("normal_b", dot(surf.N, l.B_l - Bs_l),
                                     {dot(surf.N, l.B_l), dot(surf.N, Bs_l)}));

  const Vec3 d_inside = c.eps0 * k.J * (k.c_inv * (l.E_l - FtEs)) + l.P_l;
  rep.entries.push_back(scalar_entry(
      "normal_d", dot(surf.N, d_inside) - surf.sigma_E,
      {c.eps0 * k.J * dot(surf.N, k.c_inv * (l.E_l - FtEs)), dot(surf.N, l.P_l),
       surf.sigma_E}));

  const Vec3 h1 = (1.0 / (k.J * c.mu0)) * (k.c * l.B_l);
  const Vec3 h2 = l.M_l;
  const Vec3 h3 = cross(k.V, c.eps0 * k.J * (k.c_inv * l.E_l) + l.P_l);
  const Vec3 h4 = (1.0 / c.mu0) * transpose_apply(k.F, vac.B_star);
  const Vec3 rhs = surf.K_l - surf.sigma_E * surf.V_s;
  const Vec3 h_jump = cross(surf.N, h1 - h2 - h3 - h4) - rhs;
  rep.entries.push_back(vec_entry("tangential_h", h_jump,
                                  {norm(h1), norm(h2), norm(h3), norm(h4), norm(rhs)}));

  const Vec3 trac = transpose_apply(T_nominal, surf.N);
  rep.entries.push_back(
      vec_entry("traction", trac - surf.t_A, {norm(trac), norm(surf.t_A)}));
  return rep;
}

ResidualReport coil_boundary_residuals(const Vec3& E, const Vec3& B, const VacuumState& vac,
                                       const SurfaceData& surf, double eps_r, double mu_r) {
  require_unit(surf.n, "coil interface");
  ResidualReport rep;
  rep.configuration = "coil";

  rep.entries.push_back(vec_entry("tangential_e", cross(surf.n, E - vac.E_star),
                                  {norm(E), norm(vac.E_star)}));
  rep.entries.push_back(scalar_entry("normal_d", dot(surf.n, eps_r * E - vac.E_star),
                                     {eps_r * dot(surf.n, E), dot(surf.n, vac.E_star)}));
  rep.entries.push_back(vec_entry("tangential_h",
                                  cross(surf.n, (1.0 / mu_r) * B - vac.B_star) - surf.K,
                                  {norm(B) / mu_r, norm(vac.B_star), norm(surf.K)}));
  rep.entries.push_back(scalar_entry("normal_b", dot(surf.n, B - vac.B_star),
                                     {dot(surf.n, B), dot(surf.n, vac.B_star)}));
  return rep;
}

} // namespace emte
