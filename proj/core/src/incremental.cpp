// SPDX-License-Identifier: MIT
#include "emte/incremental.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "emte/error.hpp"

namespace emte {

namespace {

constexpr Chart kRef = Chart::Referential;

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

ResidualEntry sum_entry(const std::string& id, const LabeledTermSum& sum) {
  ResidualEntry e;
  e.id = id;
  e.value = sum.total();
  e.is_scalar = false;
  e.norm = norm(e.value);
  e.scale = sum.scale();
  return e;
}

void require_unit(const Vec3& n, const char* what) {
  if (std::abs(norm(n) - 1.0) > 1e-8) {
    throw Error(std::string(what) + ": normal must be a unit vector");
  }
}

// Field composites shared by the incremental evaluators. Everything is
// parameterized by the material label; spatial differential operators are
// reached through spatial_view.
struct Kit {
  TField Ff, Finvf, FinvTf, cf, cinvf; // bias kinematic composites
  SField detf, jinvf;
  VField vf, Vf;
  VField Espatf, Bspatf, Pspatf; // bias spatial E, B, P over labels

  TField Lf, LpLTf; // spatial displacement gradient and its symmetrizer
  SField divuf;
  VField V_dotf;   // increment of the convected velocity
  VField Eel_dotf; // increment of the pulled-back effective electric field
  VField Gdotf;    // increment of the referential electric displacement J c^-1 E_l

  VField E0_dotf, B0_dotf, P0_dotf, Mel0_dotf, Ml0_dotf, JE0_dotf, q0_dotf;
  SField rho0_dotf, theta0_dotf, qvol0_dotf;
  SField thetaf;   // bias spatial temperature over labels
  VField E_hatf;   // increment of the spatial electric field
  VField Eel0_dotf;
  VField Bdelf, Pdelf; // increments of the spatial induction / polarization
};

// Every kit member is wrapped in cached(): the members share subexpressions
// heavily (F, its inverse, J, L, ...), and the hook-propagating combinators
// re-evaluate a subfield once per use site, which multiplies up the tree.
Kit make_kit(const Scene& s, const IncrementScene& inc, const FdConfig& fd) {
  Kit k;
  k.Ff = cached(deformation_field(s.motion, fd));
  k.Finvf = cached(inverse_field(k.Ff));
  k.FinvTf = cached(transpose(k.Finvf));
  k.cf = cached(matmul(transpose(k.Ff), k.Ff));
  k.cinvf = cached(inverse_field(k.cf));
  k.detf = cached(det_field(k.Ff));
  k.jinvf = cached(recip(k.detf));
  k.vf = cached(velocity_field(s.motion, fd));
  k.Vf = cached(apply(k.Finvf, k.vf));
  k.Espatf = cached(apply_transpose(k.Finvf, s.E_l));
  k.Bspatf = cached(mul(k.jinvf, apply(k.Ff, s.B_l)));
  k.Pspatf = cached(mul(k.jinvf, apply(k.Ff, s.P_l)));

  k.Lf = cached(matmul(inc.grad_u, k.Finvf));
  k.LpLTf = cached(add(k.Lf, transpose(k.Lf)));
  k.divuf = cached(trace_field(k.Lf));
  k.V_dotf = cached(apply(k.Finvf, sub(inc.u_t, apply(k.Lf, k.vf))));
  k.Eel_dotf = cached(add(inc.E_l_dot, add(cross(k.V_dotf, s.B_l), cross(k.Vf, inc.B_l_dot))));
  k.Gdotf = cached(add(sub(mul(mul(k.detf, k.divuf), apply(k.cinvf, s.E_l)),
                           mul(k.detf, apply(k.Finvf, apply(k.LpLTf, apply(k.FinvTf, s.E_l))))),
                       mul(k.detf, apply(k.cinvf, inc.E_l_dot))));

  k.E0_dotf = cached(apply_transpose(k.Finvf, inc.E_l_dot));
  k.B0_dotf = cached(mul(k.jinvf, apply(k.Ff, inc.B_l_dot)));
  k.P0_dotf = cached(mul(k.jinvf, apply(k.Ff, inc.P_l_dot)));
  k.Mel0_dotf = cached(apply_transpose(k.Finvf, inc.M_el_dot));
  k.Ml0_dotf = cached(apply_transpose(k.Finvf, inc.M_l_dot));
  k.JE0_dotf = cached(mul(k.jinvf, apply(k.Ff, inc.J_E_dot)));
  k.q0_dotf = cached(mul(k.jinvf, apply(k.Ff, inc.q_l_dot)));
  k.rho0_dotf = cached(mul(k.jinvf, inc.rho_E_dot));
  k.theta0_dotf = cached(mul(k.jinvf, inc.theta_l_dot));
  k.qvol0_dotf = cached(mul(k.jinvf, inc.q_vol_l_dot));
  k.thetaf = cached(mul(k.jinvf, s.theta_l));
  k.E_hatf = cached(add(k.E0_dotf, sub(mul(k.divuf, k.Espatf), apply(k.LpLTf, k.Espatf))));
  k.Eel0_dotf = cached(apply_transpose(k.Finvf, k.Eel_dotf));
  k.Bdelf = cached(mul(k.jinvf, add(sub(apply(k.Lf, apply(k.Ff, s.B_l)),
                                        mul(k.divuf, apply(k.Ff, s.B_l))),
                                    apply(k.Ff, inc.B_l_dot))));
  k.Pdelf = cached(mul(k.jinvf, add(sub(apply(k.Lf, apply(k.Ff, s.P_l)),
                                        mul(k.divuf, apply(k.Ff, s.P_l))),
                                    apply(k.Ff, inc.P_l_dot))));
  return k;
}

} // namespace

Vec3 LabeledTermSum::total() const {
  Vec3 s{};
  for (const LabeledTerm& t : terms) s += t.value;
  return s;
}

double LabeledTermSum::scale() const {
  double m = 0.0;
  for (const LabeledTerm& t : terms) m = std::max(m, norm(t.value));
  return m;
}

const Vec3& LabeledTermSum::term(const std::string& id) const {
  for (const LabeledTerm& t : terms) {
    if (t.id == id) return t.value;
  }
  throw Error("labeled sum: no term named " + id);
}

double LabeledScalarSum::total() const {
  double s = 0.0;
  for (const LabeledScalar& t : terms) s += t.value;
  return s;
}

double LabeledScalarSum::scale() const {
  double m = 0.0;
  for (const LabeledScalar& t : terms) m = std::max(m, std::abs(t.value));
  return m;
}

double LabeledScalarSum::term(const std::string& id) const {
  for (const LabeledScalar& t : terms) {
    if (t.id == id) return t.value;
  }
  throw Error("labeled sum: no term named " + id);
}

AuxiliaryIncrementals auxiliary_fields(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                       double t, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Kinematics kin = kinematics_at(bias.motion, X, t, fd);

  AuxiliaryIncrementals a;
  a.E_hat = value(k.E_hatf, X, t);
  a.E_el0_dot = value(k.Eel0_dotf, X, t);

  const double rho_e = value(bias.rho_E, X, t) / kin.J;
  const double rho_E0_dot = value(k.rho0_dotf, X, t);
  const Vec3 u_t = value(inc.u_t, X, t);
  const Ten2 L = value(k.Lf, X, t);
  a.J_E0_dot_ohm = bias.cond.xi * a.E_hat - rho_E0_dot * kin.v - rho_e * (u_t - L * kin.v);
  return a;
}

// --- Incremental Maxwell ------------------------------------------------------

LabeledTermSum incremental_ampere_terms_lagrangian(const Scene& bias, const IncrementScene& inc,
                                                   const Vec3& X, double t,
                                                   const IncrementalConfig& cfg,
                                                   const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const double eps0 = bias.constants.eps0;
  const double mu0 = bias.constants.mu0;
  const bool lit = cfg.literal_increment_ampere;

  // Curl of the increment of the magnetic field J^-1 c B_l / mu_0.
  const VField cB = apply(k.cf, bias.B_l);
  const VField stretch = lit ? scale(2.0, apply(transpose(k.Ff), apply(k.Lf, apply(k.Ff, bias.B_l))))
                             : apply(transpose(k.Ff), apply(k.LpLTf, apply(k.Ff, bias.B_l)));
  const double vol_sign = lit ? 1.0 : -1.0;
  const VField h_inner = mul(k.jinvf, add(add(scale(vol_sign, mul(k.divuf, cB)), stretch),
                                          apply(k.cf, inc.B_l_dot)));
  const Vec3 magnetic_curl = (1.0 / mu0) * curl_of(h_inner, X, t, fd);

  // Curl of the increment of the convective displacement V x (J c^-1 E_l).
  const VField D0f = mul(k.detf, apply(k.cinvf, bias.E_l));
  const VField conv = add(cross(k.V_dotf, D0f), cross(k.Vf, k.Gdotf));
  const Vec3 convective_displacement = (-eps0) * curl_of(conv, X, t, fd);

  const Vec3 displacement_rate = lit ? (-eps0) * dt_of(mul(k.detf, k.Gdotf), X, t, fd)
                                     : (-eps0) * dt_of(k.Gdotf, X, t, fd);
  const Vec3 polarization_rate = -dt_of(inc.P_l_dot, X, t, fd);
  const Vec3 magnetization_curl = -curl_of(inc.M_el_dot, X, t, fd);
  const Vec3 free_current = -value(inc.J_E_dot, X, t);

  LabeledTermSum sum;
  sum.terms = {{"magnetic_curl", magnetic_curl},
               {"convective_displacement", convective_displacement},
               {"displacement_rate", displacement_rate},
               {"polarization_rate", polarization_rate},
               {"magnetization_curl", magnetization_curl},
               {"free_current", free_current}};
  return sum;
}

LabeledTermSum incremental_ampere_terms_updated(const Scene& bias, const IncrementScene& inc,
                                                const Vec3& X, double t,
                                                const IncrementalConfig& cfg, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Motion& m = bias.motion;
  const Kinematics kin = kinematics_at(m, X, t, fd);
  const double eps0 = bias.constants.eps0;
  const double mu0 = bias.constants.mu0;
  const double div_v = trace(kin.L);
  const bool lit = cfg.literal_increment_ampere;

  const VField h_inner =
      lit ? add(add(k.B0_dotf, mul(k.divuf, k.B0_dotf)), scale(2.0, apply(k.Lf, k.B0_dotf)))
          : add(sub(apply(k.LpLTf, k.Bspatf), mul(k.divuf, k.Bspatf)), k.B0_dotf);
  const Vec3 magnetic_curl = (1.0 / mu0) * curl_of(spatial_view(h_inner, m, fd), X, t, fd);

  const VField conv = lit ? add(cross(inc.u_t, k.Espatf), cross(k.vf, k.E_hatf))
                          : add(cross(sub(inc.u_t, apply(k.Lf, k.vf)), k.Espatf),
                                cross(k.vf, k.E_hatf));
  const Vec3 convective_displacement = (-eps0) * curl_of(spatial_view(conv, m, fd), X, t, fd);

  const Vec3 E_hat = value(k.E_hatf, X, t);
  const Vec3 E_hat_t = dt_of(k.E_hatf, X, t, fd); // material rate at fixed label
  const Vec3 displacement_rate =
      lit ? (-eps0) * E_hat_t : (-eps0) * (E_hat_t + div_v * E_hat - kin.L * E_hat);

  const Vec3 P0_dot = value(k.P0_dotf, X, t);
  const Vec3 P0_dot_t = dt_of(k.P0_dotf, X, t, fd);
  const Vec3 polarization_rate = -(P0_dot_t + div_v * P0_dot - kin.L * P0_dot);

  const Vec3 magnetization_curl = -curl_of(spatial_view(k.Mel0_dotf, m, fd), X, t, fd);
  const Vec3 free_current = -value(k.JE0_dotf, X, t);

  LabeledTermSum sum;
  sum.terms = {{"magnetic_curl", magnetic_curl},
               {"convective_displacement", convective_displacement},
               {"displacement_rate", displacement_rate},
               {"polarization_rate", polarization_rate},
               {"magnetization_curl", magnetization_curl},
               {"free_current", free_current}};
  return sum;
}

ResidualReport incremental_maxwell_lagrangian(const Scene& bias, const IncrementScene& inc,
                                              const Vec3& X, double t,
                                              const IncrementalConfig& cfg, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const double eps0 = bias.constants.eps0;

  ResidualReport rep;
  rep.configuration = "lagrangian";
  rep.point = X;
  rep.time = t;

  const Ten2 gB = grad_of(inc.B_l_dot, X, t, fd);
  rep.entries.push_back(scalar_entry("gauss_magnetic", trace(gB), {gB(0, 0), gB(1, 1), gB(2, 2)}));

  const Vec3 curlE = curl_of(k.Eel_dotf, X, t, fd);
  const Vec3 B_t = dt_of(inc.B_l_dot, X, t, fd);
  rep.entries.push_back(vec_entry("faraday", curlE + B_t, {norm(curlE), norm(B_t)}));

  const double divG = div_of(k.Gdotf, X, t, fd);
  const double divP = div_of(inc.P_l_dot, X, t, fd);
  const double rho_dot = value(inc.rho_E_dot, X, t);
  rep.entries.push_back(scalar_entry("gauss_electric", eps0 * divG + divP - rho_dot,
                                     {eps0 * divG, divP, rho_dot}));

  rep.entries.push_back(sum_entry("ampere", incremental_ampere_terms_lagrangian(bias, inc, X, t,
                                                                                cfg, fd)));
  return rep;
}

ResidualReport incremental_maxwell_eulerian(const Scene& bias, const IncrementScene& inc,
                                            const Vec3& X, double t, const IncrementalConfig& cfg,
                                            const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Motion& m = bias.motion;
  const Kinematics kin = kinematics_at(m, X, t, fd);
  const double eps0 = bias.constants.eps0;
  const double div_v = trace(kin.L);

  ResidualReport rep;
  rep.configuration = "eulerian";
  rep.point = X;
  rep.time = t;

  const Ten2 gB = grad_of(spatial_view(k.B0_dotf, m, fd), X, t, fd);
  rep.entries.push_back(scalar_entry("gauss_magnetic", trace(gB), {gB(0, 0), gB(1, 1), gB(2, 2)}));

  const Vec3 curlE = curl_of(spatial_view(k.Eel0_dotf, m, fd), X, t, fd);
  const Vec3 B0_dot = value(k.B0_dotf, X, t);
  const Vec3 conv = kin.L * B0_dot - div_v * B0_dot;
  const Vec3 B0_t = dt_of(k.B0_dotf, X, t, fd); // material rate
  rep.entries.push_back(
      vec_entry("faraday", curlE - conv + B0_t, {norm(curlE), norm(conv), norm(B0_t)}));

  const double divEh = div_of(spatial_view(k.E_hatf, m, fd), X, t, fd);
  const double divP0 = div_of(spatial_view(k.P0_dotf, m, fd), X, t, fd);
  const double rho0_dot = value(k.rho0_dotf, X, t);
  rep.entries.push_back(scalar_entry("gauss_electric", eps0 * divEh + divP0 - rho0_dot,
                                     {eps0 * divEh, divP0, rho0_dot}));

  rep.entries.push_back(
      sum_entry("ampere", incremental_ampere_terms_updated(bias, inc, X, t, cfg, fd)));
  return rep;
}

// --- Incremental body force, couple, power ------------------------------------

IncrementalBodyForce incremental_body_force(const Scene& bias, const IncrementScene& inc,
                                            const Vec3& X, double t, const IncrementalConfig& cfg,
                                            const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Motion& m = bias.motion;
  const Kinematics kin = kinematics_at(m, X, t, fd);
  const double J = kin.J;
  const double jinv = 1.0 / J;
  const Ten2 F = kin.F;
  const Ten2 FinvT = transpose(kin.F_inv);
  const Ten2 L = value(k.Lf, X, t);
  const double div_u = trace(L);
  const double coef = cfg.literal_force_increment ? 2.0 : -2.0;

  // Bias values.
  const Vec3 E_l = value(bias.E_l, X, t);
  const Vec3 B_l = value(bias.B_l, X, t);
  const Vec3 P_l = value(bias.P_l, X, t);
  const Vec3 M_l = value(bias.M_l, X, t);
  const Vec3 J_E = value(bias.J_E, X, t);
  const double rho_E = value(bias.rho_E, X, t);
  const Vec3 V = kin.V;
  const Vec3 V_dot = value(k.V_dotf, X, t);
  const Vec3 u_t = value(inc.u_t, X, t);

  // Increment values.
  const Vec3 E_ld = value(inc.E_l_dot, X, t);
  const Vec3 B_ld = value(inc.B_l_dot, X, t);
  const Vec3 P_ld = value(inc.P_l_dot, X, t);
  const Vec3 M_ld = value(inc.M_l_dot, X, t);
  const Vec3 J_Ed = value(inc.J_E_dot, X, t);
  const double rho_Ed = value(inc.rho_E_dot, X, t);

  LabeledTermSum lag;
  LabeledTermSum upd;

  // Charge term: increment of J^-1 rho_E F^-T E_l.
  {
    const Vec3 W = FinvT * E_l;
    const Vec3 fl = jinv * (-div_u * rho_E * W + rho_Ed * W - rho_E * transpose_apply(L, W) +
                            rho_E * (FinvT * E_ld));
    lag.terms.push_back({"charge", fl});

    const double rho_e = jinv * rho_E;
    const double rho0d = jinv * rho_Ed;
    const Vec3 fe = -div_u * rho_e * W + rho0d * W - rho_e * transpose_apply(L, W) +
                    rho_e * (FinvT * E_ld);
    upd.terms.push_back({"charge", fe});
  }

  // Electric-gradient term: increment of J^-1 [Grad(F^-T E_l)]^T (F P_l),
  // and its spatial counterpart (grad E)^T P.
  {
    const Ten2 GW = grad_of(k.Espatf, X, t, fd); // referential gradient
    const VField Wdotf = add(neg(apply_transpose(k.Lf, k.Espatf)),
                             apply(k.FinvTf, inc.E_l_dot));
    const Ten2 GWd = grad_of(Wdotf, X, t, fd);
    const Vec3 FP = F * P_l;
    const Vec3 e1 = -jinv * transpose_apply(L, FinvT * transpose_apply(GW, FP));
    const Vec3 e2 = jinv * (FinvT * transpose_apply(GWd, FP));
    const Vec3 e3 = jinv * (FinvT * transpose_apply(GW, -div_u * FP + L * FP + F * P_ld));
    lag.terms.push_back({"electric_gradient", e1 + e2 + e3});

    const Ten2 GEs = grad_of(spatial_view(k.Espatf, m, fd), X, t, fd);
    const Ten2 GEds = grad_of(spatial_view(Wdotf, m, fd), X, t, fd);
    const Vec3 P = value(k.Pspatf, X, t);
    const Vec3 P0d = jinv * (F * P_ld);
    const Vec3 b1 = -transpose_apply(L, transpose_apply(GEs, P));
    const Vec3 b2 = transpose_apply(GEds, P);
    const Vec3 b3 = transpose_apply(GEs, -div_u * P + L * P + P0d);
    upd.terms.push_back({"electric_gradient", b1 + b2 + b3});
  }

  // Current term: increment of J^-2 (F J_l) x (F B_l) with the total current
  // J_l = J_E + rho_E V.
  {
    const Vec3 J_l = J_E + rho_E * V;
    const Vec3 J_ld = J_Ed + rho_Ed * V + rho_E * V_dot;
    const Vec3 FJ = F * J_l;
    const Vec3 FB = F * B_l;
    const Vec3 c1 = coef * div_u * jinv * jinv * cross(FJ, FB);
    const Vec3 c2 = jinv * jinv * cross(L * FJ + F * J_ld, FB);
    const Vec3 c3 = jinv * jinv * cross(FJ, L * FB + F * B_ld);
    lag.terms.push_back({"current", c1 + c2 + c3});

    const Vec3 Jt = jinv * FJ;
    const Vec3 J_l0d = jinv * (F * J_ld);
    const Vec3 B = jinv * FB;
    const Vec3 B0d = jinv * (F * B_ld);
    const Vec3 d1 = -2.0 * div_u * cross(Jt, B);
    const Vec3 d2 = cross(L * Jt + J_l0d, B);
    const Vec3 d3 = cross(Jt, L * B + B0d);
    upd.terms.push_back({"current", d1 + d2 + d3});
  }

  // Magnetic-gradient term: increment of [Grad(J^-1 F B_l)]^T (F^-T M_l) and
  // its spatial counterpart (grad B)^T M.
  {
    const Ten2 GB = grad_of(k.Bspatf, X, t, fd);
    const Ten2 GBd = grad_of(k.Bdelf, X, t, fd);
    const Vec3 Msp = FinvT * M_l;
    const Vec3 Ml0d = FinvT * M_ld;
    const Vec3 g1 = -transpose_apply(L, FinvT * transpose_apply(GB, Msp));
    const Vec3 g2 = FinvT * transpose_apply(GBd, Msp);
    const Vec3 g3 = FinvT * transpose_apply(GB, -transpose_apply(L, Msp) + FinvT * M_ld);
    lag.terms.push_back({"magnetic_gradient", g1 + g2 + g3});

    const Ten2 GBs = grad_of(spatial_view(k.Bspatf, m, fd), X, t, fd);
    const Ten2 GBds = grad_of(spatial_view(k.Bdelf, m, fd), X, t, fd);
    const Vec3 h1 = -transpose_apply(L, transpose_apply(GBs, Msp));
    const Vec3 h2 = transpose_apply(GBds, Msp);
    const Vec3 h3 = transpose_apply(GBs, -transpose_apply(L, Msp) + Ml0d);
    upd.terms.push_back({"magnetic_gradient", h1 + h2 + h3});
  }

  // Momentum-rate term: material rate of the increment of P x B.
  Vec3 momentum_rate;
  {
    const VField bracket =
        add(scale(coef, mul(k.divuf, cross(k.Pspatf, k.Bspatf))),
            add(cross(add(apply(k.Lf, k.Pspatf), k.P0_dotf), k.Bspatf),
                cross(k.Pspatf, add(apply(k.Lf, k.Bspatf), k.B0_dotf))));
    momentum_rate = dt_of(bracket, X, t, fd);
    lag.terms.push_back({"momentum_rate", momentum_rate});
    upd.terms.push_back({"momentum_rate", momentum_rate});
  }

  // Momentum-flux term: increment of the divergence of v o (P x B).
  {
    const VField wf = cross(apply(k.Ff, bias.P_l), apply(k.Ff, bias.B_l));
    const TField Wf = mul(recip(k.detf), outer(k.Vf, wf));
    const VField wdelf =
        add(cross(add(apply(k.Lf, apply(k.Ff, bias.P_l)), apply(k.Ff, inc.P_l_dot)),
                  apply(k.Ff, bias.B_l)),
            cross(apply(k.Ff, bias.P_l),
                  add(apply(k.Lf, apply(k.Ff, bias.B_l)), apply(k.Ff, inc.B_l_dot))));
    const TField Wdf = mul(recip(k.detf), add(sub(outer(k.V_dotf, wf),
                                                  mul(k.divuf, outer(k.Vf, wf))),
                                              outer(k.Vf, wdelf)));
    const Vec3 fl = -div_u * jinv * div_first(Wf, X, t, fd) + jinv * div_first(Wdf, X, t, fd);
    lag.terms.push_back({"momentum_flux", fl});

    const VField PxBf = cross(k.Pspatf, k.Bspatf);
    const VField bracket2 = add(cross(add(apply(k.Lf, k.Pspatf), k.P0_dotf), k.Bspatf),
                                cross(k.Pspatf, add(apply(k.Lf, k.Bspatf), k.B0_dotf)));
    const TField Sdf = add(sub(outer(sub(inc.u_t, apply(k.Lf, k.vf)), PxBf),
                               mul(k.divuf, outer(k.vf, PxBf))),
                           outer(k.vf, bracket2));
    const Vec3 fe = -div_u * div_first(spatial_view(outer(k.vf, PxBf), m, fd), X, t, fd) +
                    div_first(spatial_view(Sdf, m, fd), X, t, fd);
    upd.terms.push_back({"momentum_flux", fe});
  }
  (void)u_t;

  IncrementalBodyForce out;
  out.f_E_dot = std::move(lag);
  out.f_E0_dot = std::move(upd);
  return out;
}

IncrementalCouple incremental_couple(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                     double t, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Kinematics kin = kinematics_at(bias.motion, X, t, fd);
  const double jinv = 1.0 / kin.J;
  const Ten2 F = kin.F;
  const Ten2 FinvT = transpose(kin.F_inv);
  const Ten2 L = value(k.Lf, X, t);
  const double div_u = trace(L);

  const Vec3 E_l = value(bias.E_l, X, t);
  const Vec3 B_l = value(bias.B_l, X, t);
  const Vec3 P_l = value(bias.P_l, X, t);
  const Vec3 M_el = value(effective_M_field(bias), X, t);
  const Vec3 E_ld = value(inc.E_l_dot, X, t);
  const Vec3 B_ld = value(inc.B_l_dot, X, t);
  const Vec3 P_ld = value(inc.P_l_dot, X, t);
  const Vec3 M_eld = value(inc.M_el_dot, X, t);

  const Vec3 FP = F * P_l;
  const Vec3 FB = F * B_l;
  const Vec3 We = FinvT * E_l;
  const Vec3 Wm = FinvT * M_el;

  IncrementalCouple out;
  out.L_E_dot = -div_u * jinv * (cross(FP, We) + cross(Wm, FB)) +
                jinv * cross(L * FP + F * P_ld, We) +
                jinv * cross(FP, -transpose_apply(L, We) + FinvT * E_ld) +
                jinv * cross(Wm, L * FB + F * B_ld) +
                jinv * cross(-transpose_apply(L, Wm) + FinvT * M_eld, FB);

  const Vec3 P = jinv * FP;
  const Vec3 B = jinv * FB;
  const Vec3 P0d = jinv * (F * P_ld);
  const Vec3 B0d = jinv * (F * B_ld);
  const Vec3 E0d = FinvT * E_ld;
  const Vec3 Mel0d = FinvT * M_eld;
  out.L_E0_dot = -div_u * (cross(P, We) + cross(Wm, B)) + cross(L * P + P0d, We) +
                 cross(P, -transpose_apply(L, We) + E0d) + cross(Wm, L * B + B0d) +
                 cross(-transpose_apply(L, Wm) + Mel0d, B);
  return out;
}

IncrementalPower incremental_power(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                   double t, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Kinematics kin = kinematics_at(bias.motion, X, t, fd);
  const double J = kin.J;
  const double jinv = 1.0 / J;
  const Ten2 F = kin.F;
  const Ten2 FinvT = transpose(kin.F_inv);
  const Ten2 L = value(k.Lf, X, t);
  const double div_u = trace(L);

  const Vec3 E_el = value(effective_E_field(bias), X, t);
  const Vec3 M_el = value(effective_M_field(bias), X, t);
  const Vec3 J_E = value(bias.J_E, X, t);
  const Vec3 J_Ed = value(inc.J_E_dot, X, t);
  const Vec3 M_eld = value(inc.M_el_dot, X, t);
  const Vec3 Eel_dot = value(k.Eel_dotf, X, t);

  const Vec3 E_e = FinvT * E_el; // spatial effective electric field
  const Vec3 dEe = -transpose_apply(L, E_e) + FinvT * Eel_dot;
  const Vec3 M_e = FinvT * M_el;

  // Polarization per unit mass as a composite (shared by both displays).
  const VField Pcompf = scale(1.0 / bias.rho_r, apply(k.Ff, bias.P_l));
  const VField Pdelcompf = scale(1.0 / bias.rho_r, add(apply(k.Lf, apply(k.Ff, bias.P_l)),
                                                       apply(k.Ff, inc.P_l_dot)));
  const Vec3 Pc_dot = dt_of(Pcompf, X, t, fd);
  const Vec3 Pdel_dot = dt_of(Pdelcompf, X, t, fd);
  const Vec3 B_dot = dt_of(k.Bspatf, X, t, fd);   // material rate of spatial B
  const Vec3 Bdel_dot = dt_of(k.Bdelf, X, t, fd); // material rate of its increment

  IncrementalPower out;
  {
    const double joule = dot(L * (F * J_E) + F * J_Ed, E_e) + dot(F * J_E, dEe);
    const double pol = bias.rho_r * dot(Pdel_dot, E_e) + bias.rho_r * dot(Pc_dot, dEe);
    const Vec3 dMe = div_u * M_e - transpose_apply(L, M_e) + FinvT * M_eld;
    const double mag = -J * dot(dMe, B_dot) - J * dot(M_e, Bdel_dot);
    out.w_E_dot.terms = {{"joule", joule}, {"polarization_work", pol},
                         {"magnetization_work", mag}};
  }
  {
    const double rho = bias.rho_r * jinv;
    const Vec3 J_e = jinv * (F * J_E);
    const Vec3 J_el0d = jinv * (F * J_Ed);
    const Vec3 Eel0d = FinvT * Eel_dot;
    const Vec3 dEe0 = -transpose_apply(L, E_e) + Eel0d;
    const double joule = dot(L * J_e + J_el0d, E_e) + dot(J_e, dEe0);
    const double pol = rho * dot(Pdel_dot, E_e) + rho * dot(Pc_dot, dEe0);
    const Vec3 Mel0d = FinvT * M_eld;
    const Vec3 dMe0 = div_u * M_e - transpose_apply(L, M_e) + Mel0d;
    const double mag = -dot(dMe0, B_dot) - dot(M_e, Bdel_dot);
    out.w_E0_dot.terms = {{"joule", joule}, {"polarization_work", pol},
                          {"magnetization_work", mag}};
  }
  return out;
}

// --- Incremental momentum and energy -------------------------------------------

ResidualReport incremental_momentum_residuals(const Scene& bias, const IncrementScene& inc,
                                              const Vec3& X, double t,
                                              const IncrementalConfig& cfg, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Motion& m = bias.motion;
  const Kinematics kin = kinematics_at(m, X, t, fd);
  const double rho = bias.rho_r / kin.J;
  const Ten2 L = value(k.Lf, X, t);
  const double div_u = trace(L);
  const Vec3 u_tt = dt_of(inc.u_t, X, t, fd);

  const IncrementalBodyForce bf = incremental_body_force(bias, inc, X, t, cfg, fd);
  const IncrementalCouple cpl = incremental_couple(bias, inc, X, t, fd);

  ResidualReport rep;
  rep.configuration = "both";
  rep.point = X;
  rep.time = t;

  const TField T0_dotf = mul(k.jinvf, matmul(k.Ff, inc.T_dot));
  const Vec3 div_T0d = div_first(spatial_view(T0_dotf, m, fd), X, t, fd);
  const Vec3 f_e = em_body_force(bias, X, t, fd);
  const Vec3 f_e_dot = bf.f_E0_dot.total();
  const Vec3 lin_e = div_T0d + div_u * f_e + f_e_dot - rho * u_tt;
  rep.entries.push_back(vec_entry("linear_eulerian", lin_e,
                                  {norm(div_T0d), std::abs(div_u) * norm(f_e),
                                   bf.f_E0_dot.scale(), rho * norm(u_tt)}));

  const Ten2 tau = value(cauchy_stress_field(bias), X, t);
  const Ten2 T0_dot = value(T0_dotf, X, t);
  const Vec3 perm_e = perm_contract(L * tau + T0_dot);
  const Vec3 L_e = em_body_couple(bias, X, t, fd);
  const Vec3 ang_e = perm_e + div_u * L_e + cpl.L_E0_dot;
  rep.entries.push_back(vec_entry("angular_eulerian", ang_e,
                                  {norm(perm_e), std::abs(div_u) * norm(L_e),
                                   norm(cpl.L_E0_dot)}));

  const Vec3 div_Td = div_first(inc.T_dot, X, t, fd);
  const Vec3 f_E = em_body_force_lagrangian(bias, X, t, fd);
  const Vec3 f_E_dot = bf.f_E_dot.total();
  const Vec3 lin_l = div_Td + kin.J * div_u * f_E + kin.J * f_E_dot - bias.rho_r * u_tt;
  rep.entries.push_back(vec_entry("linear_lagrangian", lin_l,
                                  {norm(div_Td), kin.J * std::abs(div_u) * norm(f_E),
                                   kin.J * bf.f_E_dot.scale(), bias.rho_r * norm(u_tt)}));

  const Ten2 T = value(bias.T, X, t);
  const Ten2 T_dot = value(inc.T_dot, X, t);
  const Vec3 perm_l = perm_contract(L * (kin.F * T) + kin.F * T_dot);
  const Vec3 L_E = em_body_couple_lagrangian(bias, X, t, fd);
  const Vec3 ang_l = perm_l + kin.J * div_u * L_E + kin.J * cpl.L_E_dot;
  rep.entries.push_back(vec_entry("angular_lagrangian", ang_l,
                                  {norm(perm_l), kin.J * std::abs(div_u) * norm(L_E),
                                   kin.J * norm(cpl.L_E_dot)}));
  return rep;
}

ResidualReport incremental_heat_residual(const Scene& bias, const IncrementScene& inc,
                                         const Vec3& X, double t, const IncrementalConfig& cfg,
                                         const FdConfig& fd) {
  (void)cfg;
  const Kit k = make_kit(bias, inc, fd);
  const Motion& m = bias.motion;
  const Kinematics kin = kinematics_at(m, X, t, fd);
  const double rho = bias.rho_r / kin.J;
  const Ten2 L = value(k.Lf, X, t);

  const IncrementalPower pw = incremental_power(bias, inc, X, t, fd);

  ResidualReport rep;
  rep.configuration = "both";
  rep.point = X;
  rep.time = t;

  const TField T0_dotf = mul(k.jinvf, matmul(k.Ff, inc.T_dot));
  const Ten2 tau = value(cauchy_stress_field(bias), X, t);
  const Ten2 T0_dot = value(T0_dotf, X, t);
  const Ten2 grad_x_ut = value(inc.grad_u_t, X, t) * kin.F_inv;
  const double q_vol0_dot = value(k.qvol0_dotf, X, t);
  const double power_e = double_contract(T0_dot, kin.L) + double_contract(tau, grad_x_ut);
  const double div_q0d = div_of(spatial_view(k.q0_dotf, m, fd), X, t, fd);
  const double storage_e =
      rho * bias.c_p * dt_of(sub(k.theta0_dotf, mul(k.divuf, k.thetaf)), X, t, fd);
  const double r_e = q_vol0_dot + pw.w_E0_dot.total() + power_e - div_q0d - storage_e;
  rep.entries.push_back(scalar_entry("heat_eulerian", r_e,
                                     {q_vol0_dot, pw.w_E0_dot.scale(),
                                      double_contract(T0_dot, kin.L),
                                      double_contract(tau, grad_x_ut), div_q0d, storage_e}));

  const Ten2 T = value(bias.T, X, t);
  const Ten2 T_dot = value(inc.T_dot, X, t);
  const Ten2 grad_v = F_dot_of(m, X, t, fd); // Grad of the bias velocity
  const Ten2 grad_ut = value(inc.grad_u_t, X, t);
  double power_l = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) power_l += T_dot(a, i) * grad_v(i, a) + T(a, i) * grad_ut(i, a);
  const double q_vol_l_dot = value(inc.q_vol_l_dot, X, t);
  const double div_q_ld = div_of(inc.q_l_dot, X, t, fd);
  const double storage_l =
      bias.rho_r * bias.c_p *
      dt_of(sub(mul(k.jinvf, inc.theta_l_dot), mul(k.jinvf, mul(k.divuf, bias.theta_l))), X, t,
            fd);
  const double r_l = q_vol_l_dot + pw.w_E_dot.total() + power_l - div_q_ld - storage_l;
  rep.entries.push_back(scalar_entry("heat_lagrangian", r_l,
                                     {q_vol_l_dot, pw.w_E_dot.scale(), power_l, div_q_ld,
                                      storage_l}));
  (void)L;
  return rep;
}

// --- Incremental constitutive and conduction laws ------------------------------

IncrementalResponse incremental_constitutive(const ModuliSet& m, const StateRates& r) {
  IncrementalResponse out;
  out.T_dot = stress_rate(m, r);
  out.P_l_dot = polarization_rate(m, r);
  out.M_el_dot = magnetization_rate(m, r);
  return out;
}

IncrementalResponseUpdated incremental_constitutive_updated(const UpdatedModuliSet& m,
                                                            const UpdatedStateRates& r) {
  IncrementalResponseUpdated out;
  out.T0_dot = stress_rate_updated(m, r);
  out.P_l0_dot = polarization_rate_updated(m, r);
  out.M_el0_dot = magnetization_rate_updated(m, r);
  return out;
}

IncrementalConduction incremental_conduction(const Scene& bias, const IncrementScene& inc,
                                             const Vec3& X, double t,
                                             const IncrementalConfig& cfg, const FdConfig& fd) {
  const Kit k = make_kit(bias, inc, fd);
  const Motion& m = bias.motion;
  const Ten2 L = value(k.Lf, X, t);
  const double div_u = trace(L);
  const Ten2 kappa = bias.cond.kappa;
  const Ten2 xi = bias.cond.xi;

  const Vec3 g_theta = grad_of(spatial_view(k.thetaf, m, fd), X, t, fd);
  const SField theta_del = sub(k.theta0_dotf, mul(k.divuf, k.thetaf));
  const Vec3 g_theta_del = grad_of(spatial_view(theta_del, m, fd), X, t, fd);

  IncrementalConduction out;
  if (cfg.literal_conduction_increment) {
    out.q_l0_dot = -div_u * (kappa * g_theta) + 2.0 * (L * (kappa * g_theta)) -
                   kappa * g_theta_del;
  } else {
    out.q_l0_dot = -(div_u * (kappa * g_theta) - L * (kappa * g_theta) -
                     kappa * transpose_apply(L, g_theta)) -
                   kappa * g_theta_del;
  }

  const Vec3 E = value(k.Espatf, X, t);
  const Vec3 E0_dot = value(k.E0_dotf, X, t);
  if (cfg.literal_conduction_increment) {
    out.J_l0_dot = xi * (div_u * E - L * E - transpose_apply(L, E) + E0_dot);
  } else {
    out.J_l0_dot = div_u * (xi * E) - L * (xi * E) - xi * transpose_apply(L, E) + xi * E0_dot;
  }
  return out;
}

void attach_incremental_constitutive(IncrementScene& inc, const Scene& bias, const FdConfig& fd) {
  if (!bias.has_model) {
    throw Error("attach_incremental_constitutive: bias scene has no material model");
  }

  // Capture the bias arguments and increment rates by value so the installed
  // fields stay valid independently of the inputs.
  struct Core {
    FreeEnergyModel model;
    TField Ff;
    VField E_elf, B_lf;
    SField theta_lf;
    TField F_dotf;
    VField Eel_dotf, B_l_dotf;
    SField theta_l_dotf;

    MaterialState state(const Vec3& X, double t) const {
      MaterialState s;
      s.F = value(Ff, X, t);
      s.E_el = value(E_elf, X, t);
      s.B_l = value(B_lf, X, t);
      s.theta_l = value(theta_lf, X, t);
      return s;
    }
    StateRates rates(const Vec3& X, double t) const {
      StateRates r;
      r.F_dot = value(F_dotf, X, t);
      r.E_el_dot = value(Eel_dotf, X, t);
      r.B_l_dot = value(B_l_dotf, X, t);
      r.theta_l_dot = value(theta_l_dotf, X, t);
      return r;
    }
  };

  Core core;
  core.model = bias.model;
  core.Ff = deformation_field(bias.motion, fd);
  core.E_elf = effective_E_field(bias);
  core.B_lf = bias.B_l;
  core.theta_lf = bias.theta_l;
  core.F_dotf = inc.grad_u;

  const TField Finvf = inverse_field(core.Ff);
  const VField vf = velocity_field(bias.motion, fd);
  const TField Lf = matmul(inc.grad_u, Finvf);
  const VField Vf = apply(Finvf, vf);
  const VField V_dotf = apply(Finvf, sub(inc.u_t, apply(Lf, vf)));
  core.Eel_dotf = add(inc.E_l_dot, add(cross(V_dotf, bias.B_l), cross(Vf, inc.B_l_dot)));
  core.B_l_dotf = inc.B_l_dot;
  core.theta_l_dotf = inc.theta_l_dot;

  TField Td;
  Td.chart = kRef;
  Td.label_param = true;
  Td.val = [core](const Vec3& X, double t) {
    return stress_rate(compute_moduli(core.model, core.state(X, t)), core.rates(X, t));
  };
  inc.T_dot = Td;

  VField Pd;
  Pd.chart = kRef;
  Pd.label_param = true;
  Pd.val = [core](const Vec3& X, double t) {
    return polarization_rate(compute_moduli(core.model, core.state(X, t)), core.rates(X, t));
  };
  inc.P_l_dot = Pd;

  VField Md;
  Md.chart = kRef;
  Md.label_param = true;
  Md.val = [core](const Vec3& X, double t) {
    return magnetization_rate(compute_moduli(core.model, core.state(X, t)), core.rates(X, t));
  };
  inc.M_el_dot = Md;

  // M_l_dot follows from the effective-magnetization increment:
  //   M_l_dot = M_el_dot - V_dot x P_l - V x P_l_dot.
  inc.M_l_dot = sub(inc.M_el_dot, add(cross(V_dotf, bias.P_l), cross(Vf, inc.P_l_dot)));
}

void attach_incremental_conduction(IncrementScene& inc, const Scene& bias,
                                   const IncrementalConfig& cfg, bool close_free_current,
                                   const FdConfig& fd) {
  const Scene b = bias;
  const IncrementScene snap = inc;

  VField qd;
  qd.chart = kRef;
  qd.label_param = true;
  qd.val = [b, snap, cfg, fd](const Vec3& X, double t) {
    const Kinematics k = kinematics_at(b.motion, X, t, fd);
    const IncrementalConduction ic = incremental_conduction(b, snap, X, t, cfg, fd);
    return k.J * (k.F_inv * ic.q_l0_dot);
  };
  inc.q_l_dot = qd;

  if (close_free_current) {
    VField Jd;
    Jd.chart = kRef;
    Jd.label_param = true;
    Jd.val = [b, snap, cfg, fd](const Vec3& X, double t) {
      const Kinematics k = kinematics_at(b.motion, X, t, fd);
      const IncrementalConduction ic = incremental_conduction(b, snap, X, t, cfg, fd);
      const Ten2 grad_u = value(snap.grad_u, X, t);
      const Ten2 L = grad_u * k.F_inv;
      const Vec3 u_t = value(snap.u_t, X, t);
      const Vec3 V_dot = k.F_inv * (u_t - L * k.v);
      const double rho_E = value(b.rho_E, X, t);
      const double rho_E_dot = value(snap.rho_E_dot, X, t);
      return k.J * (k.F_inv * ic.J_l0_dot) - rho_E_dot * k.V - rho_E * V_dot;
    };
    inc.J_E_dot = Jd;
  }
}

ResidualReport assembled_governing_residuals(const Scene& bias, const IncrementScene& inc,
                                             const Vec3& X, double t,
                                             const IncrementalConfig& cfg, const FdConfig& fd) {
  IncrementScene closed = inc;
  attach_incremental_constitutive(closed, bias, fd);
  attach_incremental_conduction(closed, bias, cfg, false, fd);

  const ResidualReport mx = incremental_maxwell_eulerian(bias, closed, X, t, cfg, fd);
  const ResidualReport mom = incremental_momentum_residuals(bias, closed, X, t, cfg, fd);
  const ResidualReport ht = incremental_heat_residual(bias, closed, X, t, cfg, fd);

  ResidualReport rep;
  rep.configuration = "assembled";
  rep.point = X;
  rep.time = t;
  for (const ResidualEntry& e : mx.entries) rep.entries.push_back(e);

  ResidualEntry lin = mom.entry("linear_eulerian");
  lin.id = "linear_momentum";
  rep.entries.push_back(lin);

  ResidualEntry ang = mom.entry("angular_eulerian");
  ang.id = "angular_momentum";
  rep.entries.push_back(ang);

  ResidualEntry heat = ht.entry("heat_eulerian");
  heat.id = "heat";
  rep.entries.push_back(heat);
  return rep;
}

// --- Rigid regions and interfaces ----------------------------------------------

ResidualReport region_incremental_residual(const RegionScene& r, Region region, const Vec3& x,
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
  if (region == Region::Coil) {
    rep.entries.push_back(scalar_entry("gauss_electric", r.eps_r * trace(gE),
                                       {r.eps_r * gE(0, 0), r.eps_r * gE(1, 1),
                                        r.eps_r * gE(2, 2)}));
  } else {
    rep.entries.push_back(scalar_entry("gauss_electric", trace(gE),
                                       {gE(0, 0), gE(1, 1), gE(2, 2)}));
  }

  const Vec3 curlB = curl_of(r.B, x, t, fd);
  const Vec3 E_t = dt_of(r.E, x, t, fd);
  if (region == Region::Coil) {
    const Vec3 Jd = value(r.Jfree, x, t);
    const Vec3 res = (1.0 / (mu0 * r.mu_r)) * curlB - eps0 * r.eps_r * E_t - Jd;
    rep.entries.push_back(vec_entry(
        "ampere", res, {norm(curlB) / (mu0 * r.mu_r), eps0 * r.eps_r * norm(E_t), norm(Jd)}));
  } else {
    const Vec3 res = curlB - eps0 * mu0 * E_t;
    rep.entries.push_back(vec_entry("ampere", res, {norm(curlB), eps0 * mu0 * norm(E_t)}));
  }
  return rep;
}

ResidualReport incremental_boundary_residuals_lagrangian(
    const PointState& bias, const VacuumState& vac, const SurfaceData& surf,
    const IncrementalState& ist, const VacuumIncrements& vinc, const SurfaceIncrements& sinc,
    const Constants& c, const IncrementalConfig& cfg) {
  require_unit(surf.N, "body interface");
  const Kinematics& k = bias.kin;
  const EMStateLagrangian& l = bias.eml;
  const Ten2& L = ist.L;
  const double div_u = ist.div_u;
  const bool lit = cfg.literal_L_inverse;
  const Ten2 Li = lit ? inverse(L) : Ten2{};

  ResidualReport rep;
  rep.configuration = "lagrangian";
  rep.point = k.x;

  // Tangential electric field increment.
  {
    const Vec3 star = lit ? transpose_apply(k.F, L * vac.E_star)
                          : transpose_apply(k.F, transpose_apply(L, vac.E_star));
    const Vec3 star_dot = transpose_apply(k.F, vinc.E_star_dot);
    const Vec3 jump = cross(surf.N, ist.E_el_dot - star - star_dot);
    rep.entries.push_back(vec_entry("tangential_e", jump,
                                    {norm(cross(surf.N, ist.E_el_dot)),
                                     norm(cross(surf.N, star)), norm(cross(surf.N, star_dot))}));
  }

  // Normal induction increment.
  {
    const Vec3 vol = k.J * div_u * (k.F_inv * vac.B_star);
    const Vec3 conv = lit ? -(k.J * (k.F_inv * (Li * vac.B_star)))
                          : k.J * (k.F_inv * (L * vac.B_star));
    const Vec3 star_dot = k.J * (k.F_inv * vinc.B_star_dot);
    const double r = dot(surf.N, ist.lag.B_l_dot - vol + conv - star_dot);
    rep.entries.push_back(scalar_entry("normal_b", r,
                                       {dot(surf.N, ist.lag.B_l_dot), dot(surf.N, vol),
                                        dot(surf.N, conv), dot(surf.N, star_dot)}));
  }

  // Normal electric displacement increment against the surface charge rate.
  {
    const Vec3 Ejump = l.E_l - transpose_apply(k.F, vac.E_star);
    const Vec3 dotted = ist.lag.E_l_dot - transpose_apply(k.F, transpose_apply(L, vac.E_star)) -
                        transpose_apply(k.F, vinc.E_star_dot);
    const Vec3 d1 = c.eps0 * k.J * (k.c_inv * dotted);
    const Vec3 d2 = c.eps0 * k.J * div_u * (k.c_inv * Ejump);
    const Vec3 d3 =
        lit ? c.eps0 * k.J *
                  (k.F_inv * (Li * transpose_apply(k.F_inv, Ejump)) +
                   k.F_inv * transpose_apply(Li, transpose_apply(k.F_inv, Ejump)))
            : -(c.eps0 * k.J *
                (k.F_inv * ((L + transpose(L)) * transpose_apply(k.F_inv, Ejump))));
    const double r = dot(surf.N, d1 + d2 + d3 + ist.lag.P_l_dot) - sinc.sigma_E_dot;
    rep.entries.push_back(scalar_entry("normal_d", r,
                                       {dot(surf.N, d1), dot(surf.N, d2), dot(surf.N, d3),
                                        dot(surf.N, ist.lag.P_l_dot), sinc.sigma_E_dot}));
  }

  // Tangential magnetic field increment against the surface current rate.
  {
    const double mu0i = 1.0 / c.mu0;
    const double jinv = 1.0 / k.J;
    const Vec3 h1 = mu0i * jinv * (k.c * ist.lag.B_l_dot);
    const Vec3 h2 = mu0i * jinv * div_u * (k.c * l.B_l);
    const Vec3 h3 =
        mu0i * jinv * transpose_apply(k.F, (L + transpose(L)) * (k.F * l.B_l));
    const Vec3 h4 = ist.lag.M_l_dot;
    const Vec3 D0 = c.eps0 * k.J * (k.c_inv * l.E_l) + l.P_l;
    const Vec3 h5 = cross(ist.V_dot, D0);
    // Increment of the convective term V x (eps0 J c^-1 E_l + P_l).
    Vec3 h6;
    if (lit) {
      const Vec3 inner = k.J * div_u * (k.c_inv * l.E_l) + k.J * (k.c_inv * ist.lag.E_l_dot) +
                         k.J * (k.F_inv * (Li * transpose_apply(k.F_inv, l.E_l)) +
                                k.F_inv * transpose_apply(Li, transpose_apply(k.F_inv, l.E_l))) +
                         ist.lag.P_l_dot;
      h6 = c.eps0 * cross(k.V, inner);
    } else {
      const Vec3 G_dot = k.J * div_u * (k.c_inv * l.E_l) -
                         k.J * (k.F_inv * ((L + transpose(L)) * transpose_apply(k.F_inv, l.E_l))) +
                         k.J * (k.c_inv * ist.lag.E_l_dot);
      h6 = cross(k.V, c.eps0 * G_dot + ist.lag.P_l_dot);
    }
    const Vec3 h7 = mu0i * transpose_apply(k.F, transpose_apply(L, vac.B_star));
    const Vec3 h8 = mu0i * transpose_apply(k.F, vinc.B_star_dot);
    const Vec3 rhs = sinc.K_l_dot - sinc.sigma_E_dot * surf.V_s - surf.sigma_E * sinc.V_s_dot;
    const Vec3 jump = cross(surf.N, h1 - h2 + h3 - h4 - h5 - h6 - h7 - h8) - rhs;
    rep.entries.push_back(vec_entry("tangential_h", jump,
                                    {norm(h1), norm(h2), norm(h3), norm(h4), norm(h5), norm(h6),
                                     norm(h7), norm(h8), norm(rhs)}));
  }
  return rep;
}

ResidualReport incremental_boundary_residuals_eulerian(
    const PointState& bias, const VacuumState& vac, const SurfaceData& surf,
    const IncrementalState& ist, const VacuumIncrements& vinc, const SurfaceIncrements& sinc,
    const Constants& c, const IncrementalConfig& cfg) {
  require_unit(surf.n, "body interface");
  const Kinematics& k = bias.kin;
  const Ten2& L = ist.L;
  const double div_u = ist.div_u;
  const bool lit = cfg.literal_L_inverse;
  const Ten2 Li = lit ? inverse(L) : Ten2{};

  // Pushed-forward surface-source increments (bias area map).
  const double ar = surf.area_ratio; // da/dA
  const Vec3 K_l0_dot = (1.0 / ar) * (k.F * sinc.K_l_dot);
  const double sigma_E0_dot = sinc.sigma_E_dot / ar;
  const Vec3 v_s = k.F * surf.V_s;

  // Spatial bias fields at the wall.
  const Vec3 E = bias.em.E;
  const Vec3 B = bias.em.B;
  const Vec3 P = bias.em.P;
  const Vec3 u_t = ist.u_t;
  const Vec3 w = u_t - L * k.v; // increment of the velocity seen spatially

  ResidualReport rep;
  rep.configuration = "eulerian";
  rep.point = k.x;

  // Tangential electric field increment.
  {
    const Vec3 inside = ist.upd.E_l0_dot + cross(w, B) + cross(k.v, ist.upd.B_l0_dot);
    const Vec3 star = lit ? L * vac.E_star : transpose_apply(L, vac.E_star);
    const Vec3 jump = cross(surf.n, inside - star - vinc.E_star_dot);
    rep.entries.push_back(vec_entry("tangential_e", jump,
                                    {norm(cross(surf.n, inside)), norm(cross(surf.n, star)),
                                     norm(cross(surf.n, vinc.E_star_dot))}));
  }

  // Normal induction increment.
  {
    const Vec3 vol = div_u * vac.B_star;
    const Vec3 conv = lit ? -(Li * vac.B_star) : L * vac.B_star;
    const double r = dot(surf.n, ist.upd.B_l0_dot - vol + conv - vinc.B_star_dot);
    rep.entries.push_back(scalar_entry("normal_b", r,
                                       {dot(surf.n, ist.upd.B_l0_dot), dot(surf.n, vol),
                                        dot(surf.n, conv), dot(surf.n, vinc.B_star_dot)}));
  }

  // Normal electric displacement increment against the surface charge rate.
  {
    const Vec3 Ejump = E - vac.E_star;
    const Vec3 dotted = ist.upd.E_l0_dot - transpose_apply(L, vac.E_star) - vinc.E_star_dot;
    const Vec3 d1 = c.eps0 * dotted;
    const Vec3 d2 = c.eps0 * div_u * Ejump;
    const Vec3 d3 = lit ? c.eps0 * ((Li + transpose(Li)) * Ejump)
                        : -(c.eps0 * ((L + transpose(L)) * Ejump));
    const double r = dot(surf.n, d1 + d2 + d3 + ist.upd.P_l0_dot) - sigma_E0_dot;
    rep.entries.push_back(scalar_entry("normal_d", r,
                                       {dot(surf.n, d1), dot(surf.n, d2), dot(surf.n, d3),
                                        dot(surf.n, ist.upd.P_l0_dot), sigma_E0_dot}));
  }

  // Tangential magnetic field increment against the surface current rate.
  {
    const double mu0i = 1.0 / c.mu0;
    const Vec3 h1 = mu0i * ist.upd.B_l0_dot;
    const Vec3 h2 = mu0i * div_u * B;
    const Vec3 h3 = mu0i * ((L + transpose(L)) * B);
    const Vec3 h4 = ist.upd.M_l0_dot;
    const Vec3 h5 = cross(w, c.eps0 * E + P);
    Vec3 h6;
    if (lit) {
      const Vec3 inner = div_u * E + ist.upd.E_l0_dot + (Li + transpose(Li)) * E +
                         ist.upd.P_l0_dot;
      h6 = c.eps0 * cross(k.v, inner);
    } else {
      h6 = cross(k.v, c.eps0 * ist.E_hat + ist.upd.P_l0_dot);
    }
    const Vec3 h7 = mu0i * transpose_apply(L, vac.B_star);
    const Vec3 h8 = mu0i * vinc.B_star_dot;
    const Vec3 rhs = lit ? K_l0_dot + Li * surf.K + surf.sigma_e * (L * v_s)
                         : K_l0_dot - sigma_E0_dot * v_s - surf.sigma_e * (k.F * sinc.V_s_dot);
    const Vec3 jump = cross(surf.n, h1 - h2 + h3 - h4 - h5 - h6 - h7 - h8) - rhs;
    rep.entries.push_back(vec_entry("tangential_h", jump,
                                    {norm(h1), norm(h2), norm(h3), norm(h4), norm(h5), norm(h6),
                                     norm(h7), norm(h8), norm(rhs)}));
  }
  return rep;
}

ResidualReport coil_incremental_boundary_residuals(const Vec3& E_dot, const Vec3& B_dot,
                                                   const VacuumIncrements& vinc,
                                                   const SurfaceData& surf, double eps_r,
                                                   double mu_r) {
  require_unit(surf.n, "coil interface");
  ResidualReport rep;
  rep.configuration = "coil";

  rep.entries.push_back(vec_entry("tangential_e", cross(surf.n, E_dot - vinc.E_star_dot),
                                  {norm(E_dot), norm(vinc.E_star_dot)}));
  rep.entries.push_back(scalar_entry("normal_d", dot(surf.n, eps_r * E_dot - vinc.E_star_dot),
                                     {eps_r * dot(surf.n, E_dot),
                                      dot(surf.n, vinc.E_star_dot)}));
  rep.entries.push_back(vec_entry("tangential_h",
                                  cross(surf.n, (1.0 / mu_r) * B_dot - vinc.B_star_dot),
                                  {norm(B_dot) / mu_r, norm(vinc.B_star_dot)}));
  rep.entries.push_back(scalar_entry("normal_b", dot(surf.n, B_dot - vinc.B_star_dot),
                                     {dot(surf.n, B_dot), dot(surf.n, vinc.B_star_dot)}));
  return rep;
}

} // namespace emte
