// SPDX-License-Identifier: MIT
#include "emte/constitutive.hpp"

#include <cmath>

#include "emte/error.hpp"

namespace emte {

namespace {

// ---------------------------------------------------------------------------
// Finite-difference fallback machinery.
//
// The energy arguments are flattened into 16 coordinates:
//   0..8   F(i,a) row-major (k = 3 i + a)
//   9..11  E_el
//   12..14 B_l
//   15     theta_l
// ---------------------------------------------------------------------------

constexpr int kNumCoords = 16;

void shift_coord(MaterialState& s, int k, double dv) {
  if (k < 9) {
    s.F(k / 3, k % 3) += dv;
  } else if (k < 12) {
    s.E_el[k - 9] += dv;
  } else if (k < 15) {
    s.B_l[k - 12] += dv;
  } else {
    s.theta_l += dv;
  }
}

double coord_scale(const MaterialState& s, int k) {
  if (k < 9) return 1.0;
  if (k < 12) return std::max(norm_inf(s.E_el), 1.0);
  if (k < 15) return std::max(norm_inf(s.B_l), 1.0);
  return std::max(std::abs(s.theta_l), 1.0);
}

double eval_phi(const FreeEnergyModel& m, const MaterialState& s) {
  const double v = m.phi(s);
  if (!std::isfinite(v)) throw Error("free energy not finite on difference stencil");
  return v;
}

// Fourth-order central first difference in coordinate k at step h.
double fd_first_once(const FreeEnergyModel& m, const MaterialState& s, int k, double h) {
  auto at = [&](double dv) {
    MaterialState t = s;
    shift_coord(t, k, dv);
    return eval_phi(m, t);
  };
  // Pairwise antisymmetric differences so a direction the energy does not
  // depend on yields exactly zero.
  return (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
}

double fd_first(const FreeEnergyModel& m, const MaterialState& s, int k) {
  double h = m.steps.h_first * coord_scale(s, k);
  if (!m.steps.richardson) return fd_first_once(m, s, k, h);
  h *= 100.0; // widen so the extrapolation is not dominated by round-off
  const double dh = fd_first_once(m, s, k, h);
  const double dh2 = fd_first_once(m, s, k, 0.5 * h);
  return (16.0 * dh2 - dh) / 15.0;
}

// Fourth-order mixed second difference: the order-4 first-difference stencil
// composed with itself, one copy per coordinate.  Works for k == l as well
// (the composition is then a valid one-dimensional second-derivative rule).
double fd_second_once(const FreeEnergyModel& m, const MaterialState& s, int k, int l,
                      double hk, double hl) {
  static constexpr int off[4] = {-2, -1, 1, 2};
  static constexpr double w[4] = {1.0, -8.0, 8.0, -1.0};
  double acc = 0.0;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      MaterialState t = s;
      shift_coord(t, k, off[p] * hk);
      shift_coord(t, l, off[q] * hl);
      acc += w[p] * w[q] * eval_phi(m, t);
    }
  }
  return acc / (144.0 * hk * hl);
}

double fd_second(const FreeEnergyModel& m, const MaterialState& s, int k, int l) {
  double base = m.steps.h_second;
  if (m.steps.richardson) base *= 20.0; // widen so extrapolation beats round-off
  const double hk = base * coord_scale(s, k);
  const double hl = base * coord_scale(s, l);
  if (!m.steps.richardson) return fd_second_once(m, s, k, l, hk, hl);
  const double dh = fd_second_once(m, s, k, l, hk, hl);
  const double dh2 = fd_second_once(m, s, k, l, 0.5 * hk, 0.5 * hl);
  return (16.0 * dh2 - dh) / 15.0;
}

EnergyFirstDerivs fd_first_derivs(const FreeEnergyModel& m, const MaterialState& s) {
  EnergyFirstDerivs d;
  for (int k = 0; k < kNumCoords; ++k) {
    const double v = fd_first(m, s, k);
    if (k < 9) {
      d.dF(k % 3, k / 3) = v; // derivative wrt F(i,a) lands in dF(a,i)
    } else if (k < 12) {
      d.dE[k - 9] = v;
    } else if (k < 15) {
      d.dB[k - 12] = v;
    } else {
      d.dtheta = v;
    }
  }
  return d;
}

ModuliSet fd_moduli(const FreeEnergyModel& m, const MaterialState& s) {
  double second[kNumCoords][kNumCoords];
  for (int k = 0; k < kNumCoords; ++k) {
    for (int l = k; l < kNumCoords; ++l) {
      const double v = fd_second(m, s, k, l);
      second[k][l] = v;
      second[l][k] = v;
    }
  }
  ModuliSet mod;
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) {
      const int kF = 3 * i + a;
      for (int j = 0; j < 3; ++j)
        for (int b = 0; b < 3; ++b) mod.AA.at(a, i, b, j) = second[kF][3 * j + b];
      for (int b = 0; b < 3; ++b) {
        mod.BB.at(a, i, b) = second[kF][9 + b];
        mod.CC.at(a, i, b) = second[kF][12 + b];
      }
      mod.DD(a, i) = second[kF][15];
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      mod.GG(a, b) = second[9 + a][9 + b];
      mod.HH(a, b) = second[9 + a][12 + b];
      mod.MM(a, b) = second[12 + a][12 + b];
    }
    mod.II[a] = second[9 + a][15];
    mod.NN[a] = second[12 + a][15];
  }
  mod.FF = transpose3(mod.BB);
  mod.KK = transpose3(mod.CC);
  mod.LL = transpose(mod.HH);
  return mod;
}

void check_state(const FreeEnergyModel& m, const MaterialState& s) {
  if (!m.phi) throw Error("material model has no energy evaluator");
  const double J = det(s.F);
  if (!(J > 0.0)) throw Error("deformation gradient must have positive determinant");
  if (m.incompressible) {
    if (std::abs(J - 1.0) > 1e-8)
      throw Error("incompressible model evaluated away from det F = 1");
    if (!s.p.has_value()) throw Error("incompressible model requires a pressure value");
  }
}

} // namespace

FreeEnergyModel strip_analytic(const FreeEnergyModel& m) {
  FreeEnergyModel out = m;
  out.first = nullptr;
  out.second = nullptr;
  return out;
}

EnergyFirstDerivs energy_first_derivs(const FreeEnergyModel& m, const MaterialState& s) {
  check_state(m, s);
  return m.first ? m.first(s) : fd_first_derivs(m, s);
}

MaterialResponse evaluate_response(const FreeEnergyModel& m, const MaterialState& s) {
  check_state(m, s);
  const EnergyFirstDerivs d = m.first ? m.first(s) : fd_first_derivs(m, s);
  MaterialResponse r;
  r.T = d.dF;
  if (m.incompressible) {
    const double p = *s.p;
    r.T -= p * inverse(s.F);
    r.p = p;
  }
  const double J = det(s.F);
  r.tau = (1.0 / J) * (s.F * r.T);
  r.P_l = -d.dE;
  r.M_el = -d.dB;
  r.dphi_dtheta = d.dtheta;
  r.phi = eval_phi(m, s);
  return r;
}

ModuliSet compute_moduli(const FreeEnergyModel& m, const MaterialState& s) {
  check_state(m, s);
  return m.second ? m.second(s) : fd_moduli(m, s);
}

UpdatedModuliSet push_forward_moduli(const ModuliSet& m, const Kinematics& k,
                                     const ModuliPushForwardOptions& opt) {
  const Ten2& F = k.F;
  const Ten2& Fi = k.F_inv;
  const double J = k.J;
  if (!(J > 0.0)) throw Error("push-forward requires positive volume ratio");
  UpdatedModuliSet u;
  u.F_used = F;
  u.J_used = J;

  for (int p = 0; p < 3; ++p)
    for (int i = 0; i < 3; ++i)
      for (int q = 0; q < 3; ++q)
        for (int j = 0; j < 3; ++j) {
          double acc = 0.0;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) acc += F(p, a) * F(q, b) * m.AA.at(a, i, b, j);
          u.A0.at(p, i, q, j) = acc / J;
        }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int kk = 0; kk < 3; ++kk) {
        double accB = 0.0;
        double accC = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            accB += F(i, a) * F(kk, b) * m.BB.at(a, j, b);
            accC += F(i, a) * Fi(b, kk) * m.CC.at(a, j, b);
          }
        u.B0.at(i, j, kk) = accB / J;
        u.C0.at(i, j, kk) = accC;
      }

  u.D0 = F * m.DD;
  u.G0 = (1.0 / J) * (F * m.GG * transpose(F));
  u.H0 = F * m.HH * Fi;
  u.I0 = F * m.II;
  u.M0 = J * (transpose(Fi) * m.MM * Fi);
  const double nw = opt.literal_N0 ? 1.0 / J : J;
  u.N0 = nw * transpose_apply(Fi, m.NN);
  return u;
}

UpdatedStateRates push_forward_rates(const StateRates& r, const Kinematics& k) {
  UpdatedStateRates u;
  u.L = r.F_dot * k.F_inv;
  u.E_el0_dot = transpose_apply(k.F_inv, r.E_el_dot);
  u.B_l0_dot = (1.0 / k.J) * (k.F * r.B_l_dot);
  u.theta_l0_dot = r.theta_l_dot / k.J;
  return u;
}

Ten2 stress_rate(const ModuliSet& m, const StateRates& r) {
  return contract_leg(m.AA, r.F_dot) + contract_single(m.BB, r.E_el_dot) +
         contract_single(m.CC, r.B_l_dot) + r.theta_l_dot * m.DD;
}

Vec3 polarization_rate(const ModuliSet& m, const StateRates& r) {
  return -(contract_pair(m.BB, r.F_dot) + m.GG * r.E_el_dot + m.HH * r.B_l_dot +
           r.theta_l_dot * m.II);
}

Vec3 magnetization_rate(const ModuliSet& m, const StateRates& r) {
  return -(contract_pair(m.CC, r.F_dot) + m.LL * r.E_el_dot + m.MM * r.B_l_dot +
           r.theta_l_dot * m.NN);
}

Ten2 stress_rate_updated(const UpdatedModuliSet& m, const UpdatedStateRates& r) {
  return contract_leg(m.A0, r.L) + contract_single(m.B0, r.E_el0_dot) +
         contract_single(m.C0, r.B_l0_dot) + r.theta_l0_dot * m.D0;
}

Vec3 polarization_rate_updated(const UpdatedModuliSet& m, const UpdatedStateRates& r) {
  return -(contract_pair(m.B0, r.L) + m.G0 * r.E_el0_dot + m.H0 * r.B_l0_dot +
           r.theta_l0_dot * m.I0);
}

Vec3 magnetization_rate_updated(const UpdatedModuliSet& m, const UpdatedStateRates& r) {
  return -(contract_pair(m.C0, r.L) + transpose_apply(m.H0, r.E_el0_dot) +
           m.M0 * r.B_l0_dot + r.theta_l0_dot * m.N0);
}

ConductionFluxes conduction(const Conductivities& c, const Vec3& grad_theta, const Vec3& E) {
  ConductionFluxes f;
  f.q = -(c.kappa * grad_theta);
  f.Jfree = c.xi * E;
  return f;
}

ConductionFluxesLagrangian conduction_lagrangian(const Conductivities& c, const Kinematics& k,
                                                 const Vec3& grad_theta_ref, const Vec3& E_l) {
  ConductionFluxesLagrangian f;
  const Ten2& Fi = k.F_inv;
  f.q_l = -k.J * (Fi * (c.kappa * transpose_apply(Fi, grad_theta_ref)));
  f.J_l = k.J * (Fi * (c.xi * transpose_apply(Fi, E_l)));
  return f;
}

// ---------------------------------------------------------------------------
// Built-in models.
// ---------------------------------------------------------------------------

namespace {

// Shared closed forms for the coupled model; the three cross couplings are
// zero for the basic variant.
FreeEnergyModel make_coupled(const CoupledCoefficients& c, bool with_cross, std::string name) {
  FreeEnergyModel m;
  m.name = std::move(name);
  m.rho_r = c.rho_r;
  const double hc = with_cross ? c.h_c : 0.0;
  const double et = with_cross ? c.e_theta : 0.0;
  const double bt = with_cross ? c.b_theta : 0.0;

  m.phi = [c, hc, et, bt](const MaterialState& s) {
    const double J = det(s.F);
    if (!(J > 0.0)) throw Error("deformation gradient must have positive determinant");
    const Ten2 cc = transpose(s.F) * s.F;
    const double trc = trace(cc);
    const double lnJ = std::log(J);
    const Vec3 z = s.F * s.B_l;                 // F B_l
    const Vec3 w = transpose_apply(inverse(s.F), s.E_el); // F^-T E_el
    const double dth = s.theta_l - c.theta0;
    double phi = 0.5 * c.mu * (trc - 3.0) - c.mu * lnJ + 0.5 * c.lambda * lnJ * lnJ;
    phi += 0.5 * c.alpha * dot(s.B_l, s.B_l) + 0.5 * c.beta * dot(z, z);
    phi -= 0.5 * c.gamma * dot(s.E_el, s.E_el) + 0.5 * c.delta * dot(w, w);
    phi += 0.5 * c.c_theta * dth * dth + c.m_c * dth * (trc - 3.0);
    phi += hc * dot(s.E_el, s.B_l);
    phi += 0.5 * et * dth * dot(s.E_el, s.E_el);
    phi += 0.5 * bt * dth * dot(s.B_l, s.B_l);
    return phi;
  };

  m.first = [c, hc, et, bt](const MaterialState& s) {
    const double J = det(s.F);
    const Ten2 G = inverse(s.F); // F^-1, G(a,i)
    const double lnJ = std::log(J);
    const double dth = s.theta_l - c.theta0;
    const double sig = c.mu + 2.0 * c.m_c * dth;
    const double tauJ = c.lambda * lnJ - c.mu;
    const Vec3 z = s.F * s.B_l;
    const Vec3 w = transpose_apply(G, s.E_el);  // F^-T E_el
    const Vec3 y = G * w;                        // c^-1 E_el
    const Ten2 ccinv = G * transpose(G);
    const Ten2 cc = transpose(s.F) * s.F;

    EnergyFirstDerivs d;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        d.dF(a, i) = sig * s.F(i, a) + tauJ * G(a, i) + c.beta * z[i] * s.B_l[a] +
                     c.delta * w[i] * y[a];
    d.dE = -c.gamma * s.E_el - c.delta * (ccinv * s.E_el) + hc * s.B_l + et * dth * s.E_el;
    d.dB = c.alpha * s.B_l + c.beta * (cc * s.B_l) + hc * s.E_el + bt * dth * s.B_l;
    d.dtheta = c.c_theta * dth + c.m_c * (trace(cc) - 3.0) +
               0.5 * et * dot(s.E_el, s.E_el) + 0.5 * bt * dot(s.B_l, s.B_l);
    return d;
  };

  m.second = [c, hc, et, bt](const MaterialState& s) {
    const double J = det(s.F);
    const Ten2 G = inverse(s.F);
    const double lnJ = std::log(J);
    const double dth = s.theta_l - c.theta0;
    const double sig = c.mu + 2.0 * c.m_c * dth;
    const double tauJ = c.lambda * lnJ - c.mu;
    const Vec3 z = s.F * s.B_l;
    const Vec3 w = transpose_apply(G, s.E_el);
    const Vec3 y = G * w;
    const Ten2 ccinv = G * transpose(G);
    const Ten2 cc = transpose(s.F) * s.F;

    ModuliSet mod;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b)
          for (int j = 0; j < 3; ++j) {
            double v = c.lambda * G(a, i) * G(b, j) - tauJ * G(a, j) * G(b, i);
            if (i == j) v += sig * (a == b ? 1.0 : 0.0) + c.beta * s.B_l[a] * s.B_l[b];
            v -= c.delta *
                 (w[j] * y[a] * G(b, i) + w[i] * y[b] * G(a, j) + w[i] * w[j] * ccinv(a, b));
            mod.AA.at(a, i, b, j) = v;
          }
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b) {
          mod.BB.at(a, i, b) = c.delta * (G(b, i) * y[a] + w[i] * ccinv(a, b));
          mod.CC.at(a, i, b) = c.beta * (z[i] * (a == b ? 1.0 : 0.0) + s.F(i, b) * s.B_l[a]);
        }
    mod.DD = 2.0 * c.m_c * transpose(s.F);
    mod.GG = -c.gamma * Ten2::identity() - c.delta * ccinv + et * dth * Ten2::identity();
    mod.HH = hc * Ten2::identity();
    mod.II = et * s.E_el;
    mod.MM = c.alpha * Ten2::identity() + c.beta * cc + bt * dth * Ten2::identity();
    mod.NN = bt * s.B_l;
    mod.FF = transpose3(mod.BB);
    mod.KK = transpose3(mod.CC);
    mod.LL = transpose(mod.HH);
    return mod;
  };

  return m;
}

} // namespace

FreeEnergyModel make_demo_model(const CoupledCoefficients& c) {
  return make_coupled(c, false, "demo");
}

FreeEnergyModel make_demo_full_model(const CoupledCoefficients& c) {
  return make_coupled(c, true, "demo_full");
}

FreeEnergyModel make_neo_hookean(double mu, double rho_r, bool incompressible) {
  FreeEnergyModel m;
  m.name = incompressible ? "neo_hookean_incompressible" : "neo_hookean";
  m.incompressible = incompressible;
  m.rho_r = rho_r;
  m.phi = [mu](const MaterialState& s) {
    const Ten2 cc = transpose(s.F) * s.F;
    return 0.5 * mu * (trace(cc) - 3.0);
  };
  m.first = [mu](const MaterialState& s) {
    EnergyFirstDerivs d;
    d.dF = mu * transpose(s.F);
    return d;
  };
  m.second = [mu](const MaterialState&) {
    ModuliSet mod;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) mod.AA.at(a, i, a, i) = mu;
    return mod;
  };
  return m;
}

} // namespace emte
