// SPDX-License-Identifier: MIT
#pragma once

// Free-energy material models: response (stress, polarization, magnetization,
// temperature conjugate), tangent moduli (all independent second partials of
// the energy), push-forward of the moduli to the current configuration, the
// constitutive rate products in both configurations, and the Fourier/Ohm
// conduction laws.

#include <functional>
#include <optional>
#include <string>

#include "emte/motion.hpp"
#include "emte/tensor.hpp"

namespace emte {

// Arguments of the free energy per unit reference volume.
struct MaterialState {
  Ten2 F = Ten2::identity(); // deformation gradient, F(i,a): spatial row, referential column
  Vec3 E_el{};               // referential effective electric field (V/m scaled)
  Vec3 B_l{};                // referential magnetic induction (T scaled)
  double theta_l = 0.0;      // referential (volume-weighted) temperature
  std::optional<double> p{}; // pressure multiplier for incompressible models
};

// First derivatives of the energy.  dF is stored referential-first,
// dF(a,i) = d(phi)/dF(i,a), matching the nominal-stress storage so that the
// referential divergence acts on the leading slot.
struct EnergyFirstDerivs {
  Ten2 dF;
  Vec3 dE;
  Vec3 dB;
  double dtheta = 0.0;
};

// All independent second partials of the energy.  Blocks FF, KK, LL are the
// index-block transposes of BB, CC, HH and are stored explicitly for direct
// use in the rate products.
struct ModuliSet {
  Ten4 AA;                          // AA(a,i,b,j) = d2/dF(i,a) dF(j,b); major-symmetric
  Ten3 BB{Ten3Split::PairFirst};    // BB(a,i|b)   = d2/dF(i,a) dE_b
  Ten3 CC{Ten3Split::PairFirst};    // CC(a,i|b)   = d2/dF(i,a) dB_b
  Ten2 DD;                          // DD(a,i)     = d2/dF(i,a) dtheta
  Ten3 FF{Ten3Split::SingleFirst};  // FF(b|a,i)   = BB(a,i|b)
  Ten2 GG;                          // GG(a,b)     = d2/dE_a dE_b; symmetric
  Ten2 HH;                          // HH(a,b)     = d2/dE_a dB_b
  Vec3 II{};                        // II(a)       = d2/dE_a dtheta
  Ten3 KK{Ten3Split::SingleFirst};  // KK(b|a,i)   = CC(a,i|b)
  Ten2 LL;                          // LL          = HH transpose
  Ten2 MM;                          // MM(a,b)     = d2/dB_a dB_b; symmetric
  Vec3 NN{};                        // NN(a)       = d2/dB_a dtheta
};

// Step controls for the finite-difference fallback used when a model carries
// no analytic derivative hooks.  Steps are relative to a per-variable scale
// (unity for F; the field magnitude, floored at one, for E, B, theta).
// Second derivatives need a larger step than first derivatives to keep
// round-off noise below truncation error.  With `richardson` the base steps
// are widened and a two-level extrapolation applied, trading evaluations
// for roughly three more digits.
struct DerivativeSteps {
  double h_first = 1e-6;
  double h_second = 1e-4;
  bool richardson = false;
};

// A material model: the scalar energy density is required; analytic
// first/second derivative hooks are optional and bypass finite differences
// when present.  Evaluators must be pure (no hidden state) so that all
// operations are reentrant.
struct FreeEnergyModel {
  std::string name;
  bool incompressible = false;
  double rho_r = 1000.0; // referential mass density (kg/m^3)
  std::function<double(const MaterialState&)> phi;
  std::function<EnergyFirstDerivs(const MaterialState&)> first;
  std::function<ModuliSet(const MaterialState&)> second;
  DerivativeSteps steps{};
};

// Copy of the model with the analytic hooks removed, forcing the
// finite-difference path (used to cross-check closed forms).
FreeEnergyModel strip_analytic(const FreeEnergyModel& m);

struct MaterialResponse {
  Ten2 T;    // nominal stress, referential-first storage T(a,i)
  Ten2 tau;  // current-configuration stress, tau = J^-1 F T
  Vec3 P_l;  // referential polarization, -d(phi)/dE_el
  Vec3 M_el; // referential effective magnetization, -d(phi)/dB_l
  double dphi_dtheta = 0.0;
  double phi = 0.0;
  std::optional<double> p{};
};

// First derivatives with hooks when available, finite differences otherwise.
EnergyFirstDerivs energy_first_derivs(const FreeEnergyModel& m, const MaterialState& s);

// Stress / polarization / magnetization at a state.  Incompressible models
// require |det F - 1| <= 1e-8 and a supplied pressure; the stress then picks
// up the -p F^-1 constraint term.  Throws Error on det F <= 0, a missing
// pressure, or a non-finite energy evaluation.
MaterialResponse evaluate_response(const FreeEnergyModel& m, const MaterialState& s);

// All moduli blocks at a state (analytic hooks or finite differences).
ModuliSet compute_moduli(const FreeEnergyModel& m, const MaterialState& s);

// Moduli transported to the current configuration.  Records the deformation
// it was taken at so downstream products can check consistency.
struct UpdatedModuliSet {
  Ten4 A0;                        // A0(p,i,q,j) = J^-1 F(p,a) F(q,b) AA(a,i,b,j)
  Ten3 B0{Ten3Split::PairFirst};  // B0(i,j|k)   = J^-1 F(i,a) F(k,b) BB(a,j|b)
  Ten3 C0{Ten3Split::PairFirst};  // C0(i,j|k)   = F(i,a) Finv(b,k) CC(a,j|b)
  Ten2 D0;                        // D0          = F DD
  Ten2 G0;                        // G0          = J^-1 F GG F^T
  Ten2 H0;                        // H0          = F HH F^-1
  Vec3 I0{};                      // I0          = F II
  Ten2 M0;                        // M0          = J F^-T MM F^-1
  Vec3 N0{};                      // N0          = J F^-T NN (see options)
  Ten2 F_used = Ten2::identity();
  double J_used = 1.0;
};

struct ModuliPushForwardOptions {
  // Weight the thermal-magnetic coupling vector N0 by 1/J instead of J.
  // The J weight makes the updated rate law the exact push-forward of the
  // referential rate law; the 1/J weight is kept as a selectable variant
  // and breaks that equivalence by a factor J^2 on the N term.
  bool literal_N0 = false;
};

UpdatedModuliSet push_forward_moduli(const ModuliSet& m, const Kinematics& k,
                                     const ModuliPushForwardOptions& opt = {});

// Rates of the independent variables at fixed referential position.
struct StateRates {
  Ten2 F_dot;   // spatial-first, like F
  Vec3 E_el_dot{};
  Vec3 B_l_dot{};
  double theta_l_dot = 0.0;
};

// Rates transported to the current configuration: L = F_dot F^-1,
// E0_dot = F^-T E_dot, B0_dot = J^-1 F B_dot, theta0_dot = J^-1 theta_dot.
struct UpdatedStateRates {
  Ten2 L;
  Vec3 E_el0_dot{};
  Vec3 B_l0_dot{};
  double theta_l0_dot = 0.0;
};

UpdatedStateRates push_forward_rates(const StateRates& r, const Kinematics& k);

// Constitutive rate products (linearized response), referential form:
//   T_dot(a,i)  = AA(a,i,b,j) F_dot(j,b) + BB(a,i|b) E_dot_b + CC(a,i|b) B_dot_b + DD(a,i) theta_dot
//   P_l_dot     = -(BB(a,i|.) F_dot(i,a) + GG E_dot + HH B_dot + II theta_dot)
//   M_el_dot    = -(CC(a,i|.) F_dot(i,a) + HH^T E_dot + MM B_dot + NN theta_dot)
Ten2 stress_rate(const ModuliSet& m, const StateRates& r);
Vec3 polarization_rate(const ModuliSet& m, const StateRates& r);
Vec3 magnetization_rate(const ModuliSet& m, const StateRates& r);

// Same products assembled from the updated moduli and updated rates.  With
// the default push-forward these equal J^-1 F T_dot, J^-1 F P_l_dot and
// F^-T M_el_dot exactly.
Ten2 stress_rate_updated(const UpdatedModuliSet& m, const UpdatedStateRates& r);
Vec3 polarization_rate_updated(const UpdatedModuliSet& m, const UpdatedStateRates& r);
Vec3 magnetization_rate_updated(const UpdatedModuliSet& m, const UpdatedStateRates& r);

// Heat and charge conduction coefficients (symmetric positive-definite).
struct Conductivities {
  Ten2 kappa = Ten2::identity(); // thermal conductivity, W/(m K)
  Ten2 xi = Ten2::identity();    // electrical conductivity, S/m
};

struct ConductionFluxes {
  Vec3 q{};     // heat flux
  Vec3 Jfree{}; // conduction current
};

// Current-configuration laws: q = -kappa grad(theta), J = xi E.
ConductionFluxes conduction(const Conductivities& c, const Vec3& grad_theta, const Vec3& E);

struct ConductionFluxesLagrangian {
  Vec3 q_l{};
  Vec3 J_l{};
};

// Referential laws: q_l = -J F^-1 kappa F^-T Grad(J^-1 theta_l),
// J_l = J F^-1 xi F^-T E_l.  `grad_theta_ref` is the referential gradient of
// the volume-normalized temperature J^-1 theta_l.
ConductionFluxesLagrangian conduction_lagrangian(const Conductivities& c, const Kinematics& k,
                                                 const Vec3& grad_theta_ref, const Vec3& E_l);

// Coefficients of the built-in coupled model.  The energy is
//   mu/2 (tr c - 3) - mu ln J + lambda/2 (ln J)^2
//   + alpha/2 |B_l|^2 + beta/2 (B_l . c B_l)
//   - gamma/2 |E_el|^2 - delta/2 (E_el . c^-1 E_el)
//   + c_theta/2 (theta_l - theta0)^2 + m_c (theta_l - theta0)(tr c - 3)
// plus, for the extended variant, the cross couplings
//   h_c (E_el . B_l) + e_theta/2 (theta_l - theta0)|E_el|^2
//   + b_theta/2 (theta_l - theta0)|B_l|^2.
struct CoupledCoefficients {
  double mu = 1.0;
  double lambda = 1.5;
  double alpha = 0.8;
  double beta = 0.6;
  double gamma = 0.7;
  double delta = 0.5;
  double c_theta = 1.2;
  double m_c = 0.3;
  double theta0 = 1.0;
  double h_c = 0.0;
  double e_theta = 0.0;
  double b_theta = 0.0;
  double rho_r = 1000.0;
};

// Coupled magneto-electro-thermo-elastic model with closed-form first and
// second derivatives; every moduli block except HH, II, LL, NN is nonzero at
// generic states.
FreeEnergyModel make_demo_model(const CoupledCoefficients& c);

// Extended variant with the E-B and theta-E / theta-B cross couplings turned
// on, so HH, II, LL, NN are nonzero too.
FreeEnergyModel make_demo_full_model(const CoupledCoefficients& c);

// phi = mu/2 (tr c - 3), optionally incompressible (pressure then supplied
// through the state).
FreeEnergyModel make_neo_hookean(double mu, double rho_r, bool incompressible);

} // namespace emte
