// SPDX-License-Identifier: MIT
//
// Incremental (linearized) balance operators on a finitely deformed,
// electromagnetically and thermally loaded bias state.
//
// Every evaluator takes the bias Scene plus an IncrementScene of superposed
// fields and returns pointwise residuals of the linearized governing
// equations: Maxwell's equations, linear and angular momentum with the
// electromagnetic body force and couple increments, the energy balance with
// the electromagnetic power increment, the constitutive rate laws, Fourier /
// Ohm conduction, the assembled single-field system, the rigid-region
// (coil / vacuum) systems, and the interface jump conditions. Residuals are
// reported both on the reference configuration (Lagrangian operators acting
// on pulled-back increments) and on the current configuration (operators
// acting on the pushed-forward increments); for exact linearizations the two
// agree up to the volume map J.
//
// By default every operator is the exact directional derivative of the
// corresponding finite-state operator in balance.hpp. A handful of published
// variants group the convective coefficients differently (or keep a raw
// matrix inverse of the displacement gradient where the exact linearization
// has a negated transpose); IncrementalConfig switches reproduce those
// groupings verbatim for comparison. With all switches off, linearization
// consistency against central differences of the finite operators holds to
// second order in the increment amplitude.
#pragma once

#include "emte/balance.hpp"
#include "emte/increments.hpp"

#include <string>
#include <vector>

namespace emte {

// Selects alternative published groupings of individual incremental terms.
// All defaults (false) give the exact linearization of the finite operators.
struct IncrementalConfig {
  // Ampere residuals: flips the sign of the (div u) coefficient in the
  // magnetic curl bracket (and drops the convective stretch of the electric
  // displacement rate) as in the alternative grouping.
  bool literal_increment_ampere = false;
  // Interface conditions: keeps true matrix inverses of the incremental
  // displacement gradient L at the sites where the exact linearization has
  // -L or -L^T. Evaluation throws if L is singular there.
  bool literal_L_inverse = false;
  // Fourier/Ohm increments: uses the grouping with a +2 L kappa grad(theta)
  // convective term instead of the exact -(L kappa + kappa L^T) grad(theta).
  bool literal_conduction_increment = false;
  // Electromagnetic body-force increments: flips the sign of three (div u)
  // coefficients (current group and momentum-rate group) to the alternative
  // published values (+2 instead of the exact -2).
  bool literal_force_increment = false;
};

// A named additive contribution to a vector-valued residual.
struct LabeledTerm {
  std::string id;
  Vec3 value{};
};

// Sum of named vector terms; scale() is the largest term magnitude and is
// used as the relative-error denominator for the total.
struct LabeledTermSum {
  std::vector<LabeledTerm> terms;
  Vec3 total() const;
  double scale() const;
  const Vec3& term(const std::string& id) const; // throws if absent
};

// Scalar analog of LabeledTermSum.
struct LabeledScalar {
  std::string id;
  double value = 0.0;
};

struct LabeledScalarSum {
  std::vector<LabeledScalar> terms;
  double total() const;
  double scale() const;
  double term(const std::string& id) const; // throws if absent
};

// Derived incremental fields that close the free-space and conduction parts
// of the updated system.
struct AuxiliaryIncrementals {
  // Increment of the spatial electric field at fixed label:
  //   E_hat = E_l0_dot + (div u) E - (L + L^T) E.
  Vec3 E_hat{};
  // Increment of the pushed-forward effective electric field:
  //   E_el0_dot = F^-T (E_l_dot + V_dot x B_l + V x B_l_dot).
  Vec3 E_el0_dot{};
  // Free-current increment closed by Ohm's law with the bias conductivity:
  //   J_E0_dot = xi E_hat - rho_E0_dot v - rho_e (u_t - L v).
  Vec3 J_E0_dot_ohm{};
};

AuxiliaryIncrementals auxiliary_fields(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                       double t, const FdConfig& fd = {});

// ---------------------------------------------------------------------------
// Incremental Maxwell system
// ---------------------------------------------------------------------------

// Labeled contributions to the incremental Ampere residual. Term ids:
//   magnetic_curl, convective_displacement, displacement_rate,
//   polarization_rate, magnetization_curl, free_current.
// The residual is the plain sum of the six terms.
LabeledTermSum incremental_ampere_terms_lagrangian(const Scene& bias, const IncrementScene& inc,
                                                   const Vec3& X, double t,
                                                   const IncrementalConfig& cfg = {},
                                                   const FdConfig& fd = {});
LabeledTermSum incremental_ampere_terms_updated(const Scene& bias, const IncrementScene& inc,
                                                const Vec3& X, double t,
                                                const IncrementalConfig& cfg = {},
                                                const FdConfig& fd = {});

// Residuals of the four linearized Maxwell equations on the reference
// configuration (entries gauss_magnetic, faraday, gauss_electric, ampere).
ResidualReport incremental_maxwell_lagrangian(const Scene& bias, const IncrementScene& inc,
                                              const Vec3& X, double t,
                                              const IncrementalConfig& cfg = {},
                                              const FdConfig& fd = {});

// Same system written on the current configuration in the pushed-forward
// increments (same entry ids).
ResidualReport incremental_maxwell_eulerian(const Scene& bias, const IncrementScene& inc,
                                            const Vec3& X, double t,
                                            const IncrementalConfig& cfg = {},
                                            const FdConfig& fd = {});

// ---------------------------------------------------------------------------
// Incremental electromagnetic body force, couple, and power
// ---------------------------------------------------------------------------

// Increment of the electromagnetic body force, grouped by physical origin.
// Group ids: charge, electric_gradient, current, magnetic_gradient,
// momentum_rate, momentum_flux. f_E_dot acts per unit current volume of the
// bias state evaluated from pulled-back quantities; f_E0_dot is the same
// force built from pushed-forward increments. Exact linearizations agree.
struct IncrementalBodyForce {
  LabeledTermSum f_E_dot;
  LabeledTermSum f_E0_dot;
};

IncrementalBodyForce incremental_body_force(const Scene& bias, const IncrementScene& inc,
                                            const Vec3& X, double t,
                                            const IncrementalConfig& cfg = {},
                                            const FdConfig& fd = {});

// Increment of the electromagnetic body couple in both representations.
struct IncrementalCouple {
  Vec3 L_E_dot{};
  Vec3 L_E0_dot{};
};

IncrementalCouple incremental_couple(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                     double t, const FdConfig& fd = {});

// Increment of the electromagnetic power supply. Term ids: joule,
// polarization_work, magnetization_work. w_E_dot is referential (per unit
// reference volume), w_E0_dot per unit current volume; w_E_dot = J w_E0_dot
// holds term by term.
struct IncrementalPower {
  LabeledScalarSum w_E_dot;
  LabeledScalarSum w_E0_dot;
};

IncrementalPower incremental_power(const Scene& bias, const IncrementScene& inc, const Vec3& X,
                                   double t, const FdConfig& fd = {});

// ---------------------------------------------------------------------------
// Incremental momentum, energy, constitutive, and conduction laws
// ---------------------------------------------------------------------------

// Residuals of the linearized linear and angular momentum balances in both
// configurations (entries linear_eulerian, angular_eulerian,
// linear_lagrangian, angular_lagrangian). Requires inc.T_dot (and the
// electromagnetic increments entering the force groups) to be populated,
// e.g. via attach_incremental_constitutive.
ResidualReport incremental_momentum_residuals(const Scene& bias, const IncrementScene& inc,
                                              const Vec3& X, double t,
                                              const IncrementalConfig& cfg = {},
                                              const FdConfig& fd = {});

// Residual of the linearized energy balance in both configurations (entries
// heat_eulerian, heat_lagrangian), written as (supply + stress power) minus
// (flux divergence + storage rate).
ResidualReport incremental_heat_residual(const Scene& bias, const IncrementScene& inc,
                                         const Vec3& X, double t,
                                         const IncrementalConfig& cfg = {},
                                         const FdConfig& fd = {});

// Linear constitutive update: contracts the referential incremental moduli
// with the argument rates.
//   T_dot    =  A F_dot + B E_el_dot + C B_l_dot + D theta_l_dot
//   P_l_dot  = -(B^T F_dot + G E_el_dot + H B_l_dot + I theta_l_dot)
//   M_el_dot = -(C^T F_dot + H^T E_el_dot + M B_l_dot + N theta_l_dot)
struct IncrementalResponse {
  Ten2 T_dot{};
  Vec3 P_l_dot{};
  Vec3 M_el_dot{};
};

IncrementalResponse incremental_constitutive(const ModuliSet& m, const StateRates& r);

// Same update with the pushed-forward moduli and rates.
struct IncrementalResponseUpdated {
  Ten2 T0_dot{};
  Vec3 P_l0_dot{};
  Vec3 M_el0_dot{};
};

IncrementalResponseUpdated incremental_constitutive_updated(const UpdatedModuliSet& m,
                                                            const UpdatedStateRates& r);

// Increments of the Fourier heat flux and the Ohmic total current, written in
// the current configuration:
//   q_l0_dot = -[(div u) kappa - L kappa - kappa L^T] grad(theta)
//              - kappa grad(theta_l0_dot - (div u) theta)
//   J_l0_dot =  [(div u) xi - L xi - xi L^T] E + xi E_l0_dot
// (the literal_conduction_increment grouping replaces the bias-gradient
// brackets by -(div u) kappa + 2 L kappa and xi {(div u) I - L - L^T}).
struct IncrementalConduction {
  Vec3 q_l0_dot{};
  Vec3 J_l0_dot{};
};

IncrementalConduction incremental_conduction(const Scene& bias, const IncrementScene& inc,
                                             const Vec3& X, double t,
                                             const IncrementalConfig& cfg = {},
                                             const FdConfig& fd = {});

// Fills inc.T_dot, inc.P_l_dot, inc.M_el_dot, and inc.M_l_dot with the
// linear constitutive update evaluated from the bias scene's material model
// and the increment fields already stored in inc (grad_u, E_l_dot, B_l_dot,
// theta_l_dot). Values are exact; spatial and time derivatives of the
// installed fields fall back to finite differences. Throws if the bias scene
// has no material model.
void attach_incremental_constitutive(IncrementScene& inc, const Scene& bias,
                                     const FdConfig& fd = {});

// Fills inc.q_l_dot with the pull-back of the Fourier increment q_l0_dot.
// When close_free_current is set, also overwrites inc.J_E_dot with the free
// part of the Ohmic current increment,
//   J_E_dot = J F^-1 J_l0_dot - rho_E_dot V - rho_E V_dot.
void attach_incremental_conduction(IncrementScene& inc, const Scene& bias,
                                   const IncrementalConfig& cfg = {},
                                   bool close_free_current = false, const FdConfig& fd = {});

// Residuals of the assembled incremental field system on the current
// configuration: the constitutive and Fourier closures are attached to a copy
// of inc (overwriting T_dot, P_l_dot, M_el_dot, M_l_dot, q_l_dot; the
// free-current increment is used as supplied), then the linearized Maxwell,
// momentum, and energy operators are evaluated. Entry ids: gauss_magnetic,
// faraday, gauss_electric, ampere, linear_momentum, angular_momentum, heat.
ResidualReport assembled_governing_residuals(const Scene& bias, const IncrementScene& inc,
                                             const Vec3& X, double t,
                                             const IncrementalConfig& cfg = {},
                                             const FdConfig& fd = {});

// ---------------------------------------------------------------------------
// Rigid regions and interfaces
// ---------------------------------------------------------------------------

// Residuals of the incremental Maxwell system in a rigid coil or in vacuum.
// The RegionScene fields are interpreted as the increment fields of that
// region. Entries mirror region_maxwell_residual: gauss_magnetic,
// gauss_electric (with the relative permittivity factor in the coil),
// faraday, ampere.
ResidualReport region_incremental_residual(const RegionScene& inc, Region region, const Vec3& x,
                                           double t, const FdConfig& fd = {});

// Linearized jump conditions at a material-vacuum interface, written on the
// reference configuration (entries tangential_e, normal_b, normal_d,
// tangential_h). bias/vac/surf describe the bias interface state exactly as
// in boundary_residuals_finite; ist carries the increment state at the wall
// (from sample_increments), vinc the vacuum-side increments, sinc the surface
// source increments (referential measures).
ResidualReport incremental_boundary_residuals_lagrangian(
    const PointState& bias, const VacuumState& vac, const SurfaceData& surf,
    const IncrementalState& ist, const VacuumIncrements& vinc, const SurfaceIncrements& sinc,
    const Constants& c, const IncrementalConfig& cfg = {});

// The same jump conditions written on the current configuration in the
// pushed-forward increments. Surface-source increments are converted with
// the bias area map (K_l0_dot = F K_l_dot dA/da, sigma_E0_dot =
// sigma_E_dot dA/da, v_s = F V_s), and the default right side of
// tangential_h is K_l0_dot - sigma_E0_dot v_s - sigma_e F V_s_dot; the
// literal_L_inverse grouping replaces it by K_l0_dot + L^-1 K + sigma_e L v_s.
ResidualReport incremental_boundary_residuals_eulerian(
    const PointState& bias, const VacuumState& vac, const SurfaceData& surf,
    const IncrementalState& ist, const VacuumIncrements& vinc, const SurfaceIncrements& sinc,
    const Constants& c, const IncrementalConfig& cfg = {});

// Linearized jump conditions at the surface of a rigid coil (entries
// tangential_e, normal_d, tangential_h, normal_b). E_dot and B_dot are the
// coil-side increments at the wall; the surface current increment does not
// enter (the coil drive is part of the bias).
ResidualReport coil_incremental_boundary_residuals(const Vec3& E_dot, const Vec3& B_dot,
                                                   const VacuumIncrements& vinc,
                                                   const SurfaceData& surf, double eps_r,
                                                   double mu_r);

} // namespace emte
